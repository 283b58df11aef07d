#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kipp {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Expression or file syntax error; position is a 0-based byte offset.
struct ParseError : Error {
    ParseError(const std::string& msg, size_t position)
        : Error(msg + " (at offset " + std::to_string(position) + ")"), pos(position) {}
    size_t pos;
};

// A denominator vanished at an evaluation point; carries the offending polynomial.
struct DenominatorVanishes : Error {
    explicit DenominatorVanishes(const std::string& poly)
        : Error("denominator vanishes at the evaluation point: " + poly), polynomial(poly) {}
    std::string polynomial;
};

struct SingularPointError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct CacheError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace kipp
