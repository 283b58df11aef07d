#include "sparse.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bigint.hpp"
#include "errors.hpp"

namespace kipp {

size_t SparseRationalMatrix::nnz() const {
    size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

void SparseRationalMatrix::add(size_t r, size_t c, const Rational& v) {
    if (r >= rows_ || c >= cols_) throw Error("sparse matrix index out of range");
    if (!v.is_zero()) data_[r].emplace_back(static_cast<uint32_t>(c), v);
}

void SparseRationalMatrix::finalize() {
    for (auto& row : data_) {
        std::sort(row.begin(), row.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        std::vector<Entry> merged;
        merged.reserve(row.size());
        for (auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(std::move(e));
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const Entry& e) { return e.second.is_zero(); }),
                     merged.end());
        row = std::move(merged);
    }
}

Rational SparseRationalMatrix::at(size_t r, size_t c) const {
    for (const auto& [col, v] : data_[r])
        if (col == c) return v;
    return Rational(0);
}

void SparseRationalMatrix::clear_row_denominators() {
    for (auto& row : data_) {
        BigInt l(1);
        for (const auto& [c, v] : row) l = BigInt::lcm(l, v.den());
        if (l.is_one()) continue;
        Rational scale{l};
        for (auto& [c, v] : row) v *= scale;
    }
}

size_t SparseRationalMatrix::max_entry_bits() const {
    size_t m = 0;
    for (const auto& row : data_)
        for (const auto& [c, v] : row) m = std::max(m, v.bit_length());
    return m;
}

void write_triplets(const SparseRationalMatrix& m, std::ostream& os) {
    os << m.rows() << " " << m.cols() << " " << m.nnz() << "\n";
    for (size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r))
            os << r << " " << c << " " << v.num().str() << "/" << v.den().str() << "\n";
}

SparseRationalMatrix read_triplets(std::istream& is) {
    size_t rows, cols, nnz;
    if (!(is >> rows >> cols >> nnz)) throw IoError("triplet header malformed");
    SparseRationalMatrix m(rows, cols);
    for (size_t i = 0; i < nnz; ++i) {
        size_t r, c;
        std::string value;
        if (!(is >> r >> c >> value)) throw IoError("triplet entry " + std::to_string(i) + " malformed");
        try {
            m.add(r, c, Rational(value));
        } catch (const std::invalid_argument& e) {
            throw IoError("triplet entry " + std::to_string(i) + ": " + e.what());
        }
    }
    m.finalize();
    return m;
}

void save_triplets(const SparseRationalMatrix& m, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write '" + path + "'");
    write_triplets(m, os);
    if (!os.good()) throw IoError("short write to '" + path + "'");
}

SparseRationalMatrix load_triplets(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read '" + path + "'");
    return read_triplets(is);
}

}  // namespace kipp
