#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rational.hpp"

namespace kipp {

// Sparse matrix over the rationals; rows hold (col, value) pairs sorted by
// column, no explicit zeros.
class SparseRationalMatrix {
public:
    using Entry = std::pair<uint32_t, Rational>;

    SparseRationalMatrix() = default;
    SparseRationalMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t nnz() const;

    const std::vector<Entry>& row(size_t r) const { return data_[r]; }
    std::vector<Entry>& row(size_t r) { return data_[r]; }

    // Accumulates into (r, c); entries may be added in any order per row.
    void add(size_t r, size_t c, const Rational& v);
    // Sorts each row by column and drops zeros; call once after building.
    void finalize();

    Rational at(size_t r, size_t c) const;

    // Scales every row by the least common multiple of its entry denominators,
    // making all entries integral. Rank-neutral.
    void clear_row_denominators();

    size_t max_entry_bits() const;

    bool operator==(const SparseRationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<Entry>> data_;
};

// Plain-text sparse triplet format: header "rows cols nnz", then one line
// "row col numerator/denominator" per entry, row-major, 0-based.
void write_triplets(const SparseRationalMatrix& m, std::ostream& os);
SparseRationalMatrix read_triplets(std::istream& is);

void save_triplets(const SparseRationalMatrix& m, const std::string& path);
SparseRationalMatrix load_triplets(const std::string& path);

}  // namespace kipp
