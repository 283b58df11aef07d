#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pde.hpp"
#include "sparse.hpp"
#include "taylor.hpp"

namespace kipp {

// Differentiation multi-index (a, b) = (order of d/dx, order of d/dy).
using MultiIndex = std::pair<int, int>;

// All multi-indices of total order <= n, grade-ascending and within a grade
// by descending first component: (0,0), (1,0), (0,1), (2,0), (1,1), ...
std::vector<MultiIndex> multi_indices_upto(int n);
// The C(n+2, 2) count of the above.
size_t multi_index_count(int n);
// Position of (a, b) in the enumeration above.
size_t multi_index_position(int a, int b);

// Jet-space dimension: num_unknowns * C(n+3, 2) jets of order <= n+1.
size_t jet_dimension(size_t num_unknowns, int n);

// One jet variable: derivative (a, b) of one unknown.
struct JetIndex {
    int unknown;
    int a, b;
};

// The n-th prolongation: every base equation differentiated by every
// multi-index of order <= n. Rows are only materialized symbolically on
// demand; assembly evaluates their coefficients directly at a point.
class ProlongedSystem {
public:
    ProlongedSystem(const LinearPDESystem& base, int level);

    const LinearPDESystem& base() const { return base_; }
    int level() const { return level_; }

    size_t equation_count() const { return multi_index_count(level_) * base_.equations.size(); }
    size_t jet_count() const { return jet_dimension(base_.unknowns.size(), level_); }

    // Row index of base equation `eq` differentiated by the multi-index at
    // position `midx_pos`; rows are multi-index-major.
    size_t row_of(size_t midx_pos, size_t eq) const { return midx_pos * base_.equations.size() + eq; }

    // Fully symbolic prolonged equation: jet variable -> coefficient.
    // Exercised by tests and debug dumps; assembly does not materialize it.
    std::map<std::pair<int, MultiIndex>, RationalFunction> symbolic_row(size_t eq, int c, int d) const;

private:
    LinearPDESystem base_;
    int level_;
};

// Sparse exact matrix of a prolonged system evaluated at a rational point.
// Columns are jets ordered by total order, then multi-index position, then
// unknown; rows follow ProlongedSystem::row_of. Each row is scaled integral.
struct AssembledMatrix {
    SparseRationalMatrix mat;
    int level = 0;
    size_t num_unknowns = 0;
    Rational x0, y0;

    size_t column_of(int unknown, int a, int b) const {
        return multi_index_position(a, b) * num_unknowns + static_cast<size_t>(unknown);
    }
    JetIndex jet_of_column(size_t col) const;
    std::vector<JetIndex> column_key() const;
};

// Evaluates every prolonged equation at (x0, y0). Derivative values come from
// exact Taylor expansion of each distinct coefficient function, cached per
// function. Throws DenominatorVanishes when the point hits a coefficient pole.
AssembledMatrix assemble(const ProlongedSystem& ps, const Rational& x0, const Rational& y0);

// Top-order part of the prolongation at order exactly n: rows are the
// differentiated equations' order-(n+1) coefficients, columns the jets of
// order exactly n+1. Zero rows are dropped and proportional duplicate rows
// deduplicated, so the row count reflects independent directions as written.
struct SymbolMatrix {
    SparseRationalMatrix mat;
    int level = 0;
    size_t num_unknowns = 0;
    size_t raw_rows = 0;  // before dropping zero/duplicate rows
};

SymbolMatrix symbol_assemble(const LinearPDESystem& s, int n, const Rational& x0, const Rational& y0);

}  // namespace kipp
