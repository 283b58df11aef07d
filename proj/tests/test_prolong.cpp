#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "errors.hpp"
#include "expr.hpp"
#include "metric.hpp"
#include "pde.hpp"
#include "exactla.hpp"
#include "modular.hpp"
#include "prolong.hpp"

using namespace kipp;

namespace {

const std::vector<std::string> XY = {"x", "y"};

RationalFunction rf(const std::string& text) {
    return to_rational_function(parse_expression(text, XY));
}

// Single-unknown toy system over (x, y).
LinearPDESystem toy(const std::vector<std::vector<PDETerm>>& eq_terms) {
    LinearPDESystem s;
    s.degree = 1;
    s.parity = SystemParity::Even;
    s.base_coords = {"x", "y"};
    s.unknowns.push_back({MomExp{0, 0, 0, 0}, Parity::Even});
    for (const auto& terms : eq_terms) {
        PDEEquation eq;
        eq.tag = {0, 0, 0, 0};
        eq.terms = terms;
        s.equations.push_back(eq);
    }
    return s;
}

LinearPDESystem zv_even(int degree, long delta = 2) {
    MetricSpec m = zipoy_voorhees({delta});
    Hamiltonian h = hamiltonian(m, invert(m));
    return split_parity(poisson_bracket_system(h, degree)).second;
}

}  // namespace

TEST_CASE("multi-index enumeration") {
    auto v = multi_indices_upto(2);
    std::vector<MultiIndex> expect = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    CHECK(v == expect);
    for (size_t i = 0; i < v.size(); ++i)
        CHECK(multi_index_position(v[i].first, v[i].second) == i);
    CHECK(multi_index_count(6) == 28);
}

TEST_CASE("jet dimensions") {
    CHECK(jet_dimension(44, 6) == 1584);
    CHECK(jet_dimension(40, 4) == 840);
    CHECK(jet_dimension(1, 0) == 3);
}

TEST_CASE("gradient system assembles to the identity block") {
    // {dx f = 0, dy f = 0} at n = 0: 2x3 matrix [[0,1,0],[0,0,1]]
    LinearPDESystem s = toy({{{0, Deriv::Dx, rf("1")}}, {{0, Deriv::Dy, rf("1")}}});
    ProlongedSystem ps(s, 0);
    AssembledMatrix am = assemble(ps, Rational(1, 2), Rational(2));
    CHECK(am.mat.rows() == 2);
    CHECK(am.mat.cols() == 3);
    CHECK(am.mat.at(0, 0) == Rational(0));
    CHECK(am.mat.at(0, 1) == Rational(1));
    CHECK(am.mat.at(0, 2) == Rational(0));
    CHECK(am.mat.at(1, 0) == Rational(0));
    CHECK(am.mat.at(1, 1) == Rational(0));
    CHECK(am.mat.at(1, 2) == Rational(1));
}

TEST_CASE("one-equation toy system prolongs by the Leibniz rule") {
    // dx f = c(x,y) f  stored as  dx f - c f = 0, with c = x^2*y
    RationalFunction c = rf("x^2*y");
    LinearPDESystem s = toy({{{0, Deriv::Dx, rf("1")}, {0, Deriv::Value, -c}}});
    ProlongedSystem ps(s, 1);
    CHECK(ps.equation_count() == 3);

    // the d/dx-prolonged equation reads: dxx f - c dx f - (dx c) f = 0
    auto row = ps.symbolic_row(0, 1, 0);
    CHECK(row.size() == 3);
    CHECK(row.at({0, {2, 0}}) == rf("1"));
    CHECK(row.at({0, {1, 0}}) == -c);
    CHECK(row.at({0, {0, 0}}) == -c.derivative("x"));

    auto rowy = ps.symbolic_row(0, 0, 1);
    CHECK(rowy.at({0, {1, 1}}) == rf("1"));
    CHECK(rowy.at({0, {0, 1}}) == -c);
    CHECK(rowy.at({0, {0, 0}}) == -c.derivative("y"));
}

TEST_CASE("equation counts under prolongation") {
    LinearPDESystem even = zv_even(6);
    CHECK(ProlongedSystem(even, 6).equation_count() == 1680);
    CHECK(ProlongedSystem(even, 0).equation_count() == 60);
    CHECK(ProlongedSystem(even, 6).jet_count() == 1584);
}

TEST_CASE("assembly agrees with the symbolic prolongation") {
    LinearPDESystem even = zv_even(2);
    const int n = 2;
    ProlongedSystem ps(even, n);
    Rational x0(1, 2), y0(2);
    AssembledMatrix am = assemble(ps, x0, y0);
    CHECK(am.mat.rows() == ps.equation_count());
    CHECK(am.mat.cols() == ps.jet_count());

    auto midx = multi_indices_upto(n);
    for (size_t mp = 0; mp < midx.size(); ++mp) {
        for (size_t e = 0; e < even.equations.size(); ++e) {
            // full sweep over the low orders, sampled rows at the top one
            if (midx[mp].first + midx[mp].second == n && e % 5 != 0) continue;
            auto sym = ps.symbolic_row(e, midx[mp].first, midx[mp].second);
            // evaluate the symbolic row and clear denominators identically
            std::vector<std::pair<size_t, Rational>> vals;
            for (const auto& [key, coeff] : sym) {
                Rational v = coeff.evaluate({x0, y0});
                if (!v.is_zero())
                    vals.emplace_back(am.column_of(key.first, key.second.first, key.second.second),
                                      v);
            }
            BigInt l(1);
            for (auto& [cidx, v] : vals) l = BigInt::lcm(l, v.den());
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            const auto& row = am.mat.row(ps.row_of(mp, e));
            REQUIRE(row.size() == vals.size());
            for (size_t i = 0; i < row.size(); ++i) {
                CHECK(row[i].first == vals[i].first);
                CHECK(row[i].second == vals[i].second * Rational(l));
            }
        }
    }
}

TEST_CASE("jet order is bounded by differentiation order plus one") {
    LinearPDESystem even = zv_even(2);
    ProlongedSystem ps(even, 3);
    AssembledMatrix am = assemble(ps, Rational(1, 2), Rational(2));
    auto midx = multi_indices_upto(3);
    for (size_t mp = 0; mp < midx.size(); ++mp) {
        int g = midx[mp].first + midx[mp].second;
        for (size_t e = 0; e < even.equations.size(); ++e) {
            for (const auto& [col, v] : am.mat.row(ps.row_of(mp, e))) {
                JetIndex j = am.jet_of_column(col);
                CHECK(j.a + j.b <= g + 1);
            }
        }
    }
}

TEST_CASE("row scaling cannot change the rank") {
    // scale one equation of a small system by (x + 2), nonzero at the point
    LinearPDESystem even = zv_even(2);
    LinearPDESystem scaled = even;
    RationalFunction factor = rf("x + 2");
    for (PDETerm& t : scaled.equations[3].terms) t.coeff *= factor;

    for (int n = 0; n <= 2; ++n) {
        AssembledMatrix a = assemble(ProlongedSystem(even, n), Rational(1, 2), Rational(2));
        AssembledMatrix b = assemble(ProlongedSystem(scaled, n), Rational(1, 2), Rational(2));
        CHECK(rank_exact(a.mat).rank == rank_exact(b.mat).rank);
    }
}

TEST_CASE("rank is point-independent at regular points") {
    LinearPDESystem even = zv_even(2);
    for (int n = 0; n <= 2; ++n) {
        AssembledMatrix a = assemble(ProlongedSystem(even, n), Rational(1, 2), Rational(2));
        AssembledMatrix b = assemble(ProlongedSystem(even, n), Rational(1, 3), Rational(3));
        CHECK(rank_exact(a.mat).rank == rank_exact(b.mat).rank);
    }
}

TEST_CASE("assembly reports the offending denominator at a pole") {
    LinearPDESystem even = zv_even(2);
    CHECK_THROWS_AS(assemble(ProlongedSystem(even, 0), Rational(1), Rational(2)),
                    DenominatorVanishes);
}

TEST_CASE("symbol of a single transport equation") {
    // {dx f = f}: top-order row at n = 0 is [1, 0] on (dx f, dy f)
    LinearPDESystem s = toy({{{0, Deriv::Dx, rf("1")}, {0, Deriv::Value, rf("-1")}}});
    SymbolMatrix sm = symbol_assemble(s, 0, Rational(1, 2), Rational(2));
    CHECK(sm.mat.rows() == 1);
    CHECK(sm.mat.cols() == 2);
    CHECK(sm.mat.at(0, 0) == Rational(1));
    CHECK(sm.mat.at(0, 1) == Rational(0));
}

TEST_CASE("purely algebraic equations contribute no symbol rows") {
    LinearPDESystem s = toy({{{0, Deriv::Dx, rf("1")}}, {{0, Deriv::Value, rf("x")}}});
    SymbolMatrix sm = symbol_assemble(s, 1, Rational(1, 2), Rational(2));
    // only the differential equation contributes, once per multi-index of order 1
    CHECK(sm.raw_rows == 2);
    CHECK(sm.mat.rows() == 2);
    CHECK(sm.mat.cols() == 3);
}

TEST_CASE("triplet round-trip preserves the matrix bit-exactly") {
    LinearPDESystem even = zv_even(2);
    AssembledMatrix am = assemble(ProlongedSystem(even, 1), Rational(1, 2), Rational(2));
    std::stringstream ss;
    write_triplets(am.mat, ss);
    SparseRationalMatrix back = read_triplets(ss);
    CHECK(back == am.mat);
    std::stringstream bad("2 2 1\n0 0 notanumber\n");
    CHECK_THROWS_AS(read_triplets(bad), IoError);
}

TEST_CASE("dimension identities across degrees and levels") {
    MetricSpec m = zipoy_voorhees({0});
    Hamiltonian h = hamiltonian(m, invert(m));
    for (int degree = 1; degree <= 7; ++degree) {
        auto [odd, even] = split_parity(poisson_bracket_system(h, degree));
        for (const LinearPDESystem* s : {&odd, &even}) {
            for (int n = 0; n <= 6; ++n) {
                ProlongedSystem ps(*s, n);
                CHECK(ps.equation_count() ==
                      s->equations.size() * (size_t)(n + 1) * (n + 2) / 2);
                CHECK(ps.jet_count() ==
                      s->unknowns.size() * (size_t)(n + 2) * (n + 3) / 2);
            }
        }
    }
}

TEST_CASE("degree-6 even ranks agree at two regular points") {
    LinearPDESystem even = zv_even(6);
    for (int n = 0; n <= 4; ++n) {
        AssembledMatrix a = assemble(ProlongedSystem(even, n), Rational(1, 2), Rational(2));
        AssembledMatrix b = assemble(ProlongedSystem(even, n), Rational(1, 3), Rational(3));
        auto pa = draw_primes(a.mat, 2, kDefaultPrimeSeed);
        auto pb = draw_primes(b.mat, 2, kDefaultPrimeSeed);
        CHECK(rank_modular(a.mat, pa).rank == rank_modular(b.mat, pb).rank);
    }
}
