// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
//
// Runs the full published computation: both degree-6 parity tables of the
// delta = 2 family member at (1/2, 2), the flat-metric finite-type tables,
// the quadratic controls against Schwarzschild, the degree-reduction runs,
// the exact-arithmetic property suites and the geodesic conservation check.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "geodesic.hpp"
#include "modular.hpp"
#include "../tests/test_util.hpp"

using namespace kipp;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool rows_match(const DeltaTable& t, const std::vector<std::array<long, 5>>& expect,
                std::string& detail) {
    for (const auto& e : expect) {
        bool found = false;
        for (const DeltaRow& r : t.rows) {
            if (r.n != e[0]) continue;
            found = true;
            if ((long)r.num_equations != e[1] || (long)r.dim_u != e[2] ||
                (long)r.rank.rank != e[3] || r.delta != e[4]) {
                std::ostringstream os;
                os << "n=" << r.n << " got (" << r.num_equations << "," << r.dim_u << ","
                   << r.rank.rank << "," << r.delta << ") want (" << e[1] << "," << e[2] << ","
                   << e[3] << "," << e[4] << ")";
                detail = os.str();
                return false;
            }
        }
        if (!found) {
            detail = "row n=" + std::to_string(e[0]) + " missing";
            return false;
        }
    }
    return true;
}

RunConfig base_config(long delta, int degree, ParitySelection parity) {
    RunConfig c;
    c.delta = delta;
    c.degree = degree;
    c.parity = parity;
    c.progress = false;
    return c;
}

}  // namespace

int main() {
    std::printf("kipp acceptance suite (version %s)\n", kVersion);

    criterion(1, "odd degree-6 table reproduction, delta=2 at (1/2,2)", [](std::string& detail) {
        RunConfig c = base_config(2, 6, ParitySelection::Odd);
        c.max_prolong = 6;
        c.full_table = true;  // report the honest n=5 row and the n=6 endpoint
        Report r = run(c);
        const DeltaTable& t = r.parity_results.at(0).table;
        if (!rows_match(t,
                        {{0, 60, 120, 60, 60},
                         {1, 180, 240, 180, 60},
                         {2, 360, 400, 360, 40},
                         {3, 600, 600, 590, 10},
                         {4, 900, 840, 838, 2},
                         {6, 1680, 1440, 1440, 0}},
                        detail))
            return false;
        const DeltaRow& last = t.rows.back();
        if (!(last.n == 6 && last.delta == 0 && last.rank.certified_exact)) {
            detail = "final level must be a certified delta = 0 at n = 6";
            return false;
        }
        bool flagged = false;
        for (const std::string& note : t.notes)
            if (note.find("shifted level convention") != std::string::npos) flagged = true;
        if (!flagged) {
            detail = "n-label discrepancy note missing from the report";
            return false;
        }
        if (r.parity_results.at(0).verdict.outcome != Outcome::NoNontrivialIntegral) {
            detail = "verdict is not NoNontrivialIntegral";
            return false;
        }
        detail = "n=5 row computed as (" + std::to_string(t.rows.at(5).num_equations) + "," +
                 std::to_string(t.rows.at(5).dim_u) + "," + std::to_string(t.rows.at(5).rank.rank) +
                 "," + std::to_string(t.rows.at(5).delta) + ")";
        return true;
    });

    criterion(2, "even degree-6 table reproduction with the 16-dim trivial kernel",
              [](std::string& detail) {
        namespace fs = std::filesystem;
        fs::path cache = fs::temp_directory_path() / "kipp_acceptance_cache";
        fs::remove_all(cache);

        RunConfig c = base_config(2, 6, ParitySelection::Even);
        c.max_prolong = 6;
        c.cache_dir = cache.string();
        Report r = run(c);
        const ParityResult& pr = r.parity_results.at(0);
        if (!rows_match(pr.table,
                        {{0, 60, 132, 60, 56},
                         {1, 180, 264, 180, 68},
                         {2, 360, 440, 360, 64},
                         {3, 600, 660, 600, 44},
                         {4, 900, 924, 888, 20},
                         {5, 1260, 1232, 1215, 1},
                         {6, 1680, 1584, 1568, 0}},
                        detail))
            return false;
        if (pr.table.trivial_dim != 16) {
            detail = "trivial dimension is " + std::to_string(pr.table.trivial_dim);
            return false;
        }
        if (!pr.table.rows.back().rank.certified_exact) {
            detail = "final rank not certified";
            return false;
        }
        if (pr.verdict.outcome != Outcome::NoNontrivialIntegral) {
            detail = "verdict is not NoNontrivialIntegral";
            return false;
        }

        // Re-verify the kernel content directly: all 16 trivial jet vectors
        // annihilated exactly by the n = 6 matrix and linearly independent.
        MetricSpec m = zipoy_voorhees({2});
        Hamiltonian h = hamiltonian(m, invert(m));
        LinearPDESystem even = split_parity(poisson_bracket_system(h, 6)).second;
        AssembledMatrix am = assemble(ProlongedSystem(even, 6), Rational(1, 2), Rational(2));
        TrivialBasis basis = trivial_basis(6, Parity::Even, h);
        auto vectors = trivial_jet_vectors(basis, even, Rational(1, 2), Rational(2), 6);
        if (vectors.size() != 16) {
            detail = "expected 16 trivial jet vectors";
            return false;
        }
        for (const auto& v : vectors)
            for (const Rational& x : mat_vec(am.mat, v))
                if (!x.is_zero()) {
                    detail = "a trivial jet vector is not annihilated";
                    return false;
                }
        if (rank_of_vectors(vectors) != 16) {
            detail = "trivial jet vectors are dependent";
            return false;
        }

        // Resumability: drop the n = 6 cache entries and rerun; the warm run
        // reuses the n <= 5 matrices and must reproduce the report exactly.
        for (const auto& entry : fs::directory_iterator(cache))
            if (entry.path().filename().string().find("_n6_") != std::string::npos)
                fs::remove(entry.path());
        Report warm = run(c);
        auto strip_timing = [](const Report& rep) {
            nlohmann::json j = nlohmann::json::parse(emit_report(rep, ReportFormat::Json));
            j.erase("timing");
            return j.dump();
        };
        if (strip_timing(warm) != strip_timing(r)) {
            detail = "resumed run differs from the cold run";
            return false;
        }
        fs::remove_all(cache);
        return true;
    });

    criterion(3, "flat-metric finite-type tables: even ell=6 with the printed Delta sequence, odd ell=5",
              [](std::string& detail) {
        MetricSpec flat = zipoy_voorhees({0});
        Hamiltonian h = hamiltonian(flat, invert(flat));
        auto [odd, even] = split_parity(poisson_bracket_system(h, 6));

        FiniteTypeReport fe = finite_type_level(even, Rational(1, 2), Rational(2), 6);
        std::vector<long> want_delta = {28, 19, 10, 6, 2, 1, 0};
        if (fe.rows.size() != want_delta.size()) {
            detail = "even symbol table has " + std::to_string(fe.rows.size()) + " rows";
            return false;
        }
        // full golden comparison of the printed table
        std::vector<std::array<long, 4>> want_cells = {
            {60, 88, 60, 28},   {113, 132, 113, 19}, {166, 176, 166, 10}, {219, 220, 214, 6},
            {272, 264, 262, 2}, {325, 308, 307, 1},  {378, 352, 352, 0}};
        for (size_t i = 0; i < want_delta.size(); ++i) {
            const FiniteTypeRow& r = fe.rows[i];
            if (r.delta != want_delta[i] || (long)r.num_equations != want_cells[i][0] ||
                (long)r.dim_v != want_cells[i][1] || (long)r.rank != want_cells[i][2]) {
                std::ostringstream os;
                os << "even symbol row n=" << i << " got (" << r.num_equations << "," << r.dim_v
                   << "," << r.rank << "," << r.delta << ")";
                detail = os.str();
                return false;
            }
        }
        if (!fe.ell || *fe.ell != 6) {
            detail = "even ell is not 6";
            return false;
        }
        FiniteTypeReport fo = finite_type_level(odd, Rational(1, 2), Rational(2), 6);
        if (!fo.ell || *fo.ell != 5) {
            detail = "odd ell is not 5";
            return false;
        }
        return true;
    });

    criterion(4, "quadratic controls: delta=2 has none, Schwarzschild has a candidate",
              [](std::string& detail) {
        RunConfig c2 = base_config(2, 2, ParitySelection::Both);
        c2.max_prolong = 4;
        Report r2 = run(c2);
        if (exit_code(r2) != 0) {
            detail = "delta=2 degree-2 exit code " + std::to_string(exit_code(r2));
            return false;
        }
        RunConfig c1 = base_config(1, 2, ParitySelection::Both);
        c1.max_prolong = 4;
        Report r1 = run(c1);
        if (exit_code(r1) != 2) {
            detail = "delta=1 degree-2 exit code " + std::to_string(exit_code(r1));
            return false;
        }
        for (const ParityResult& pr : r1.parity_results) {
            if (pr.parity != Parity::Even) continue;
            // kernel strictly exceeds the 4-dimensional trivial space;
            // the excess dimension (regression value) is exactly 1
            if (pr.table.trivial_dim != 4) {
                detail = "Schwarzschild trivial space is not 4-dimensional";
                return false;
            }
            if (pr.verdict.outcome != Outcome::CandidateKernel || pr.verdict.kernel_excess != 1) {
                detail = "Schwarzschild even verdict excess " +
                         std::to_string(pr.verdict.kernel_excess);
                return false;
            }
            if (pr.table.candidate_kernel.size() != 5) {
                detail = "Schwarzschild kernel sample has " +
                         std::to_string(pr.table.candidate_kernel.size()) + " vectors";
                return false;
            }
        }
        return true;
    });

    criterion(5, "degree-reduction consistency: degrees 3, 4, 5 all have only trivial integrals",
              [](std::string& detail) {
        for (int degree : {3, 4, 5}) {
            Report r = run(base_config(2, degree, ParitySelection::Both));
            if (exit_code(r) != 0) {
                detail = "degree " + std::to_string(degree) + " exit code " +
                         std::to_string(exit_code(r));
                return false;
            }
            for (const ParityResult& pr : r.parity_results) {
                if (pr.verdict.outcome != Outcome::NoNontrivialIntegral) {
                    detail = "degree " + std::to_string(degree) + " parity " +
                             parity_name(pr.parity) + " verdict " +
                             outcome_name(pr.verdict.outcome);
                    return false;
                }
            }
        }
        return true;
    });

    criterion(6, "property suites: exact arithmetic, Leibniz, bracket oracle, modular bound, trivial annihilation",
              [](std::string& detail) {
        using namespace kipp::testutil;
        const std::vector<std::string> XY = {"x", "y"};

        // ring/field axioms on randomized inputs
        Rng rng(20240601);
        for (int i = 0; i < 50; ++i) {
            Rational a = rng.rational(40, 15), b = rng.rational(40, 15), cq = rng.rational(40, 15);
            if ((a + b) + cq != a + (b + cq) || a * (b + cq) != a * b + a * cq) {
                detail = "rational field axiom violated";
                return false;
            }
            Polynomial p = rng.polynomial(XY, 3, 4), q = rng.polynomial(XY, 3, 4),
                       s = rng.polynomial(XY, 3, 4);
            if ((p * q) * s != p * (q * s) || p * (q + s) != p * q + p * s || p + q != q + p) {
                detail = "polynomial ring axiom violated";
                return false;
            }
        }

        // Leibniz rule for differentiation
        for (int i = 0; i < 20; ++i) {
            RationalFunction f = rng.ratfunc(XY), g = rng.ratfunc(XY);
            for (const char* v : {"x", "y"}) {
                if ((f * g).derivative(v) != f.derivative(v) * g + f * g.derivative(v)) {
                    detail = "Leibniz rule violated";
                    return false;
                }
            }
        }

        // bracket correctness against a finite-difference oracle
        {
            MetricSpec m = zipoy_voorhees({2});
            Hamiltonian h = hamiltonian(m, invert(m));
            LinearPDESystem s = poisson_bracket_system(h, 2);
            std::vector<RationalFunction> values;
            MomentumPolynomial integral;
            for (size_t u = 0; u < s.num_unknowns(); ++u) {
                RationalFunction f(rng.polynomial(XY, 2, 3));
                values.push_back(f);
                integral += MomentumPolynomial::term(s.unknowns[u].index, f);
            }
            std::vector<RationalFunction> residuals = substitute(s, values);
            auto eval_num = [&](const MomentumPolynomial& mp, double xx, double yy,
                                const std::array<double, 4>& pp) {
                double acc = 0;
                for (const auto& [me, cf] : mp.terms()) {
                    double num = 0, den = 0;
                    for (const auto& [ee, cc] : cf.num().terms()) {
                        double t2 = cc.to_double();
                        for (uint32_t k = 0; k < ee[0]; ++k) t2 *= xx;
                        for (uint32_t k = 0; k < ee[1]; ++k) t2 *= yy;
                        num += t2;
                    }
                    for (const auto& [ee, cc] : cf.den().terms()) {
                        double t2 = cc.to_double();
                        for (uint32_t k = 0; k < ee[0]; ++k) t2 *= xx;
                        for (uint32_t k = 0; k < ee[1]; ++k) t2 *= yy;
                        den += t2;
                    }
                    double term = num / den;
                    for (int a = 0; a < 4; ++a)
                        for (int k = 0; k < me[a]; ++k) term *= pp[a];
                    acc += term;
                }
                return acc;
            };
            int checked = 0;
            Rng rng2(777);
            while (checked < 5) {
                Rational x0 = rng2.rational(3, 4) + Rational(3);
                Rational y0 = rng2.rational(3, 4) + Rational(7);
                std::array<Rational, 4> p{rng2.rational(2, 3), rng2.rational(2, 3),
                                          rng2.rational(2, 3), rng2.rational(2, 3)};
                Rational exact(0);
                bool skip = false;
                for (size_t e = 0; e < s.equations.size() && !skip; ++e) {
                    try {
                        Rational coeff = residuals[e].evaluate({x0, y0});
                        Rational mono(1);
                        for (int a = 0; a < 4; ++a)
                            for (int k = 0; k < s.equations[e].tag[a]; ++k) mono *= p[a];
                        exact += coeff * mono;
                    } catch (const DenominatorVanishes&) {
                        skip = true;
                    }
                }
                if (skip) continue;
                double x = x0.to_double(), y = y0.to_double();
                std::array<double, 4> pd{p[0].to_double(), p[1].to_double(), p[2].to_double(),
                                         p[3].to_double()};
                const double h0 = 1e-6;
                auto dx = [&](const MomentumPolynomial& f) {
                    return (eval_num(f, x + h0, y, pd) - eval_num(f, x - h0, y, pd)) / (2 * h0);
                };
                auto dy = [&](const MomentumPolynomial& f) {
                    return (eval_num(f, x, y + h0, pd) - eval_num(f, x, y - h0, pd)) / (2 * h0);
                };
                auto dp = [&](const MomentumPolynomial& f, int a) {
                    std::array<double, 4> pp = pd, pm = pd;
                    pp[a] += h0;
                    pm[a] -= h0;
                    return (eval_num(f, x, y, pp) - eval_num(f, x, y, pm)) / (2 * h0);
                };
                double numeric = dx(h.poly) * dp(integral, 0) - dx(integral) * dp(h.poly, 0) +
                                 dy(h.poly) * dp(integral, 1) - dy(integral) * dp(h.poly, 1);
                double ex = exact.to_double();
                if (std::abs(ex) > 1e-4) {
                    if (std::abs(numeric - ex) / std::abs(ex) >= 1e-6) {
                        detail = "bracket oracle relative error too large";
                        return false;
                    }
                    ++checked;
                }
            }
        }

        // modular rank never exceeds the exact rank; count the agreements
        {
            Rng mrng(424242);
            int agreed = 0;
            for (int i = 0; i < 100; ++i) {
                SparseRationalMatrix m(6, 8);
                for (size_t r0 = 0; r0 < 6; ++r0)
                    for (size_t c0 = 0; c0 < 8; ++c0)
                        if (mrng.range(0, 99) < 50) m.add(r0, c0, mrng.rational(9, 4));
                m.finalize();
                size_t exact = rank_exact(m).rank;
                size_t modular = rank_modular(m, draw_primes(m, 1, 5000 + i)).rank;
                if (modular > exact) {
                    detail = "modular rank exceeded the exact rank";
                    return false;
                }
                if (modular == exact) ++agreed;
            }
            if (agreed < 99) {
                detail = "modular/exact agreement only " + std::to_string(agreed) + "/100";
                return false;
            }
        }

        // every trivial generator Poisson-commutes with H, symbolically
        {
            MetricSpec m = zipoy_voorhees({2});
            Hamiltonian h = hamiltonian(m, invert(m));
            TrivialBasis basis = trivial_basis(6, Parity::Even, h);
            if (basis.generators.size() != 16) {
                detail = "trivial basis is not 16-dimensional";
                return false;
            }
            for (const MomentumPolynomial& gen : basis.generators) {
                if (!poisson_bracket(h.poly, gen, h.base_coords()).is_zero()) {
                    detail = "a trivial generator does not commute with H";
                    return false;
                }
            }
        }
        return true;
    });

    criterion(7, "geodesic sanity: 1e5 RK4 steps conserve H and the cyclic momenta",
              [](std::string& detail) {
        MetricSpec m = zipoy_voorhees({2});
        GeodesicResult r = geodesic_sanity(m, {60, 0, 0, 0, 0.005, 0.01, 11, 1}, 100000, 1e-3);
        std::ostringstream os;
        os << "H drift " << r.drift_h;
        detail = os.str();
        if (r.drift_h >= 1e-6) return false;
        if (r.drift_pphi != 0.0 || r.drift_pt != 0.0) {
            detail += "; cyclic momentum drift nonzero";
            return false;
        }
        return true;
    });

    std::printf("%s: %d criteria failed\n", g_failures ? "FAILURE" : "SUCCESS", g_failures);
    return g_failures ? 1 : 0;
}
