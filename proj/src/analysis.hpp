#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exactla.hpp"
#include "metric.hpp"
#include "pde.hpp"
#include "prolong.hpp"

namespace kipp {

// Products H^a p_phi^b p_t^c with 2a+b+c = degree: integrals carrying no new
// information, spanning the expected kernel of the assembled systems.
struct TrivialBasis {
    int degree = 0;
    Parity parity = Parity::Even;
    std::vector<MomentumPolynomial> generators;
};

TrivialBasis trivial_basis(int degree, Parity parity, const Hamiltonian& h);

// Jet vectors of the trivial generators at a point, laid out in the column
// order of an assembled matrix at level n. All vectors are exact.
std::vector<std::vector<Rational>> trivial_jet_vectors(const TrivialBasis& basis,
                                                       const LinearPDESystem& s,
                                                       const Rational& x0, const Rational& y0,
                                                       int n);

struct DeltaRow {
    int n = 0;
    size_t num_equations = 0;
    size_t dim_u = 0;
    RankResult rank;
    long delta = 0;
    size_t nnz = 0;
    size_t max_entry_bits = 0;
    double seconds = 0;
};

struct DeltaTable {
    Parity parity = Parity::Even;
    int degree = 0;
    size_t trivial_dim = 0;
    std::vector<DeltaRow> rows;
    bool aborted_early = false;
    // Exact kernel vectors of the last assembled matrix when the final delta
    // stays positive and the matrix is small enough; candidates only.
    std::vector<std::vector<Rational>> candidate_kernel;
    std::vector<std::string> notes;
};

struct DeltaTableOptions {
    int n_max = 6;
    bool full_table = false;
    RankMethod method = RankMethod::Modular;
    int prime_count = 2;
    uint64_t prime_seed = 0;
    size_t kernel_sample_max_cols = 600;
    std::function<void(const std::string&)> progress;
    std::function<std::optional<AssembledMatrix>(int)> load_cached;
    std::function<void(int, const AssembledMatrix&)> store_cached;
};

// Assembles and ranks every prolongation level up to n_max (stopping at the
// first delta = 0 unless full_table), with delta = dim(u) - rank - trivial_dim.
// The trivial jet vectors are verified in the kernel at every level; when the
// modular rank matches cols - trivial_dim they double as the rank certificate.
DeltaTable delta_table(const LinearPDESystem& s, const TrivialBasis& trivial, const Rational& x0,
                       const Rational& y0, const DeltaTableOptions& opt);

struct FiniteTypeRow {
    int n = 0;
    size_t num_equations = 0;  // independent top-order rows as written
    size_t dim_v = 0;
    size_t rank = 0;
    long delta = 0;
};

// Symbol analysis: ell is the first level whose top-order system determines
// all jets of order n+1 (delta = 0); none when the range is exhausted.
struct FiniteTypeReport {
    Parity parity = Parity::Even;
    std::vector<FiniteTypeRow> rows;
    std::optional<int> ell;
};

FiniteTypeReport finite_type_level(const LinearPDESystem& s, const Rational& x0, const Rational& y0,
                                   int n_max);

enum class Outcome { NoNontrivialIntegral, CandidateKernel, Inconclusive };

const char* outcome_name(Outcome o);

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    long kernel_excess = 0;       // stabilized delta for CandidateKernel
    std::optional<int> decisive_n;  // level the verdict rests on
    std::optional<int> ell;
    bool certified = false;
    std::string reason;
};

// NoNontrivialIntegral requires a certified delta = 0 at some n >= ell.
// A stabilized positive delta yields CandidateKernel: candidate jets only,
// existence is never concluded from pointwise rank. Everything else is
// Inconclusive.
Verdict make_verdict(const DeltaTable& table, const FiniteTypeReport& ftype);

}  // namespace kipp
