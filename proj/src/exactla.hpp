#pragma once

#include <string>
#include <vector>

#include "sparse.hpp"

namespace kipp {

enum class RankMethod { Exact, Modular, Both };

RankMethod rank_method_from(const std::string& name);
const char* rank_method_name(RankMethod m);

struct RankResult {
    size_t rank = 0;
    RankMethod method = RankMethod::Exact;
    std::vector<uint64_t> primes_used;
    bool certified_exact = false;
    std::string certificate;  // how certification was obtained, for reports
};

// Exact rank over Q: fraction-free (Bareiss) elimination with Markowitz-style
// sparse pivoting. Always certified.
RankResult rank_exact(const SparseRationalMatrix& m);

// Rank mod each prime in order; reports the maximum, which lower-bounds the
// rational rank. Primes dividing an entry denominator are skipped and
// replaced from the stream. Uncertified unless combined with a kernel
// certificate (see rank_with_certificate).
RankResult rank_modular(const SparseRationalMatrix& m, const std::vector<uint64_t>& primes);

// Draws `count` usable primes deterministically from the given seed.
std::vector<uint64_t> draw_primes(const SparseRationalMatrix& m, int count, uint64_t seed);

// Exact basis of the right null space via rational Gauss-Jordan; size equals
// cols - rank. Intended for small and medium matrices.
std::vector<std::vector<Rational>> kernel_basis(const SparseRationalMatrix& m);

// Exact sparse matrix-vector product.
std::vector<Rational> mat_vec(const SparseRationalMatrix& m, const std::vector<Rational>& v);

// Exact rank of a small stack of dense vectors (Gauss over Q).
size_t rank_of_vectors(const std::vector<std::vector<Rational>>& vectors);

// The soundness core for big matrices: if rank(m mod p) == cols - d for some
// prime p, and d exhibited kernel vectors are exactly verified (m v = 0 over
// Q) and linearly independent, the exact rank is cols - d.
//
// With method Exact (or Both) the fraction-free path decides (and, for Both,
// the modular ranks are cross-checked against it). With method Modular the
// result is certified only when the certificate applies; otherwise the
// modular rank is reported uncertified.
RankResult rank_with_certificate(const SparseRationalMatrix& m, RankMethod method,
                                 const std::vector<uint64_t>& primes,
                                 const std::vector<std::vector<Rational>>& known_kernel);

}  // namespace kipp
