#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "exactla.hpp"
#include "modular.hpp"
#include "test_util.hpp"

using namespace kipp;

namespace {

SparseRationalMatrix from_dense(const std::vector<std::vector<long>>& rows, size_t cols) {
    SparseRationalMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols; ++c)
            if (rows[r][c]) m.add(r, c, Rational(rows[r][c]));
    m.finalize();
    return m;
}

// Independent rank oracle: dense Gaussian elimination over Q with plain
// fraction arithmetic, no pivoting heuristics shared with the implementation.
size_t dense_rank_oracle(const SparseRationalMatrix& m) {
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
    for (size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) a[r][c] = v;
    size_t rank = 0;
    for (size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        size_t piv = rank;
        while (piv < m.rows() && a[piv][col].is_zero()) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[rank]);
        for (size_t r = rank + 1; r < m.rows(); ++r) {
            if (a[r][col].is_zero()) continue;
            Rational f = a[r][col] / a[rank][col];
            for (size_t c = col; c < m.cols(); ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

SparseRationalMatrix random_matrix(testutil::Rng& rng, size_t R, size_t C, int density_pct) {
    SparseRationalMatrix m(R, C);
    for (size_t r = 0; r < R; ++r)
        for (size_t c = 0; c < C; ++c)
            if (rng.range(0, 99) < density_pct) m.add(r, c, rng.rational(9, 4));
    m.finalize();
    return m;
}

}  // namespace

TEST_CASE("identity and empty") {
    SparseRationalMatrix id = from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
    CHECK(rank_exact(id).rank == 3);
    CHECK(rank_exact(id).certified_exact);
    CHECK(rank_modular(id, {1000003}).rank == 3);
    CHECK(kernel_basis(id).empty());
    SparseRationalMatrix empty(0, 0);
    CHECK(rank_exact(empty).rank == 0);
}

TEST_CASE("rank of a product is bounded by the inner dimension") {
    testutil::Rng rng(1234);
    // 20x30 built as (20x7) * (7x30) with random integer factors
    std::vector<std::vector<long>> A(20, std::vector<long>(7));
    std::vector<std::vector<long>> B(7, std::vector<long>(30));
    for (auto& row : A)
        for (auto& v : row) v = rng.range(-4, 4);
    for (auto& row : B)
        for (auto& v : row) v = rng.range(-4, 4);
    std::vector<std::vector<long>> P(20, std::vector<long>(30, 0));
    for (size_t i = 0; i < 20; ++i)
        for (size_t k = 0; k < 7; ++k)
            for (size_t j = 0; j < 30; ++j) P[i][j] += A[i][k] * B[k][j];
    SparseRationalMatrix m = from_dense(P, 30);
    RankResult r = rank_exact(m);
    CHECK(r.rank == 7);
    CHECK(dense_rank_oracle(m) == 7);
}

TEST_CASE("modular rank can undershoot but never exceed") {
    // [[2, 0], [0, p]] has rank 1 mod p but exact rank 2
    uint64_t p = PrimeStream(7).next();
    BigInt pz(std::to_string(p));
    SparseRationalMatrix m(2, 2);
    m.add(0, 0, Rational(2));
    m.add(1, 1, Rational(pz));
    m.finalize();
    CHECK(rank_modular(m, {p}).rank == 1);
    CHECK(rank_exact(m).rank == 2);
}

TEST_CASE("kernel basics") {
    SparseRationalMatrix m = from_dense({{1, 1}}, 2);
    auto basis = kernel_basis(m);
    REQUIRE(basis.size() == 1);
    // spans {(1, -1)}
    CHECK(basis[0][0] == -basis[0][1]);
    CHECK(!basis[0][0].is_zero());
    for (const Rational& x : mat_vec(m, basis[0])) CHECK(x.is_zero());
}

TEST_CASE("kernel dimension complements the rank on random matrices") {
    testutil::Rng rng(555);
    for (int i = 0; i < 25; ++i) {
        SparseRationalMatrix m = random_matrix(rng, 8, 11, 55);
        RankResult r = rank_exact(m);
        auto basis = kernel_basis(m);
        CHECK(basis.size() + r.rank == m.cols());
        for (const auto& v : basis)
            for (const Rational& x : mat_vec(m, v)) CHECK(x.is_zero());
        CHECK(rank_of_vectors(basis) == basis.size());
        CHECK(dense_rank_oracle(m) == r.rank);
    }
}

TEST_CASE("certificate rule pins the exact rank") {
    testutil::Rng rng(31415);
    for (int i = 0; i < 20; ++i) {
        SparseRationalMatrix m = random_matrix(rng, 9, 12, 45);
        RankResult exact = rank_exact(m);
        auto basis = kernel_basis(m);
        std::vector<uint64_t> primes = draw_primes(m, 1, 1000 + i);
        RankResult cert = rank_with_certificate(m, RankMethod::Modular, primes, basis);
        if (cert.certified_exact) {
            CHECK(cert.rank == exact.rank);
        } else {
            // the only way certification fails here is a modular undershoot
            CHECK(cert.rank < exact.rank);
        }
        // with the exact method the certificate is unconditional
        RankResult both = rank_with_certificate(m, RankMethod::Both, primes, {});
        CHECK(both.rank == exact.rank);
        CHECK(both.certified_exact);
    }
}

TEST_CASE("full column rank mod p certifies with an empty kernel") {
    SparseRationalMatrix m = from_dense({{1, 2}, {3, 4}, {5, 6}}, 2);
    std::vector<uint64_t> primes = draw_primes(m, 2, 42);
    RankResult r = rank_with_certificate(m, RankMethod::Modular, primes, {});
    CHECK(r.rank == 2);
    CHECK(r.certified_exact);
}

TEST_CASE("modular agrees with exact on random small matrices") {
    testutil::Rng rng(2718);
    int agreed = 0;
    const int trials = 100;
    for (int i = 0; i < trials; ++i) {
        SparseRationalMatrix m = random_matrix(rng, 6, 8, 50);
        size_t exact = rank_exact(m).rank;
        std::vector<uint64_t> primes = draw_primes(m, 1, 90000 + i);
        size_t modular = rank_modular(m, primes).rank;
        CHECK(modular <= exact);  // never exceeds
        if (modular == exact) ++agreed;
    }
    CHECK(agreed >= 99);
}

TEST_CASE("rank is invariant under row and column permutations") {
    testutil::Rng rng(1618);
    SparseRationalMatrix m = random_matrix(rng, 7, 9, 60);
    size_t base = rank_exact(m).rank;
    std::vector<size_t> rp(7), cp(9);
    for (size_t i = 0; i < 7; ++i) rp[i] = i;
    for (size_t i = 0; i < 9; ++i) cp[i] = i;
    for (int t = 0; t < 5; ++t) {
        std::shuffle(rp.begin(), rp.end(), std::mt19937(t));
        std::shuffle(cp.begin(), cp.end(), std::mt19937(t + 100));
        SparseRationalMatrix p(7, 9);
        for (size_t r = 0; r < 7; ++r)
            for (const auto& [c, v] : m.row(r)) p.add(rp[r], cp[c], v);
        p.finalize();
        CHECK(rank_exact(p).rank == base);
    }
}

TEST_CASE("prime stream yields distinct usable primes") {
    PrimeStream s(kDefaultPrimeSeed);
    uint64_t a = s.next(), b = s.next();
    CHECK(a != b);
    CHECK(is_prime_u64(a));
    CHECK(is_prime_u64(b));
    CHECK(a > (1ULL << 16));
    CHECK(is_prime_u64(2305843009213693951ULL));  // 2^61 - 1
    CHECK(!is_prime_u64((1ULL << 62) - 33));
    CHECK(!is_prime_u64(1));
}
