#include <catch2/catch_amalgamated.hpp>

#include "torsionlab/smith.hpp"

#include <random>

using namespace torsionlab;

namespace {

// Independent oracle: naive full-pivot Smith normal form, no sparsity, no
// pivot strategy beyond first nonzero, used to check the production pipeline.
std::vector<Int> naive_snf(IntMat A) {
    int n = A.rows, m = A.cols;
    std::vector<Int> diag;
    int s = 0;
    while (s < std::min(n, m)) {
        int pi = -1, pj = -1;
        for (int i = s; i < n && pi < 0; ++i)
            for (int j = s; j < m; ++j)
                if (A(i, j) != 0) { pi = i; pj = j; break; }
        if (pi < 0) break;
        for (int j = 0; j < m; ++j) std::swap(A(s, j), A(pi, j));
        for (int i = 0; i < n; ++i) std::swap(A(i, s), A(i, pj));
        bool again = true;
        while (again) {
            again = false;
            for (int i = s + 1; i < n; ++i)
                while (A(i, s) != 0) {
                    Int q = fdiv(A(i, s), A(s, s));
                    for (int j = 0; j < m; ++j) A(i, j) -= q * A(s, j);
                    if (A(i, s) != 0)
                        for (int j = 0; j < m; ++j) std::swap(A(s, j), A(i, j));
                }
            for (int j = s + 1; j < m; ++j)
                while (A(s, j) != 0) {
                    Int q = fdiv(A(s, j), A(s, s));
                    for (int i = 0; i < n; ++i) A(i, j) -= q * A(i, s);
                    if (A(s, j) != 0) {
                        for (int i = 0; i < n; ++i) std::swap(A(i, s), A(i, j));
                        again = true;
                    }
                }
        }
        for (int i = s + 1; i < n; ++i)
            for (int j = s + 1; j < m; ++j)
                if (A(i, j) % A(s, s) != 0) {
                    for (int jj = 0; jj < m; ++jj) A(s, jj) += A(i, jj);
                    i = n; // restart cleaning
                    j = m;
                    again = true;
                }
        if (again) continue;
        diag.push_back(abs_i(A(s, s)));
        ++s;
    }
    // divisibility chain
    for (bool ch = true; ch;) {
        ch = false;
        for (size_t i = 0; i + 1 < diag.size(); ++i)
            if (diag[i + 1] % diag[i] != 0) {
                Int g = gcd(diag[i], diag[i + 1]);
                diag[i + 1] = diag[i] / g * diag[i + 1];
                diag[i] = g;
                ch = true;
            }
    }
    return diag;
}

} // namespace

TEST_CASE("snf basics") {
    IntMat d(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 3;
    auto f = snf(d);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == 1);
    CHECK(f.factors[1] == 6);

    IntMat z(3, 4);
    CHECK(snf(z).factors.empty());
}

TEST_CASE("snf matches naive oracle on random matrices") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> dim(1, 6), val(-9, 9);
    for (int t = 0; t < 500; ++t) {
        int r = dim(rng), c = dim(rng);
        IntMat A(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) A(i, j) = val(rng);
        auto expect = naive_snf(A);
        auto got = snf(A).factors;
        REQUIRE(got == expect);
    }
}

TEST_CASE("snf divisibility chain and minor gcd spot check") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> val(-6, 6);
    for (int t = 0; t < 50; ++t) {
        IntMat A(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) A(i, j) = val(rng);
        auto f = snf(A).factors;
        for (size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] % f[i] == 0);
        // d1 = gcd of entries
        Int g = 0;
        for (const auto& x : A.a) g = gcd(g, abs_i(x));
        if (!f.empty()) CHECK(f[0] == g);
        // product of factors = gcd of k x k minors at k = rank (up to sign) for k = 3
        if (f.size() == 3) {
            Int det = A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
                      A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
                      A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
            CHECK(f[0] * f[1] * f[2] == abs_i(det));
        }
    }
}

TEST_CASE("kernel lattice is saturated and annihilates") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> val(-5, 5), dim(2, 6);
    for (int t = 0; t < 100; ++t) {
        int r = dim(rng), c = dim(rng);
        IntMat A(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) A(i, j) = val(rng);
        IntMat K = kernel_lattice(A);
        CHECK(K.rows == c - rank_of(A));
        for (int i = 0; i < K.rows; ++i) {
            std::vector<Int> x(c);
            for (int j = 0; j < c; ++j) x[j] = K(i, j);
            auto y = mul_vec(A, x);
            for (const auto& v : y) CHECK(v == 0);
        }
        // saturation: SNF of K has all invariant factors 1
        if (K.rows > 0) {
            auto f = snf(K).factors;
            for (const auto& d : f) CHECK(d == 1);
        }
    }
}

TEST_CASE("snf with transforms reproduces S = P A Q") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> val(-7, 7), dim(1, 5);
    for (int t = 0; t < 100; ++t) {
        int r = dim(rng), c = dim(rng);
        IntMat A(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) A(i, j) = val(rng);
        auto tr = snf_with_transforms(A);
        CHECK(mul(mul(tr.P, A), tr.Q) == tr.S);
        CHECK(mul(tr.P, tr.Pinv) == IntMat::identity(r));
    }
}

TEST_CASE("sparse snf handles a larger structured matrix") {
    // block-diagonal with known factors plus noise rows of units
    SparseMat M(40, 60);
    for (int i = 0; i < 30; ++i) M.add_entry(i, i, Int(1));
    M.add_entry(30, 30, Int(4));
    M.add_entry(31, 31, Int(6));
    M.add_entry(32, 32, Int(10));
    for (int j = 33; j < 60; ++j) M.add_entry(35, j, Int(2 * (j % 3) - 1)); // -1,1,3 pattern
    M.finalize();
    auto f = snf_sparse(M).factors;
    auto g = snf(M.to_dense()).factors;
    auto h = naive_snf(M.to_dense());
    CHECK(f == h);
    CHECK(g == h);
}
