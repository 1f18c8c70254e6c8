#pragma once

#include "torsionlab/numeric.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace torsionlab {

/// Dense arbitrary-precision integer matrix, row-major.
struct IntMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Int& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    IntMat transpose() const {
        IntMat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
    }
    bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline IntMat mul(const IntMat& A, const IntMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("IntMat mul: shape mismatch");
    IntMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const Int& v = A(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                if (B(k, j) != 0) C(i, j) += v * B(k, j);
        }
    return C;
}

inline std::vector<Int> mul_vec(const IntMat& A, const std::vector<Int>& x) {
    std::vector<Int> y(A.rows);
    for (int i = 0; i < A.rows; ++i) {
        Int s = 0;
        for (int j = 0; j < A.cols; ++j)
            if (A(i, j) != 0 && x[j] != 0) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

/// Row Hermite form via unimodular row operations. Returns rank; if U is
/// given, tracks the transform (U * original = result).
inline int row_echelon_hermite(IntMat& A, IntMat* U = nullptr) {
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        while (true) {
            int piv = -1;
            for (int i = r; i < A.rows; ++i)
                if (A(i, c) != 0 && (piv < 0 || abs_i(A(i, c)) < abs_i(A(piv, c)))) piv = i;
            if (piv < 0) break;
            if (piv != r) {
                for (int j = 0; j < A.cols; ++j) std::swap(A(r, j), A(piv, j));
                if (U) for (int j = 0; j < U->cols; ++j) std::swap((*U)(r, j), (*U)(piv, j));
            }
            bool done = true;
            for (int i = r + 1; i < A.rows; ++i)
                if (A(i, c) != 0) {
                    Int q = fdiv(A(i, c), A(r, c));
                    for (int j = 0; j < A.cols; ++j) A(i, j) -= q * A(r, j);
                    if (U) for (int j = 0; j < U->cols; ++j) (*U)(i, j) -= q * (*U)(r, j);
                    if (A(i, c) != 0) done = false;
                }
            if (done) {
                if (A(r, c) < 0) {
                    for (int j = 0; j < A.cols; ++j) A(r, j) = -A(r, j);
                    if (U) for (int j = 0; j < U->cols; ++j) (*U)(r, j) = -(*U)(r, j);
                }
                // reduce rows above
                for (int i = 0; i < r; ++i)
                    if (A(i, c) != 0) {
                        Int q = fdiv(A(i, c), A(r, c));
                        for (int j = 0; j < A.cols; ++j) A(i, j) -= q * A(r, j);
                        if (U) for (int j = 0; j < U->cols; ++j) (*U)(i, j) -= q * (*U)(r, j);
                    }
                ++r;
                break;
            }
        }
    }
    return r;
}

/// Saturated integer kernel of A (as rows of the returned matrix).
inline IntMat kernel_lattice(const IntMat& A) {
    IntMat T = A.transpose();
    IntMat U = IntMat::identity(T.rows);
    row_echelon_hermite(T, &U);
    std::vector<int> zero_rows;
    for (int i = 0; i < T.rows; ++i) {
        bool z = true;
        for (int j = 0; j < T.cols; ++j)
            if (T(i, j) != 0) { z = false; break; }
        if (z) zero_rows.push_back(i);
    }
    IntMat K(static_cast<int>(zero_rows.size()), A.cols);
    for (size_t i = 0; i < zero_rows.size(); ++i)
        for (int j = 0; j < A.cols; ++j) K(static_cast<int>(i), j) = U(zero_rows[i], j);
    return K;
}

inline int rank_of(IntMat A) { return row_echelon_hermite(A); }

/// Solve B * x = t over Z where the rows of H span the target lattice... —
/// here: express t in the row lattice of the Hermite-form matrix H (rank rows,
/// echelon). Returns coefficients or empty if not in the lattice.
inline bool in_row_lattice(const IntMat& H, const std::vector<Int>& t, std::vector<Int>* coeff = nullptr) {
    std::vector<Int> v = t;
    std::vector<Int> c(H.rows, 0);
    for (int i = 0; i < H.rows; ++i) {
        int lead = -1;
        for (int j = 0; j < H.cols; ++j)
            if (H(i, j) != 0) { lead = j; break; }
        if (lead < 0) continue;
        if (v[lead] % H(i, lead) != 0) {
            // leading coefficient must divide for echelon basis
        }
        Int q = fdiv(v[lead], H(i, lead));
        if (q != 0) {
            for (int j = 0; j < H.cols; ++j) v[j] -= q * H(i, j);
            c[i] = q;
        }
    }
    bool ok = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
    if (ok && coeff) *coeff = c;
    return ok;
}

} // namespace torsionlab
