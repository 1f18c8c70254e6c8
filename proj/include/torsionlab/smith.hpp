#pragma once

#include "torsionlab/intmat.hpp"

#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace torsionlab {

/// Invariant factors d_1 | d_2 | ... | d_k (all positive).
struct SmithForm {
    std::vector<Int> factors;
    int rank() const { return static_cast<int>(factors.size()); }
    std::vector<Int> torsion() const {
        std::vector<Int> t;
        for (const auto& d : factors)
            if (d > 1) t.push_back(d);
        return t;
    }
    double log_torsion() const {
        double s = 0;
        for (const auto& d : factors)
            if (d > 1) s += log_int(d);
        return s;
    }
    Int torsion_order() const {
        Int p = 1;
        for (const auto& d : factors)
            if (d > 1) p *= d;
        return p;
    }
};

namespace detail {
inline void enforce_divisibility(std::vector<Int>& d) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < d.size(); ++i)
            if (d[i + 1] % d[i] != 0) {
                Int g = gcd(d[i], d[i + 1]);
                Int l = d[i] / g * d[i + 1];
                d[i] = g;
                d[i + 1] = l;
                changed = true;
            }
    }
}
} // namespace detail

namespace detail {
inline bool crosswise_clean(const IntMat& A) {
    // every row and every column holds at most one nonzero entry
    std::vector<int> rc(A.rows, 0), cc(A.cols, 0);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (A(i, j) != 0) {
                if (++rc[i] > 1 || ++cc[j] > 1) return false;
            }
    return true;
}
inline IntMat drop_zero_rows(const IntMat& A) {
    std::vector<int> keep;
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (A(i, j) != 0) { keep.push_back(i); break; }
    IntMat B(static_cast<int>(keep.size()), A.cols);
    for (size_t i = 0; i < keep.size(); ++i)
        for (int j = 0; j < A.cols; ++j) B(static_cast<int>(i), j) = A(keep[i], j);
    return B;
}
} // namespace detail

/// Dense Smith normal form (invariant factors only): alternating Hermite
/// passes (entry growth stays polynomially bounded), then a gcd/lcm fix of
/// the diagonal.
inline SmithForm snf_dense(IntMat A) {
    for (int pass = 0;; ++pass) {
        if (pass > 1000) throw std::logic_error("snf_dense: no convergence");
        row_echelon_hermite(A);
        A = detail::drop_zero_rows(A);
        if (A.rows == 0 || detail::crosswise_clean(A)) break;
        A = A.transpose();
    }
    std::vector<Int> diag;
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (A(i, j) != 0) diag.push_back(abs_i(A(i, j)));
    std::sort(diag.begin(), diag.end());
    detail::enforce_divisibility(diag);
    std::sort(diag.begin(), diag.end());
    SmithForm f;
    f.factors = std::move(diag);
    return f;
}

/// Smith form with transforms: S = P * A * Q, also returning P_inv.
struct SmithTransforms {
    IntMat S, P, Pinv, Q;
    int rank = 0;
};

inline SmithTransforms snf_with_transforms(const IntMat& A0) {
    SmithTransforms t;
    const int n = A0.rows, m = A0.cols;
    IntMat B = A0;
    IntMat P = IntMat::identity(n), Q = IntMat::identity(m);
    bool flipped = false;
    for (int pass = 0;; ++pass) {
        if (pass > 1000) throw std::logic_error("snf_with_transforms: no convergence");
        IntMat U = IntMat::identity(B.rows);
        row_echelon_hermite(B, &U);
        if (!flipped) P = mul(U, P);
        else Q = mul(Q, U.transpose());
        if (detail::crosswise_clean(B)) break;
        B = B.transpose();
        flipped = !flipped;
    }
    if (flipped) {
        B = B.transpose();
        flipped = false;
    }
    // permute the isolated nonzeros onto the diagonal, zero rows last
    std::vector<std::pair<int, int>> entries;
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j)
            if (B(i, j) != 0) entries.emplace_back(i, j);
    auto row_swap = [&](int i1, int i2) {
        if (i1 == i2) return;
        for (int j = 0; j < m; ++j) std::swap(B(i1, j), B(i2, j));
        for (int j = 0; j < n; ++j) std::swap(P(i1, j), P(i2, j));
    };
    auto col_swap = [&](int j1, int j2) {
        if (j1 == j2) return;
        for (int i = 0; i < n; ++i) std::swap(B(i, j1), B(i, j2));
        for (int i = 0; i < m; ++i) std::swap(Q(i, j1), Q(i, j2));
    };
    int s = 0;
    for (auto [i, j] : entries) {
        (void)i;
        (void)j;
        // find the next nonzero at position >= s (positions move under swaps)
        int pi = -1, pj = -1;
        for (int ii = s; ii < n && pi < 0; ++ii)
            for (int jj = 0; jj < m; ++jj)
                if (B(ii, jj) != 0) { pi = ii; pj = jj; break; }
        if (pi < 0) break;
        row_swap(s, pi);
        col_swap(s, pj);
        if (B(s, s) < 0) {
            for (int jj = 0; jj < m; ++jj) B(s, jj) = -B(s, jj);
            for (int jj = 0; jj < n; ++jj) P(s, jj) = -P(s, jj);
        }
        ++s;
    }
    t.rank = s;
    t.S = std::move(B);
    t.P = std::move(P);
    t.Q = std::move(Q);
    // Pinv via Hermite reduction of [P | I] -> [I | P^{-1}] (P unimodular)
    IntMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = t.P(i, j);
        aug(i, n + i) = 1;
    }
    row_echelon_hermite(aug);
    t.Pinv = IntMat(n, n);
    for (int i = 0; i < n; ++i) {
        if (aug(i, i) != 1) throw std::logic_error("snf_with_transforms: P not unimodular");
        for (int j = 0; j < n; ++j) t.Pinv(i, j) = aug(i, n + j);
    }
    // note: the diagonal is not divisibility-sorted; callers needing the
    // invariant-factor chain run snf() on S or post-process the diagonal.
    return t;
}

/// Sparse column-major integer matrix for the Smith pipeline.
struct SparseMat {
    int rows = 0, cols = 0;
    // each column: sorted (row, value), value != 0
    std::vector<std::vector<std::pair<int, Int>>> col;

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), col(c) {}
    void set_sorted(int c, std::vector<std::pair<int, Int>> entries) { col[c] = std::move(entries); }
    void add_entry(int r, int c, Int v) {
        if (v != 0) col[c].emplace_back(r, std::move(v));
    }
    void finalize() {
        for (auto& cc : col) {
            std::sort(cc.begin(), cc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            // merge duplicates
            std::vector<std::pair<int, Int>> merged;
            for (auto& e : cc) {
                if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
                else merged.push_back(std::move(e));
            }
            merged.erase(std::remove_if(merged.begin(), merged.end(),
                                        [](const auto& e) { return e.second == 0; }),
                         merged.end());
            cc = std::move(merged);
        }
    }
    size_t nnz() const {
        size_t s = 0;
        for (const auto& c : col) s += c.size();
        return s;
    }
    IntMat to_dense() const {
        IntMat D(rows, cols);
        for (int c = 0; c < cols; ++c)
            for (const auto& [r, v] : col[c]) D(r, c) = v;
        return D;
    }
};

/// Sparse Smith normal form: unit-pivot sparse elimination with a Markowitz-style
/// pivot rule, dense fallback for the remaining core.
inline SmithForm snf_sparse(SparseMat M) {
    const int R = M.rows, C = M.cols;
    std::vector<std::unordered_set<int>> rowocc(R);
    for (int c = 0; c < C; ++c)
        for (const auto& [r, v] : M.col[c]) rowocc[r].insert(c);
    std::vector<bool> row_done(R, false), col_done(C, false);
    long unit_pivots = 0;

    auto col_sub = [&](int dst, const std::vector<std::pair<int, Int>>& src, const Int& f) {
        // col dst -= f * src
        std::vector<std::pair<int, Int>> out;
        out.reserve(M.col[dst].size() + src.size());
        auto it1 = M.col[dst].begin(), e1 = M.col[dst].end();
        auto it2 = src.begin(), e2 = src.end();
        while (it1 != e1 || it2 != e2) {
            if (it2 == e2 || (it1 != e1 && it1->first < it2->first)) {
                out.push_back(*it1++);
            } else if (it1 == e1 || it2->first < it1->first) {
                Int nv = -f * it2->second;
                if (nv != 0) {
                    out.emplace_back(it2->first, std::move(nv));
                    rowocc[it2->first].insert(dst);
                }
                ++it2;
            } else {
                Int nv = it1->second - f * it2->second;
                if (nv != 0) out.emplace_back(it1->first, std::move(nv));
                else rowocc[it1->first].erase(dst);
                ++it1;
                ++it2;
            }
        }
        M.col[dst] = std::move(out);
    };

    // Unit-pivot phase: process columns shortest-first (set kept in sync),
    // picking within a column the +-1 entry of least row occupancy.
    std::set<std::pair<size_t, int>> queue; // (length, col)
    for (int c = 0; c < C; ++c)
        if (!M.col[c].empty()) queue.insert({M.col[c].size(), c});
    auto queue_update = [&](int c, size_t oldlen) {
        queue.erase({oldlen, c});
        if (!col_done[c] && !M.col[c].empty()) queue.insert({M.col[c].size(), c});
    };
    while (!queue.empty()) {
        int best_c = -1, best_r = -1;
        constexpr int kScanLimit = 64;
        int scanned = 0;
        size_t best_occ = 0;
        for (auto it = queue.begin(); it != queue.end() && scanned < kScanLimit; ++it, ++scanned) {
            int c = it->second;
            for (const auto& [r, v] : M.col[c]) {
                if (v != 1 && v != -1) continue;
                if (best_c < 0 || rowocc[r].size() < best_occ) {
                    best_c = c;
                    best_r = r;
                    best_occ = rowocc[r].size();
                }
            }
            if (best_c >= 0) break; // shortest column with a unit entry wins
        }
        if (best_c < 0) {
            // no unit entry among the shortest columns: full scan once
            for (auto it = queue.begin(); it != queue.end() && best_c < 0; ++it) {
                int c = it->second;
                for (const auto& [r, v] : M.col[c])
                    if (v == 1 || v == -1) { best_c = c; best_r = r; break; }
            }
            if (best_c < 0) break; // no unit pivots anywhere: dense fallback
        }
        Int pivval;
        for (const auto& [r, v] : M.col[best_c])
            if (r == best_r) { pivval = v; break; }
        std::vector<std::pair<int, Int>> pivcol = M.col[best_c];
        std::vector<int> targets(rowocc[best_r].begin(), rowocc[best_r].end());
        for (int c2 : targets) {
            if (c2 == best_c || col_done[c2]) continue;
            Int v2;
            for (const auto& [r, v] : M.col[c2])
                if (r == best_r) { v2 = v; break; }
            if (v2 == 0) continue;
            size_t oldlen = M.col[c2].size();
            col_sub(c2, pivcol, v2 * pivval); // pivval = +-1 so f = v2/pivval = v2*pivval
            queue_update(c2, oldlen);
        }
        // retire pivot row and column
        queue.erase({M.col[best_c].size(), best_c});
        for (const auto& [r, v] : M.col[best_c]) rowocc[r].erase(best_c);
        M.col[best_c].clear();
        col_done[best_c] = true;
        row_done[best_r] = true;
        rowocc[best_r].clear();
        ++unit_pivots;
    }

    // Dense core
#ifdef SNF_DEBUG
    {
        size_t maxbits = 0, n = 0;
        for (int c = 0; c < C; ++c)
            if (!col_done[c])
                for (auto& [r, v] : M.col[c]) {
                    maxbits = std::max(maxbits, boost::multiprecision::msb(abs_i(v)) + size_t(1));
                    ++n;
                }
        std::cerr << "[snf] unit pivots=" << unit_pivots << " core nnz=" << n
                  << " max entry bits=" << maxbits << "\n";
    }
#endif
    std::vector<int> live_rows, live_cols;
    std::unordered_map<int, int> rmap;
    for (int r = 0; r < R; ++r)
        if (!row_done[r] && !rowocc[r].empty()) {
            rmap[r] = static_cast<int>(live_rows.size());
            live_rows.push_back(r);
        }
    for (int c = 0; c < C; ++c)
        if (!col_done[c] && !M.col[c].empty()) live_cols.push_back(c);

    SmithForm result;
    for (long i = 0; i < unit_pivots; ++i) result.factors.push_back(1);
    if (!live_cols.empty()) {
        IntMat core(static_cast<int>(live_rows.size()), static_cast<int>(live_cols.size()));
        for (size_t j = 0; j < live_cols.size(); ++j)
            for (const auto& [r, v] : M.col[live_cols[j]]) core(rmap[r], static_cast<int>(j)) = v;
        SmithForm dense = snf_dense(std::move(core));
        for (auto& d : dense.factors) result.factors.push_back(std::move(d));
    }
    detail::enforce_divisibility(result.factors);
    return result;
}

inline SmithForm snf(const IntMat& A) {
    SparseMat M(A.rows, A.cols);
    for (int j = 0; j < A.cols; ++j)
        for (int i = 0; i < A.rows; ++i)
            if (A(i, j) != 0) M.add_entry(i, j, A(i, j));
    M.finalize();
    return snf_sparse(std::move(M));
}

} // namespace torsionlab
