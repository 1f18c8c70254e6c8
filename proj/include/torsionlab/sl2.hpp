#pragma once

#include "torsionlab/quad.hpp"

#include <vector>

namespace torsionlab {

/// Element of SL(2, O_D); determinant 1 is the caller's invariant and is
/// checked by validate().
struct SL2Mat {
    QuadInt a, b, c, d;
    bool operator==(const SL2Mat& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator!=(const SL2Mat& o) const { return !(*this == o); }
};

inline SL2Mat sl2_identity() { return {QuadInt(1), QuadInt(0), QuadInt(0), QuadInt(1)}; }
inline SL2Mat sl2_neg_identity() { return {QuadInt(-1), QuadInt(0), QuadInt(0), QuadInt(-1)}; }

inline QuadInt det(const QuadRing& R, const SL2Mat& M) {
    return mul(R, M.a, M.d) - mul(R, M.b, M.c);
}
inline bool is_unimodular(const QuadRing& R, const SL2Mat& M) {
    return det(R, M) == QuadInt(1);
}

inline SL2Mat mul(const QuadRing& R, const SL2Mat& X, const SL2Mat& Y) {
    return {mul(R, X.a, Y.a) + mul(R, X.b, Y.c), mul(R, X.a, Y.b) + mul(R, X.b, Y.d),
            mul(R, X.c, Y.a) + mul(R, X.d, Y.c), mul(R, X.c, Y.b) + mul(R, X.d, Y.d)};
}
inline SL2Mat inv(const SL2Mat& M) { return {M.d, -M.b, -M.c, M.a}; }

/// Word in signed 1-based generator indices.
using Word = std::vector<int>;

inline SL2Mat evaluate_word(const QuadRing& R, const std::vector<SL2Mat>& gens, const Word& w) {
    SL2Mat M = sl2_identity();
    for (int s : w) {
        const SL2Mat& g = gens[static_cast<size_t>(std::abs(s)) - 1];
        M = mul(R, M, s > 0 ? g : inv(g));
    }
    return M;
}

inline Word inverse_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Word free_reduce(const Word& w) {
    Word out;
    for (int s : w) {
        if (!out.empty() && out.back() == -s) out.pop_back();
        else out.push_back(s);
    }
    return out;
}

} // namespace torsionlab
