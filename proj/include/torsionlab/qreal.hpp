#pragma once

#include "torsionlab/numeric.hpp"

#include <cmath>
#include <optional>
#include <ostream>

namespace torsionlab {

/// Exact real number of the form a + b*sqrt(D), a,b rational, D squarefree > 0.
/// For D = 1 the sqrt is rational and b is folded into a.
struct QReal {
    Rat a, b;
    long D = 1;

    QReal() = default;
    QReal(Rat a_, Rat b_, long d) : a(std::move(a_)), b(std::move(b_)), D(d) { fold(); }
    explicit QReal(Rat a_) : a(std::move(a_)), b(0), D(1) {}
    explicit QReal(long x) : a(x), b(0), D(1) {}

    void fold() {
        if (D == 1 && b != 0) { a += b; b = 0; }
    }
    bool is_rational() const { return b == 0; }
    bool is_zero() const { return a == 0 && b == 0; }

    double value() const {
        return to_double(a) + to_double(b) * std::sqrt(static_cast<double>(D));
    }
};

namespace detail {
inline void check_same_field(const QReal& x, const QReal& y) {
    if (x.b != 0 && y.b != 0 && x.D != y.D)
        throw std::invalid_argument("QReal: mixed radicands");
}
inline long field_of(const QReal& x, const QReal& y) {
    if (x.b != 0) return x.D;
    if (y.b != 0) return y.D;
    return x.D;
}
} // namespace detail

inline QReal operator+(const QReal& x, const QReal& y) {
    detail::check_same_field(x, y);
    return {x.a + y.a, x.b + y.b, detail::field_of(x, y)};
}
inline QReal operator-(const QReal& x, const QReal& y) {
    detail::check_same_field(x, y);
    return {x.a - y.a, x.b - y.b, detail::field_of(x, y)};
}
inline QReal operator-(const QReal& x) { return {-x.a, -x.b, x.D}; }
inline QReal operator*(const QReal& x, const QReal& y) {
    detail::check_same_field(x, y);
    long d = detail::field_of(x, y);
    return {x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d};
}
inline QReal inv(const QReal& x) {
    // 1/(a+b sqrt(D)) = (a - b sqrt(D)) / (a^2 - b^2 D)
    Rat n = x.a * x.a - x.b * x.b * x.D;
    if (n == 0) throw std::domain_error("QReal: division by zero");
    return {x.a / n, -x.b / n, x.D};
}
inline QReal operator/(const QReal& x, const QReal& y) { return x * inv(y); }

inline int sign(const QReal& x) {
    int sa = x.a == 0 ? 0 : (x.a > 0 ? 1 : -1);
    int sb = x.b == 0 ? 0 : (x.b > 0 ? 1 : -1);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 vs b^2 D
    Rat lhs = x.a * x.a, rhs = x.b * x.b * x.D;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
}
inline bool operator==(const QReal& x, const QReal& y) { return sign(x - y) == 0; }
inline bool operator<(const QReal& x, const QReal& y) { return sign(x - y) < 0; }
inline bool operator<=(const QReal& x, const QReal& y) { return sign(x - y) <= 0; }
inline bool operator>(const QReal& x, const QReal& y) { return sign(x - y) > 0; }
inline bool operator>=(const QReal& x, const QReal& y) { return sign(x - y) >= 0; }

inline QReal pow(const QReal& x, unsigned e) {
    QReal r(Rat(1));
    r.D = x.D;
    QReal base = x;
    while (e) { if (e & 1) r = r * base; base = base * base; e >>= 1; }
    return r;
}

inline std::optional<Rat> rational_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    Int n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    Int sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn == n && sd * sd == d) return Rat(sn, sd);
    return std::nullopt;
}

/// Exact square root when the result is again of the form r + s*sqrt(D).
/// Covers the covolume cases: pure rational squares and rational*sqrt(D) squares.
inline std::optional<QReal> exact_sqrt(const QReal& x) {
    if (sign(x) < 0) return std::nullopt;
    if (x.b == 0) {
        if (auto r = rational_sqrt(x.a)) return QReal(*r, Rat(0), x.D);
        // maybe x.a = s^2 * D: sqrt = s*sqrt(D)
        if (auto s = rational_sqrt(x.a / x.D)) return QReal(Rat(0), *s, x.D);
        return std::nullopt;
    }
    if (x.a == 0) return std::nullopt; // sqrt(b sqrt(D)) leaves the field
    // try (p + q sqrt(D))^2 = p^2 + q^2 D + 2pq sqrt(D)
    // p^2, q^2 D are roots of y^2 - a y + (b^2 D / 4) ... solve quadratic in p^2
    Rat disc = x.a * x.a - x.b * x.b * x.D;
    if (auto sd = rational_sqrt(disc)) {
        for (int pm : {1, -1}) {
            Rat p2 = (x.a + Rat(pm) * (*sd)) / 2;
            if (auto p = rational_sqrt(p2)) {
                if (*p == 0) continue;
                Rat q = x.b / (2 * (*p));
                QReal cand(*p, q, x.D);
                if (cand * cand == x && sign(cand) >= 0) return cand;
                cand = -cand;
                if (cand * cand == x && sign(cand) >= 0) return cand;
            }
        }
    }
    return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& os, const QReal& x) {
    if (x.b == 0) return os << x.a;
    if (x.a != 0) os << x.a << (x.b > 0 ? "+" : "");
    return os << x.b << "*sqrt(" << x.D << ")";
}

} // namespace torsionlab
