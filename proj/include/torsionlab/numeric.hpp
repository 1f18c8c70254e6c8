#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace torsionlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs_i(const Int& a) { return a < 0 ? Int(-a) : a; }

// g = a*x + b*y
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) { x = a < 0 ? -1 : 1; y = 0; return abs_i(a); }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// floor division (C++ / truncates toward zero)
inline Int fdiv(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}
inline Int fmod_i(const Int& a, const Int& b) { return a - fdiv(a, b) * b; }

inline Int ipow(Int base, unsigned e) {
    Int r = 1;
    while (e) { if (e & 1) r *= base; base *= base; e >>= 1; }
    return r;
}

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) { r *= n - i; r /= i + 1; }
    return r;
}

inline double log_int(const Int& n) {
    if (n <= 0) throw std::domain_error("log_int: nonpositive");
    return static_cast<double>(boost::multiprecision::log(BigFloat(n)));
}

inline double to_double(const Rat& q) {
    return static_cast<double>(BigFloat(boost::multiprecision::numerator(q)) /
                               BigFloat(boost::multiprecision::denominator(q)));
}

inline long to_long(const Int& n) {
    if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
        throw std::overflow_error("to_long: out of range");
    return static_cast<long>(n);
}

} // namespace torsionlab
