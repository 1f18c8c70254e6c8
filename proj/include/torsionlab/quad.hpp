#pragma once

#include "torsionlab/numeric.hpp"

#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace torsionlab {

/// The ring of integers O_D of Q(sqrt(-D)), D squarefree.
/// Basis {1, w} with w = sqrt(-D) for D = 1,2 mod 4 and w = (1+sqrt(-D))/2 for
/// D = 3 mod 4; w satisfies w^2 = tr*w - nm.
struct QuadRing {
    long D = 1;
    long tr = 0;   // trace of w
    long nm = 1;   // norm of w
    bool half_basis = false;

    QuadRing() = default;
    explicit QuadRing(long d) : D(d) {
        if (d <= 0) throw std::invalid_argument("QuadRing: D must be positive");
        for (long p = 2; p * p <= d; ++p)
            if (d % (p * p) == 0) throw std::invalid_argument("QuadRing: D must be squarefree");
        if (d % 4 == 3) { half_basis = true; tr = 1; nm = (1 + d) / 4; }
        else { half_basis = false; tr = 0; nm = d; }
    }

    long discriminant() const { return half_basis ? -D : -4 * D; }
    bool operator==(const QuadRing& o) const { return D == o.D; }
};

/// Element a + b*w of O_D, coordinates in the basis {1, w}.
struct QuadInt {
    Int a, b;
    QuadInt() : a(0), b(0) {}
    QuadInt(Int a_, Int b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit QuadInt(long x) : a(x), b(0) {}
    bool operator==(const QuadInt& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QuadInt& o) const { return !(*this == o); }
    bool is_zero() const { return a == 0 && b == 0; }
    QuadInt operator-() const { return {-a, -b}; }
};

inline QuadInt operator+(const QuadInt& x, const QuadInt& y) { return {x.a + y.a, x.b + y.b}; }
inline QuadInt operator-(const QuadInt& x, const QuadInt& y) { return {x.a - y.a, x.b - y.b}; }

inline QuadInt mul(const QuadRing& R, const QuadInt& x, const QuadInt& y) {
    // (a+bw)(c+dw) = ac - nm*bd + (ad+bc+tr*bd) w
    return {x.a * y.a - R.nm * x.b * y.b, x.a * y.b + x.b * y.a + R.tr * x.b * y.b};
}
inline QuadInt conj(const QuadRing& R, const QuadInt& x) { return {x.a + R.tr * x.b, -x.b}; }
inline Int norm(const QuadRing& R, const QuadInt& x) {
    return x.a * x.a + R.tr * x.a * x.b + R.nm * x.b * x.b;
}
inline Int trace(const QuadRing& R, const QuadInt& x) { return 2 * x.a + R.tr * x.b; }

inline QuadInt int_mul(const Int& k, const QuadInt& x) { return {k * x.a, k * x.b}; }

/// Element of F = Q(sqrt(-D)): num / den with den > 0, normalized.
struct QuadRat {
    QuadInt num;
    Int den;
    QuadRat() : num(), den(1) {}
    QuadRat(QuadInt n, Int d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    explicit QuadRat(const QuadInt& n) : num(n), den(1) {}
    explicit QuadRat(long x) : num(x), den(1) {}
    explicit QuadRat(const Rat& r)
        : num(QuadInt(Int(boost::multiprecision::numerator(r)), Int(0))),
          den(boost::multiprecision::denominator(r)) {}

    void normalize() {
        if (den == 0) throw std::domain_error("QuadRat: zero denominator");
        if (den < 0) { den = -den; num = -num; }
        Int g = gcd(gcd(abs_i(num.a), abs_i(num.b)), den);
        if (g > 1) { num.a /= g; num.b /= g; den /= g; }
    }
    bool is_zero() const { return num.is_zero(); }
    bool operator==(const QuadRat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const QuadRat& o) const { return !(*this == o); }
    QuadRat operator-() const { return {-num, den}; }
    bool is_integral() const { return den == 1; }
};

inline QuadRat operator+(const QuadRat& x, const QuadRat& y) {
    return {int_mul(y.den, x.num) + int_mul(x.den, y.num), x.den * y.den};
}
inline QuadRat operator-(const QuadRat& x, const QuadRat& y) {
    return {int_mul(y.den, x.num) - int_mul(x.den, y.num), x.den * y.den};
}
inline QuadRat mul(const QuadRing& R, const QuadRat& x, const QuadRat& y) {
    return {mul(R, x.num, y.num), x.den * y.den};
}
inline QuadRat conj(const QuadRing& R, const QuadRat& x) { return {conj(R, x.num), x.den}; }
inline QuadRat inv(const QuadRing& R, const QuadRat& x) {
    if (x.is_zero()) throw std::domain_error("QuadRat: division by zero");
    // 1/(n/d) = d * conj(n) / N(n)
    return {int_mul(x.den, conj(R, x.num)), norm(R, x.num)};
}
inline QuadRat div(const QuadRing& R, const QuadRat& x, const QuadRat& y) {
    return mul(R, x, inv(R, y));
}
inline Rat norm_q(const QuadRing& R, const QuadRat& x) {
    return Rat(norm(R, x.num), x.den * x.den);
}
/// Real part as a rational (Re(w) = tr/2).
inline Rat re_part(const QuadRing& R, const QuadRat& x) {
    return Rat(2 * x.num.a + R.tr * x.num.b, 2 * x.den);
}
/// Imaginary part divided by sqrt(D): Im(x) = im_coeff * sqrt(D).
inline Rat im_coeff(const QuadRing& R, const QuadRat& x) {
    return R.half_basis ? Rat(x.num.b, 2 * x.den) : Rat(x.num.b, x.den);
}

/// delta_D of the paper: sqrt(-D) for D=1,2 mod 4, sqrt(-D)/2 for D=3 mod 4.
/// Always Im(delta_D) = covol(O_D in C).
struct DeltaD {
    QuadRat value;   // exact element of F
    Rat im_coeff;    // Im(delta) = im_coeff * sqrt(D)
    Rat norm;        // |delta|^2
};

inline DeltaD delta_D(const QuadRing& R) {
    DeltaD d;
    if (R.half_basis) {
        // sqrt(-D) = 2w - 1, so delta = w - 1/2
        d.value = QuadRat(QuadInt(Int(-1), Int(2)), Int(2));
        d.im_coeff = Rat(1, 2);
        d.norm = Rat(R.D, 4);
    } else {
        d.value = QuadRat(QuadInt(Int(0), Int(1)));
        d.im_coeff = 1;
        d.norm = R.D;
    }
    return d;
}

inline std::string to_string(const QuadInt& x) {
    std::ostringstream os;
    if (x.b == 0) { os << x.a; return os.str(); }
    if (x.a != 0) os << x.a << (x.b > 0 ? "+" : "");
    if (x.b == 1) os << "w";
    else if (x.b == -1) os << "-w";
    else os << x.b << "*w";
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const QuadInt& x) { return os << to_string(x); }

/// Parse "a+b*w", "a+b*sqrt(-D)", "1+i" (D=1), "w", "3", "2-w", ...
inline QuadInt parse_quadint(const QuadRing& R, const std::string& s) {
    // tokenize into signed terms; each term: [int][*][symbol]
    QuadInt result(Int(0), Int(0));
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    if (i >= s.size()) throw std::invalid_argument("parse_quadint: empty");
    bool first = true;
    while (i < s.size()) {
        skip_ws();
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') { sign = s[i] == '-' ? -1 : 1; ++i; }
        else if (!first) throw std::invalid_argument("parse_quadint: expected +/-");
        skip_ws();
        Int coeff = 1;
        bool have_num = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::string num;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num += s[i++];
            coeff = Int(num);
            have_num = true;
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
        // symbol?
        bool have_sym = false;
        QuadInt sym;
        if (i < s.size()) {
            if (s[i] == 'w') { sym = QuadInt(Int(0), Int(1)); have_sym = true; ++i; }
            else if (s[i] == 'i' && R.D == 1) { sym = QuadInt(Int(0), Int(1)); have_sym = true; ++i; }
            else if (s.compare(i, 5, "sqrt(") == 0) {
                size_t close = s.find(')', i);
                if (close == std::string::npos) throw std::invalid_argument("parse_quadint: unbalanced sqrt(");
                std::string inner = s.substr(i + 5, close - i - 5);
                if (inner != "-" + std::to_string(R.D))
                    throw std::invalid_argument("parse_quadint: sqrt argument must be -D");
                // sqrt(-D) = w (D=1,2 mod 4) or 2w-1 (D=3 mod 4)
                sym = R.half_basis ? QuadInt(Int(-1), Int(2)) : QuadInt(Int(0), Int(1));
                have_sym = true;
                i = close + 1;
            }
        }
        if (!have_num && !have_sym) throw std::invalid_argument("parse_quadint: bad term in '" + s + "'");
        QuadInt term = have_sym ? int_mul(coeff, sym) : QuadInt(coeff, Int(0));
        if (sign < 0) term = -term;
        result = result + term;
        first = false;
        skip_ws();
    }
    return result;
}

} // namespace torsionlab
