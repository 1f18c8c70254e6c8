#pragma once

#include "torsionlab/quad.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace torsionlab {

/// Nonzero ideal of O_D in Hermite normal form: Z-basis rows (A, 0), (B, C)
/// in the {1, w} coordinates, with A, C > 0, 0 <= B < A, and closure under
/// multiplication by w (verified at construction).
class IdealOD {
public:
    IdealOD(QuadRing ring, std::vector<QuadInt> gens) : ring_(ring), gens_(std::move(gens)) {
        std::vector<QuadInt> rows;
        for (const auto& g : gens_) {
            rows.push_back(g);
            rows.push_back(mul(ring_, g, QuadInt(Int(0), Int(1))));
        }
        hnf_from_rows(rows);
        if (A_ == 0 || C_ == 0) throw std::invalid_argument("IdealOD: zero ideal");
        verify_closure();
    }

    static IdealOD principal(const QuadRing& R, const QuadInt& g) { return IdealOD(R, {g}); }
    static IdealOD unit_ideal(const QuadRing& R) { return principal(R, QuadInt(1)); }

    /// Construct directly from an HNF basis (rows (A,0),(B,C)); validates closure.
    IdealOD(QuadRing ring, Int A, Int B, Int C) : ring_(ring), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {
        if (A_ <= 0 || C_ <= 0) throw std::invalid_argument("IdealOD: invalid HNF");
        B_ = fmod_i(B_, A_);
        verify_closure();
    }

    const QuadRing& ring() const { return ring_; }
    const Int& hnf_a() const { return A_; }
    const Int& hnf_b() const { return B_; }
    const Int& hnf_c() const { return C_; }
    const std::vector<QuadInt>& generators() const { return gens_; }

    Int norm() const { return A_ * C_; }

    /// Canonical representative of x modulo the ideal lattice.
    QuadInt reduce(const QuadInt& x) const {
        Int b = x.b, a = x.a;
        Int k = fdiv(b, C_);
        a -= k * B_;
        b -= k * C_;
        a = fmod_i(a, A_);
        return {a, b};
    }
    bool contains(const QuadInt& x) const { return reduce(x).is_zero(); }

    bool operator==(const IdealOD& o) const {
        return ring_ == o.ring_ && A_ == o.A_ && B_ == o.B_ && C_ == o.C_;
    }
    bool operator!=(const IdealOD& o) const { return !(*this == o); }

    /// x*b in this for all b in other's basis.
    bool divides(const IdealOD& multiple) const {
        return contains(QuadInt(multiple.A_, Int(0))) && contains(QuadInt(multiple.B_, multiple.C_));
    }

    IdealOD product(const IdealOD& o) const {
        std::vector<QuadInt> rows;
        const QuadInt b1[2] = {QuadInt(A_, Int(0)), QuadInt(B_, C_)};
        const QuadInt b2[2] = {QuadInt(o.A_, Int(0)), QuadInt(o.B_, o.C_)};
        for (const auto& x : b1)
            for (const auto& y : b2) {
                QuadInt p = mul(ring_, x, y);
                rows.push_back(p);
                rows.push_back(mul(ring_, p, QuadInt(Int(0), Int(1))));
            }
        IdealOD r(ring_, Int(1), Int(0), Int(1));
        r.hnf_from_rows(rows);
        r.gens_.clear();
        return r;
    }

    /// Colon ideal (this : (x)) = { y : x*y in this }.
    IdealOD colon(const QuadInt& x) const {
        if (x.is_zero()) throw std::invalid_argument("colon: zero element");
        // Solve: y such that M_x * y in lattice L; lattice of solutions of
        // M_x y = L z over Z, i.e. projection of ker[M_x | -L] onto y.
        // M_x: multiplication-by-x matrix on (1,w) coords (columns = images).
        Int m00 = x.a, m01 = -Int(ring_.nm) * x.b;
        Int m10 = x.b, m11 = x.a + Int(ring_.tr) * x.b;
        // rows of combined 4x... solve small: enumerate HNF approach:
        // candidate lattice = { y : M_x y = 0 mod L }: compute via residue scan of
        // the quotient O/L restricted to multiples: use kernel of the induced map
        // O/L' -> ... Simpler exact approach: the set is a sublattice of O
        // containing N(L)*O; find its HNF from generators: N*e1, N*e2 and all
        // solutions found by scanning y mod N in a reduced box would be O(N^2).
        // Do it algebraically instead: y in colon iff for lattice basis solve
        // integer kernel of 4x4 system [M_x | -L].
        // Build 4x4 integer matrix columns [y1 y2 z1 z2]:
        // rows: m00*y1 + m01*y2 - A*z1 - B*z2 = 0 ; m10*y1 + m11*y2 - 0 - C*z2 = 0
        // Kernel is rank 2; project to (y1, y2).
        std::array<std::array<Int, 4>, 2> Mrows = {{{m00, m01, -A_, -B_}, {m10, m11, Int(0), -C_}}};
        // kernel via row-HNF of transpose with transform
        std::array<std::array<Int, 2>, 4> At;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j) At[i][j] = Mrows[j][i];
        std::array<std::array<Int, 4>, 4> U{};
        for (int i = 0; i < 4; ++i) U[i][i] = 1;
        int r = 0;
        for (int c = 0; c < 2; ++c) {
            while (true) {
                int piv = -1;
                for (int i = r; i < 4; ++i)
                    if (At[i][c] != 0 && (piv < 0 || abs_i(At[i][c]) < abs_i(At[piv][c]))) piv = i;
                if (piv < 0) break;
                std::swap(At[r], At[piv]); std::swap(U[r], U[piv]);
                bool done = true;
                for (int i = r + 1; i < 4; ++i)
                    if (At[i][c] != 0) {
                        Int q = fdiv(At[i][c], At[r][c]);
                        for (int j = 0; j < 2; ++j) At[i][j] -= q * At[r][j];
                        for (int j = 0; j < 4; ++j) U[i][j] -= q * U[r][j];
                        if (At[i][c] != 0) done = false;
                    }
                if (done) { ++r; break; }
            }
        }
        std::vector<QuadInt> ygens;
        for (int i = 0; i < 4; ++i) {
            bool zero = At[i][0] == 0 && At[i][1] == 0;
            if (zero) ygens.emplace_back(U[i][0], U[i][1]);
        }
        if (ygens.empty()) throw std::logic_error("colon: empty kernel");
        return IdealOD(ring_, ygens);
    }

    IdealOD colon(const IdealOD& J) const {
        // (this : J) = intersection of (this : g) over Z-basis generators of J
        IdealOD r = colon(QuadInt(J.hnf_a(), Int(0)));
        IdealOD r2 = colon(QuadInt(J.hnf_b(), J.hnf_c()));
        return r.intersect(r2);
    }

    IdealOD intersect(const IdealOD& o) const {
        // x in both lattices: x = L1 u = L2 v; kernel of [L1 | -L2], project L1 u.
        std::array<std::array<Int, 4>, 2> Mrows = {{{A_, B_, -o.A_, -o.B_}, {Int(0), C_, Int(0), -o.C_}}};
        // note rows of lattice as columns: vector x = u1*(A,0)+u2*(B,C):
        // coords: x1 = A u1 + B u2, x2 = C u2. Set equal across.
        std::array<std::array<Int, 2>, 4> At;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j) At[i][j] = Mrows[j][i];
        std::array<std::array<Int, 4>, 4> U{};
        for (int i = 0; i < 4; ++i) U[i][i] = 1;
        int r = 0;
        for (int c = 0; c < 2; ++c) {
            while (true) {
                int piv = -1;
                for (int i = r; i < 4; ++i)
                    if (At[i][c] != 0 && (piv < 0 || abs_i(At[i][c]) < abs_i(At[piv][c]))) piv = i;
                if (piv < 0) break;
                std::swap(At[r], At[piv]); std::swap(U[r], U[piv]);
                bool done = true;
                for (int i = r + 1; i < 4; ++i)
                    if (At[i][c] != 0) {
                        Int q = fdiv(At[i][c], At[r][c]);
                        for (int j = 0; j < 2; ++j) At[i][j] -= q * At[r][j];
                        for (int j = 0; j < 4; ++j) U[i][j] -= q * U[r][j];
                        if (At[i][c] != 0) done = false;
                    }
                if (done) { ++r; break; }
            }
        }
        std::vector<QuadInt> xg;
        for (int i = 0; i < 4; ++i)
            if (At[i][0] == 0 && At[i][1] == 0) {
                // x = u1*(A,0) + u2*(B,C) with (u1,u2) = (U[i][0], U[i][1])
                xg.emplace_back(U[i][0] * A_ + U[i][1] * B_, U[i][1] * C_);
            }
        return IdealOD(ring_, xg);
    }

    std::string label() const {
        if (!gens_.empty()) {
            std::string s = "(";
            for (size_t i = 0; i < gens_.size(); ++i) {
                if (i) s += ",";
                s += to_string(gens_[i]);
            }
            return s + ")";
        }
        return "[" + A_.str() + "," + B_.str() + "," + C_.str() + "]";
    }

private:
    QuadRing ring_;
    std::vector<QuadInt> gens_;
    Int A_{0}, B_{0}, C_{1};

    void hnf_from_rows(std::vector<QuadInt> rows) {
        // eliminate w-coordinate to a single row, gcd the rest
        std::vector<QuadInt> work;
        for (auto& r : rows)
            if (!r.is_zero()) work.push_back(r);
        QuadInt cur(Int(0), Int(0));
        std::vector<Int> xs;
        for (auto& r : work) {
            if (r.b == 0) { xs.push_back(r.a); continue; }
            if (cur.b == 0) { cur = r; continue; }
            Int x, y;
            Int g = ext_gcd(cur.b, r.b, x, y);
            QuadInt nw(x * cur.a + y * r.a, g);
            Int ca = cur.b / g, cb = r.b / g;
            xs.push_back(cb * cur.a - ca * r.a);
            cur = nw;
        }
        Int A = 0;
        for (auto& x : xs) A = gcd(A, abs_i(x));
        if (cur.b == 0) { // no w-part at all: only possible for the zero ideal
            A_ = A; B_ = 0; C_ = 0;
            return;
        }
        if (cur.b < 0) cur = -cur;
        A_ = A;
        C_ = cur.b;
        B_ = A_ != 0 ? fmod_i(cur.a, A_) : cur.a;
    }

    void verify_closure() {
        // w*(A,0) = (0, A)... w*(a+bw) = -nm*b + (a+tr*b) w
        auto check = [&](const QuadInt& v) {
            QuadInt wv = mul(ring_, v, QuadInt(Int(0), Int(1)));
            // membership without calling contains (avoid recursion issues): same math
            Int b = wv.b, a = wv.a;
            Int k = fdiv(b, C_);
            a -= k * B_;
            b -= k * C_;
            if (b != 0 || fmod_i(a, A_) != 0)
                throw std::invalid_argument("IdealOD: basis not closed under w");
        };
        check(QuadInt(A_, Int(0)));
        check(QuadInt(B_, C_));
    }
};

/// Finite ring O_D / a with enumerable elements (canonical representatives).
class ResidueRing {
public:
    explicit ResidueRing(IdealOD I) : I_(std::move(I)) {}

    const IdealOD& ideal() const { return I_; }
    Int size() const { return I_.norm(); }

    QuadInt reduce(const QuadInt& x) const { return I_.reduce(x); }
    QuadInt add(const QuadInt& x, const QuadInt& y) const { return I_.reduce(x + y); }
    QuadInt mul(const QuadInt& x, const QuadInt& y) const {
        return I_.reduce(torsionlab::mul(I_.ring(), x, y));
    }

    std::vector<QuadInt> elements() const {
        std::vector<QuadInt> out;
        for (Int b = 0; b < I_.hnf_c(); ++b)
            for (Int a = 0; a < I_.hnf_a(); ++a) out.emplace_back(a, b);
        return out;
    }

    /// Units, found by scanning (desk-scale norms).
    std::vector<QuadInt> units() const {
        std::vector<QuadInt> out;
        for (const auto& x : elements()) {
            if (x.is_zero()) continue;
            // x unit iff x * y = 1 solvable; test via gcd of norm? scan:
            // cheap test: norm(x) coprime to norm of ideal is sufficient but not
            // necessary; do full scan only when needed.
            if (is_unit(x)) out.push_back(x);
        }
        return out;
    }
    bool is_unit(const QuadInt& x) const {
        // x is a unit mod I iff (x) + I = (1)
        std::vector<QuadInt> gens = {x, QuadInt(I_.hnf_a(), Int(0)), QuadInt(I_.hnf_b(), I_.hnf_c())};
        IdealOD J(I_.ring(), gens);
        return J.norm() == 1;
    }

private:
    IdealOD I_;
};

namespace detail {
inline std::vector<Int> prime_factors(Int n) {
    std::vector<Int> out;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}
} // namespace detail

/// Prime ideals of O_D above the rational prime p, via roots of the minimal
/// polynomial of w modulo p.
inline std::vector<IdealOD> primes_above(const QuadRing& R, const Int& p) {
    // min poly: x^2 - tr*x + nm
    std::vector<Int> roots;
    for (Int x = 0; x < p; ++x)
        if ((x * x - R.tr * x + R.nm) % p == 0) roots.push_back(x);
    std::vector<IdealOD> out;
    if (roots.empty()) {
        out.push_back(IdealOD::principal(R, QuadInt(p, Int(0)))); // inert, norm p^2
    } else if (roots.size() == 1) {
        out.emplace_back(R, std::vector<QuadInt>{QuadInt(p, Int(0)), QuadInt(-roots[0], Int(1))}); // ramified
    } else {
        for (const auto& r : roots)
            out.emplace_back(R, std::vector<QuadInt>{QuadInt(p, Int(0)), QuadInt(-r, Int(1))});
    }
    return out;
}

/// Factor a nonzero ideal into prime ideals with exponents; verified by
/// re-multiplication to HNF equality.
inline std::vector<std::pair<IdealOD, unsigned>> factor_ideal(const IdealOD& a) {
    std::vector<std::pair<IdealOD, unsigned>> out;
    const QuadRing& R = a.ring();
    Int n = a.norm();
    if (n == 1) return out;
    for (const Int& p : detail::prime_factors(n)) {
        for (const auto& P : primes_above(R, p)) {
            unsigned e = 0;
            IdealOD power = IdealOD::unit_ideal(R);
            while (true) {
                IdealOD next = power.product(P);
                if (!next.divides(a)) break;
                power = next;
                ++e;
            }
            if (e > 0) out.emplace_back(P, e);
        }
    }
    IdealOD prod = IdealOD::unit_ideal(R);
    for (const auto& [P, e] : out)
        for (unsigned i = 0; i < e; ++i) prod = prod.product(P);
    if (prod != a) throw std::logic_error("factor_ideal: re-multiplication mismatch");
    return out;
}

/// [Γ(D) : Γ(a)] = N(a)^3 * prod over primes p | a of (1 - 1/N(p)^2), exact.
inline Int congruence_index(const IdealOD& a) {
    Int n = a.norm();
    if (n == 1) return 1;
    Rat idx = Rat(n) * n * n;
    for (const auto& [P, e] : factor_ideal(a)) {
        (void)e;
        Int np2 = P.norm() * P.norm();
        idx *= Rat(np2 - 1, np2);
    }
    if (boost::multiprecision::denominator(idx) != 1)
        throw std::logic_error("congruence_index: non-integral");
    Int result(boost::multiprecision::numerator(idx));
    if (result < n) throw std::logic_error("congruence_index: below ideal norm");
    return result;
}

} // namespace torsionlab
