#pragma once

#include "torsionlab/qreal.hpp"
#include "torsionlab/rs.hpp"

namespace torsionlab {

/// One cusp class of a congruence subgroup: a representative point of P^1(F),
/// the conjugator B_P in SL(2, O_D) with B_P·η = ∞, the exact parabolic
/// lattice (an ideal of O_D), and the cosets in the orbit.
struct CuspData {
    std::pair<QuadInt, QuadInt> representative; // η = (a : c)
    SL2Mat conjugator;                          // B_P
    Word conjugator_inv_word;                   // word for B_P^{-1} = transversal rep
    IdealOD parabolic_lattice;
    std::vector<int> orbit;
};

/// Parabolic lattice { ω in O_D : B_P^{-1} u_ω B_P in S }, solved exactly via
/// colon ideals: the conjugated unipotent is
/// [[1 - p r ω, p² ω], [-r² ω, 1 + p r ω]] for t = B_P^{-1} = [[p,q],[r,s]].
inline IdealOD parabolic_lattice(const SubgroupSpec& S, const SL2Mat& t) {
    const QuadRing& R = S.ring();
    const QuadInt &p = t.a, &r = t.c;
    auto colon_or_unit = [&](const IdealOD& I, const QuadInt& x) {
        if (x.is_zero()) return IdealOD::unit_ideal(R); // no condition
        return I.colon(x);
    };
    switch (S.kind) {
        case SubgroupSpec::Kind::principal: {
            IdealOD l1 = colon_or_unit(S.ideal, mul(R, p, p));
            IdealOD l2 = colon_or_unit(S.ideal, mul(R, r, r));
            IdealOD l3 = colon_or_unit(S.ideal, mul(R, p, r));
            return l1.intersect(l2).intersect(l3);
        }
        case SubgroupSpec::Kind::hecke:
            return colon_or_unit(S.ideal, mul(R, r, r));
        case SubgroupSpec::Kind::hecke_intersect: {
            IdealOD lh = colon_or_unit(S.ideal, mul(R, r, r));
            IdealOD l1 = colon_or_unit(*S.base, mul(R, p, p));
            IdealOD l2 = colon_or_unit(*S.base, mul(R, r, r));
            IdealOD l3 = colon_or_unit(*S.base, mul(R, p, r));
            return lh.intersect(l1).intersect(l2).intersect(l3);
        }
    }
    throw std::logic_error("parabolic_lattice: bad kind");
}

/// Generators of the stabilizer of ∞ in SL(2, O_D): translations t, u, the
/// center -Id, and the unit diagonal for D in {1, 3}.
inline std::vector<Word> stabilizer_words(const Presentation& P) {
    auto find = [&](const char* nm) {
        auto it = std::find(P.names.begin(), P.names.end(), std::string(nm));
        return it == P.names.end() ? 0 : static_cast<int>(it - P.names.begin()) + 1;
    };
    int a = find("a"), t = find("t"), u = find("u"), l = find("l");
    std::vector<Word> out = {{t}, {u}, {a, a}}; // z = a^2 = -Id
    if (l) out.push_back({l});
    return out;
}

/// Cusp classes of S: orbits of the full ∞-stabilizer acting on cosets.
inline std::vector<CuspData> cusps(const Presentation& P, const SubgroupSpec& S,
                                   const CosetTable& T) {
    std::vector<Word> stab = stabilizer_words(P);
    std::vector<std::vector<int>> perms;
    for (const auto& w : stab) {
        std::vector<int> perm(T.index);
        for (int i = 0; i < T.index; ++i) perm[i] = T.apply_word(i, w);
        perms.push_back(std::move(perm));
    }
    std::vector<int> comp(T.index, -1);
    std::vector<CuspData> out;
    for (int i = 0; i < T.index; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> orbit = {i};
        comp[i] = static_cast<int>(out.size());
        for (size_t q = 0; q < orbit.size(); ++q)
            for (const auto& perm : perms) {
                int j = perm[orbit[q]];
                if (comp[j] < 0) { comp[j] = comp[i]; orbit.push_back(j); }
            }
        SL2Mat ti = evaluate_word(P.ring, P.generators, T.transversal[i]);
        CuspData cd{{ti.a, ti.c}, inv(ti), inverse_word(T.transversal[i]),
                    parabolic_lattice(S, ti), std::move(orbit)};
        out.push_back(std::move(cd));
    }
    return out;
}

/// Verify Γ_S ∩ P = Γ_S ∩ N_P at this cusp: no conjugated upper-triangular
/// element with nontrivial unit diagonal passes membership. Exact, by scanning
/// the residue classes of the translation part.
inline bool cusp_stabilizer_is_unipotent(const SubgroupSpec& S, const CuspData& cusp) {
    const QuadRing& R = S.ring();
    std::vector<QuadInt> units = {QuadInt(-1)};
    if (R.D == 1) units.push_back(QuadInt(Int(0), Int(1)));                       // i
    if (R.D == 3) units.push_back(QuadInt(Int(0), Int(1)));                       // w
    // close under multiplication to get all nontrivial units
    std::vector<QuadInt> all;
    std::vector<QuadInt> frontier = units;
    all.push_back(QuadInt(1));
    while (!frontier.empty()) {
        QuadInt v = frontier.back();
        frontier.pop_back();
        if (std::find(all.begin(), all.end(), v) != all.end()) continue;
        all.push_back(v);
        for (const auto& u : units) frontier.push_back(mul(R, v, u));
    }
    IdealOD modulus = S.ideal;
    if (S.base) modulus = modulus.intersect(*S.base);
    ResidueRing res(modulus);
    const SL2Mat t = inv(cusp.conjugator); // B_P^{-1}
    for (const auto& v : all) {
        if (v == QuadInt(1)) continue;
        // vinv = conj for unit: v * vbar = N(v) = 1
        QuadInt vinv = conj(R, v);
        for (const auto& x : res.elements()) {
            SL2Mat upper{v, x, QuadInt(0), vinv};
            SL2Mat conj_mat = mul(R, mul(R, t, upper), inv(t));
            if (is_member(conj_mat, S)) return false;
        }
    }
    return true;
}

/// Shape of a rank-2 lattice in C after unimodular rescaling: τ in the
/// standard fundamental domain, computed by exact Gauss reduction in F.
struct LatticeShape {
    QuadRat tau;            // exact value in F
    double tau_re = 0, tau_im = 0;
    QReal covolume_before_rescale;
};

inline LatticeShape unimodular_shape(const QuadRing& R, QuadRat g1, QuadRat g2) {
    // covolume = |Im(conj(g1) g2)|
    auto im_of = [&](const QuadRat& x) { return im_coeff(R, x); }; // Im = coeff * sqrt(D)
    QuadRat cross = mul(R, conj(R, g1), g2);
    Rat cv = im_of(cross);
    if (cv == 0) throw std::invalid_argument("unimodular_shape: degenerate lattice");
    if (cv < 0) std::swap(g1, g2), cv = -cv;
    // Gauss reduction
    while (true) {
        if (norm_q(R, g1) > norm_q(R, g2)) std::swap(g1, g2);
        // mu = Re(conj(g1) g2)/|g1|^2, shift g2 by -round(mu) g1
        Rat mu = re_part(R, mul(R, conj(R, g1), g2)) / norm_q(R, g1);
        Int num = boost::multiprecision::numerator(mu), den = boost::multiprecision::denominator(mu);
        Int k = fdiv(2 * num + den, 2 * den); // round to nearest
        if (k == 0) break;
        QuadRat shift = mul(R, QuadRat(Rat(k)), g1);
        g2 = g2 - shift;
        if (norm_q(R, g1) <= norm_q(R, g2)) break;
    }
    QuadRat tau = div(R, g2, g1);
    if (im_coeff(R, tau) < 0) tau = -tau;
    // fundamental domain boundary conventions
    while (re_part(R, tau) > Rat(1, 2)) tau = tau - QuadRat(1);
    while (re_part(R, tau) < Rat(-1, 2)) tau = tau + QuadRat(1);
    if (norm_q(R, tau) == 1 && re_part(R, tau) < 0) {
        tau = -conj(R, tau); // reflect to Re >= 0 on the unit circle
    }
    if (re_part(R, tau) == Rat(-1, 2)) tau = tau + QuadRat(1);
    LatticeShape s;
    s.tau = tau;
    s.tau_re = to_double(re_part(R, tau));
    s.tau_im = to_double(im_coeff(R, tau)) * std::sqrt(static_cast<double>(R.D));
    s.covolume_before_rescale = QReal(Rat(0), cv, R.D);
    return s;
}

inline LatticeShape unimodular_shape(const IdealOD& L) {
    const QuadRing& R = L.ring();
    return unimodular_shape(R, QuadRat(QuadInt(L.hnf_a(), Int(0))), QuadRat(QuadInt(L.hnf_b(), L.hnf_c())));
}

} // namespace torsionlab
