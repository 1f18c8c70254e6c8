#pragma once

#include "torsionlab/ideal.hpp"
#include "torsionlab/sl2.hpp"

#include <optional>

namespace torsionlab {

/// Congruence subgroup spec: principal Γ(a), Hecke Γ_0(a), or the
/// intersection Γ'_0(a) = Γ_0(a) ∩ Γ(b) with a torsion-free principal base.
struct SubgroupSpec {
    enum class Kind { principal, hecke, hecke_intersect };
    Kind kind = Kind::principal;
    IdealOD ideal;
    std::optional<IdealOD> base; // for hecke_intersect

    SubgroupSpec(Kind k, IdealOD a) : kind(k), ideal(std::move(a)) {}
    SubgroupSpec(Kind k, IdealOD a, IdealOD b) : kind(k), ideal(std::move(a)), base(std::move(b)) {}

    const QuadRing& ring() const { return ideal.ring(); }

    std::string label() const {
        switch (kind) {
            case Kind::principal: return "principal:" + ideal.label();
            case Kind::hecke: return "hecke:" + ideal.label();
            case Kind::hecke_intersect:
                return "hecke-intersect:" + ideal.label() + ":base=" + base->label();
        }
        return "?";
    }
};

inline bool is_member_principal(const IdealOD& a, const SL2Mat& M) {
    return a.contains(M.a - QuadInt(1)) && a.contains(M.d - QuadInt(1)) && a.contains(M.b) &&
           a.contains(M.c);
}

inline bool is_member(const SL2Mat& M, const SubgroupSpec& S) {
    switch (S.kind) {
        case SubgroupSpec::Kind::principal: return is_member_principal(S.ideal, M);
        case SubgroupSpec::Kind::hecke: return S.ideal.contains(M.c);
        case SubgroupSpec::Kind::hecke_intersect:
            return S.ideal.contains(M.c) && is_member_principal(*S.base, M);
    }
    return false;
}

/// Parse "principal:1+i", "hecke:2", "hecke-intersect:1+i:base=2+i".
inline SubgroupSpec parse_subgroup(const QuadRing& R, const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("subgroup spec: missing ':'");
    std::string kind = s.substr(0, colon);
    std::string rest = s.substr(colon + 1);
    if (kind == "principal" || kind == "hecke") {
        IdealOD a = IdealOD::principal(R, parse_quadint(R, rest));
        return SubgroupSpec(kind == "principal" ? SubgroupSpec::Kind::principal
                                                : SubgroupSpec::Kind::hecke,
                            std::move(a));
    }
    if (kind == "hecke-intersect") {
        auto colon2 = rest.find(':');
        if (colon2 == std::string::npos || rest.compare(colon2 + 1, 5, "base=") != 0)
            throw std::invalid_argument("subgroup spec: expected hecke-intersect:<a>:base=<b>");
        IdealOD a = IdealOD::principal(R, parse_quadint(R, rest.substr(0, colon2)));
        IdealOD b = IdealOD::principal(R, parse_quadint(R, rest.substr(colon2 + 6)));
        return SubgroupSpec(SubgroupSpec::Kind::hecke_intersect, std::move(a), std::move(b));
    }
    throw std::invalid_argument("subgroup spec: unknown kind '" + kind + "'");
}

/// Sufficient torsion-freeness gate: a nontrivial torsion element of SL(2,C)
/// has integral trace t with t - 2 in {-4, -3, -2, -1}; an element of Γ(a)
/// has trace = 2 mod a, so torsion is excluded when a divides none of
/// (1), (2), (3), (4).
inline bool torsion_free_certified(const IdealOD& a) {
    for (long k : {1L, 2L, 3L, 4L})
        if (a.contains(QuadInt(k))) return false;
    return true;
}

} // namespace torsionlab
