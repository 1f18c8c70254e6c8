#pragma once

#include "torsionlab/sl2.hpp"

#include <map>
#include <string>

namespace torsionlab {

/// Finite presentation of a group of SL(2, O_D) matrices: generator matrices
/// plus defining relators as words. Every relator must evaluate to the exact
/// identity matrix (checked by validate()).
struct Presentation {
    QuadRing ring;
    std::vector<std::string> names;
    std::vector<SL2Mat> generators;
    std::vector<Word> relators;

    explicit Presentation(QuadRing r) : ring(std::move(r)) {}

    int generator_count() const { return static_cast<int>(generators.size()); }

    bool validate(std::string* why = nullptr) const {
        for (const auto& g : generators)
            if (!is_unimodular(ring, g)) {
                if (why) *why = "generator not in SL2";
                return false;
            }
        for (const auto& r : relators)
            if (evaluate_word(ring, generators, r) != sl2_identity()) {
                if (why) *why = "relator does not evaluate to the identity";
                return false;
            }
        return true;
    }
};

namespace detail {

inline Word parse_word(const std::vector<std::string>& names, const std::string& s) {
    Word w;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        bool neg = tok[0] == '-';
        std::string nm = neg ? tok.substr(1) : tok;
        auto it = std::find(names.begin(), names.end(), nm);
        if (it == names.end()) throw std::invalid_argument("parse_word: unknown generator " + nm);
        int idx = static_cast<int>(it - names.begin()) + 1;
        w.push_back(neg ? -idx : idx);
    }
    return w;
}

struct PslData {
    std::vector<std::string> names;
    std::vector<const char*> relators; // evaluate to +/-Id in SL
};

inline const std::map<long, PslData>& psl_tables() {
    // Swan-type presentations of PSL(2, O_D); completeness cross-checked
    // against the cusp-rank identity for torsion-free congruence subgroups.
    static const std::map<long, PslData> tables = {
        {1, {{"a", "t", "u", "l"},
             {"a a", "l l", "a l a l", "t l t l", "u l u l",
              "t a t a t a", "u a l u a l u a l", "t u -t -u"}}},
        {2, {{"a", "t", "u"},
             {"a a", "t a t a t a", "a -u a u a -u a u", "t u -t -u"}}},
        {3, {{"a", "t", "u", "l"},
             {"a a", "l l l", "t a t a t a", "a l a l",
              "-l t l u", "-l u l u -t", "t u -t -u"}}},
        {7, {{"a", "t", "u"},
             {"a a", "t a t a t a", "a t -u a u a t -u a u", "t u -t -u"}}},
        {11, {{"a", "t", "u"},
              {"a a", "t a t a t a", "a t -u a u a t -u a u a t -u a u", "t u -t -u"}}},
    };
    return tables;
}

} // namespace detail

inline SL2Mat translation(const QuadInt& x) {
    return {QuadInt(1), x, QuadInt(0), QuadInt(1)};
}

/// Built-in presentation of SL(2, O_D), D in {1, 2, 3, 7, 11}.
/// Obtained from the PSL presentation by the central lift with z := a^2:
/// relators a^4, [a^2, g], and r (resp. r a^-2) for PSL relators evaluating
/// to Id (resp. -Id).
inline Presentation builtin_presentation(long D) {
    const auto& tables = detail::psl_tables();
    auto it = tables.find(D);
    if (it == tables.end())
        throw std::invalid_argument("builtin_presentation: unsupported D (use 1, 2, 3, 7, 11)");
    QuadRing R(D);
    Presentation P(R);
    P.names = it->second.names;
    for (const auto& nm : P.names) {
        if (nm == "a") P.generators.push_back({QuadInt(0), QuadInt(-1), QuadInt(1), QuadInt(0)});
        else if (nm == "t") P.generators.push_back(translation(QuadInt(1)));
        else if (nm == "u") P.generators.push_back(translation(QuadInt(Int(0), Int(1))));
        else if (nm == "l") {
            if (D == 1) // diag(-i, i)
                P.generators.push_back({QuadInt(Int(0), Int(-1)), QuadInt(0), QuadInt(0), QuadInt(Int(0), Int(1))});
            else // D == 3: diag(w, 1-w) = diag(w, wbar)
                P.generators.push_back({QuadInt(Int(0), Int(1)), QuadInt(0), QuadInt(0), QuadInt(Int(1), Int(-1))});
        } else
            throw std::logic_error("builtin_presentation: unexpected generator name");
    }
    int ai = static_cast<int>(std::find(P.names.begin(), P.names.end(), "a") - P.names.begin()) + 1;
    P.relators.push_back(Word{ai, ai, ai, ai}); // z^2 with z = a^2
    for (int g = 1; g <= P.generator_count(); ++g) {
        if (g == ai) continue;
        P.relators.push_back(Word{ai, ai, g, -ai, -ai, -g}); // [a^2, g]
    }
    for (const char* rs : it->second.relators) {
        Word w = detail::parse_word(P.names, rs);
        SL2Mat val = evaluate_word(R, P.generators, w);
        if (val == sl2_identity()) {
            P.relators.push_back(w);
        } else if (val == sl2_neg_identity()) {
            Word lifted = w;
            lifted.push_back(-ai);
            lifted.push_back(-ai);
            lifted = free_reduce(lifted);
            if (!lifted.empty()) P.relators.push_back(std::move(lifted));
        } else {
            throw std::logic_error("builtin_presentation: relator fails in SL2");
        }
    }
    std::string why;
    if (!P.validate(&why)) throw std::logic_error("builtin_presentation: " + why);
    return P;
}

} // namespace torsionlab
