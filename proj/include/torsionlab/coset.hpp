#pragma once

#include "torsionlab/presentation.hpp"
#include "torsionlab/subgroup.hpp"

#include <deque>
#include <unordered_map>

namespace torsionlab {

/// Right-coset table of a congruence subgroup, built from the permutation
/// action on residue data (closure is automatic, no coset collapsing needed).
struct CosetTable {
    int index = 0;
    // action[g][i] = coset i * generator (g+1); inverse_action likewise
    std::vector<std::vector<int>> action;
    std::vector<std::vector<int>> inverse_action;
    std::vector<Word> transversal; // Schreier representative words, transversal[0] = {}

    int apply(int coset, int signed_gen) const {
        return signed_gen > 0 ? action[signed_gen - 1][coset]
                              : inverse_action[-signed_gen - 1][coset];
    }
    int apply_word(int coset, const Word& w) const {
        for (int s : w) coset = apply(coset, s);
        return coset;
    }
    bool consistent() const {
        for (size_t g = 0; g < action.size(); ++g)
            for (int i = 0; i < index; ++i)
                if (inverse_action[g][action[g][i]] != i) return false;
        return true;
    }
};

namespace detail {

struct CosetState {
    // principal part: reduced matrix mod base ideal (if any);
    // hecke part: canonical projective pair mod ideal (if any)
    std::string key;
};

class StateMachine {
public:
    StateMachine(const SubgroupSpec& S) : S_(S), R_(S.ring()) {
        if (S.kind == SubgroupSpec::Kind::principal) mat_mod_ = S.ideal;
        if (S.kind == SubgroupSpec::Kind::hecke_intersect) mat_mod_ = *S.base;
        if (S.kind != SubgroupSpec::Kind::principal) {
            proj_mod_ = S.ideal;
            units_ = ResidueRing(*proj_mod_).units();
        }
    }

    struct State {
        SL2Mat mat;                 // reduced mod mat_mod (when present)
        std::pair<QuadInt, QuadInt> row; // canonical projective pair (when present)
    };

    State initial() const {
        State s;
        s.mat = sl2_identity();
        if (mat_mod_) s.mat = reduce_mat(s.mat);
        if (proj_mod_) s.row = canonical_row({QuadInt(0), QuadInt(1)});
        return s;
    }

    State step(const State& st, const SL2Mat& g) const {
        State out;
        if (mat_mod_) out.mat = reduce_mat(mul(R_, st.mat, g));
        if (proj_mod_) {
            QuadInt c = proj_mod_->reduce(mul(R_, st.row.first, g.a) + mul(R_, st.row.second, g.c));
            QuadInt d = proj_mod_->reduce(mul(R_, st.row.first, g.b) + mul(R_, st.row.second, g.d));
            out.row = canonical_row({c, d});
        }
        return out;
    }

    std::string key(const State& st) const {
        std::string k;
        if (mat_mod_)
            k += to_string(st.mat.a) + ";" + to_string(st.mat.b) + ";" + to_string(st.mat.c) +
                 ";" + to_string(st.mat.d);
        if (proj_mod_) k += "|" + to_string(st.row.first) + ";" + to_string(st.row.second);
        return k;
    }

private:
    const SubgroupSpec& S_;
    QuadRing R_;
    std::optional<IdealOD> mat_mod_;
    std::optional<IdealOD> proj_mod_;
    std::vector<QuadInt> units_;

    SL2Mat reduce_mat(const SL2Mat& M) const {
        return {mat_mod_->reduce(M.a), mat_mod_->reduce(M.b), mat_mod_->reduce(M.c),
                mat_mod_->reduce(M.d)};
    }
    std::pair<QuadInt, QuadInt> canonical_row(const std::pair<QuadInt, QuadInt>& rw) const {
        std::pair<QuadInt, QuadInt> best = rw;
        std::string bestkey;
        bool first = true;
        for (const auto& u : units_) {
            std::pair<QuadInt, QuadInt> cand = {proj_mod_->reduce(mul(R_, u, rw.first)),
                                                proj_mod_->reduce(mul(R_, u, rw.second))};
            std::string k = to_string(cand.first) + ";" + to_string(cand.second);
            if (first || k < bestkey) { best = cand; bestkey = std::move(k); first = false; }
        }
        return best;
    }
};

} // namespace detail

/// Build the coset table of S in SL(2, O_D) acting through the presentation's
/// generators. For principal S the index equals the congruence index formula
/// (strong approximation, verified against the brute-force oracle in tests).
inline CosetTable coset_table(const Presentation& P, const SubgroupSpec& S) {
    detail::StateMachine sm(S);
    auto st0 = sm.initial();
    std::unordered_map<std::string, int> labels;
    std::vector<detail::StateMachine::State> states;
    labels[sm.key(st0)] = 0;
    states.push_back(st0);
    std::vector<Word> transversal = {{}};
    int g = P.generator_count();
    std::vector<std::vector<int>> act(g), inv_act(g);
    std::vector<SL2Mat> gens = P.generators;
    std::vector<SL2Mat> invs;
    for (const auto& m : gens) invs.push_back(inv(m));

    // BFS discovery order equals label order, so tables grow by push_back.
    for (int i = 0; i < static_cast<int>(states.size()); ++i) {
        for (int k = 0; k < g; ++k) {
            for (int dir = 0; dir < 2; ++dir) {
                auto nst = sm.step(states[i], dir == 0 ? gens[k] : invs[k]);
                std::string key = sm.key(nst);
                auto [it, inserted] = labels.try_emplace(key, static_cast<int>(states.size()));
                if (inserted) {
                    states.push_back(nst);
                    Word w = transversal[i];
                    w.push_back(dir == 0 ? k + 1 : -(k + 1));
                    transversal.push_back(std::move(w));
                }
                (dir == 0 ? act[k] : inv_act[k]).push_back(it->second);
            }
        }
    }
    CosetTable T;
    T.index = static_cast<int>(states.size());
    T.action = std::move(act);
    T.inverse_action = std::move(inv_act);
    T.transversal = std::move(transversal);
    if (!T.consistent()) throw std::logic_error("coset_table: inconsistent table");
    return T;
}

} // namespace torsionlab
