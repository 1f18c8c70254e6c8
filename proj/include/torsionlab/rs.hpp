#pragma once

#include "torsionlab/coset.hpp"

#include <unordered_set>

namespace torsionlab {

namespace detail {

/// Canonical form of a relator up to cyclic rotation and inversion, for
/// deduplication of rewritten relators.
inline Word cyclic_canonical(Word w) {
    w = free_reduce(w);
    // cyclically reduce
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
    if (w.empty()) return w;
    auto best_rotation = [](const Word& v) {
        Word best = v;
        Word cur = v;
        for (size_t i = 1; i < v.size(); ++i) {
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            if (cur < best) best = cur;
        }
        return best;
    };
    Word b1 = best_rotation(w);
    Word b2 = best_rotation(inverse_word(w));
    return std::min(b1, b2);
}

} // namespace detail

/// Reidemeister-Schreier presentation of the subgroup from the coset table:
/// Schreier generators x(i, g) = t_i g t_{i·g}^{-1} with tree-edge generators
/// pruned, relators rewritten at every coset, then deduplicated up to cyclic
/// rotation/inversion.
inline Presentation reidemeister_schreier(const Presentation& P, const CosetTable& T) {
    const int n = T.index;
    const int g = P.generator_count();
    if (n == 1) return P;

    // tree edges: (i, +k) is a tree edge iff transversal[i]+[k] == transversal[target]
    auto is_tree_edge = [&](int i, int k) {
        int j = T.action[k - 1][i];
        const Word& wi = T.transversal[i];
        const Word& wj = T.transversal[j];
        if (wj.size() == wi.size() + 1 && std::equal(wi.begin(), wi.end(), wj.begin()) &&
            wj.back() == k)
            return true;
        // or the reverse: (j, -k) is the tree step
        if (wi.size() == wj.size() + 1 && std::equal(wj.begin(), wj.end(), wi.begin()) &&
            wi.back() == -k)
            return true;
        return false;
    };

    std::vector<std::vector<int>> gen_index(g, std::vector<int>(n, 0)); // 1-based, 0 = pruned
    Presentation sub(P.ring);
    for (int i = 0; i < n; ++i)
        for (int k = 1; k <= g; ++k) {
            if (is_tree_edge(i, k)) continue;
            int j = T.action[k - 1][i];
            Word w = T.transversal[i];
            w.push_back(k);
            Word back = inverse_word(T.transversal[j]);
            w.insert(w.end(), back.begin(), back.end());
            SL2Mat mat = evaluate_word(P.ring, P.generators, w);
            sub.generators.push_back(mat);
            sub.names.push_back("x" + std::to_string(sub.generators.size()));
            gen_index[k - 1][i] = static_cast<int>(sub.generators.size());
        }

    std::unordered_set<std::string> seen;
    for (const auto& rel : P.relators) {
        for (int i = 0; i < n; ++i) {
            Word out;
            int c = i;
            for (int s : rel) {
                if (s > 0) {
                    int idx = gen_index[s - 1][c];
                    if (idx) out.push_back(idx);
                    c = T.action[s - 1][c];
                } else {
                    int c2 = T.inverse_action[-s - 1][c];
                    int idx = gen_index[-s - 1][c2];
                    if (idx) out.push_back(-idx);
                    c = c2;
                }
            }
            if (c != i) throw std::logic_error("reidemeister_schreier: relator does not close");
            Word canon = detail::cyclic_canonical(out);
            if (canon.empty()) continue;
            std::string key;
            for (int s : canon) key += std::to_string(s) + ",";
            if (seen.insert(std::move(key)).second) sub.relators.push_back(std::move(canon));
        }
    }
    return sub;
}

/// Rewrite a word of the ambient group that lies in the subgroup into the
/// subgroup's Schreier generators (same conventions as reidemeister_schreier;
/// requires the same presentation/table pair).
struct SchreierRewriter {
    const Presentation& parent;
    const CosetTable& table;
    std::vector<std::vector<int>> gen_index; // as in reidemeister_schreier

    SchreierRewriter(const Presentation& P, const CosetTable& T) : parent(P), table(T) {
        const int n = T.index;
        const int g = P.generator_count();
        gen_index.assign(g, std::vector<int>(n, 0));
        int count = 0;
        auto is_tree_edge = [&](int i, int k) {
            int j = T.action[k - 1][i];
            const Word& wi = T.transversal[i];
            const Word& wj = T.transversal[j];
            if (wj.size() == wi.size() + 1 && std::equal(wi.begin(), wi.end(), wj.begin()) &&
                wj.back() == k)
                return true;
            if (wi.size() == wj.size() + 1 && std::equal(wj.begin(), wj.end(), wi.begin()) &&
                wi.back() == -k)
                return true;
            return false;
        };
        for (int i = 0; i < n; ++i)
            for (int k = 1; k <= g; ++k) {
                if (is_tree_edge(i, k)) continue;
                gen_index[k - 1][i] = ++count;
            }
    }

    /// Word must start and end at coset `from` (default 0 = the subgroup).
    Word rewrite(const Word& w, int from = 0) const {
        Word out;
        int c = from;
        for (int s : w) {
            if (s > 0) {
                int idx = gen_index[s - 1][c];
                if (idx) out.push_back(idx);
                c = table.action[s - 1][c];
            } else {
                int c2 = table.inverse_action[-s - 1][c];
                int idx = gen_index[-s - 1][c2];
                if (idx) out.push_back(-idx);
                c = c2;
            }
        }
        if (c != from) throw std::invalid_argument("SchreierRewriter: word not in subgroup");
        return free_reduce(out);
    }
};

} // namespace torsionlab
