// Reference semantics written directly from the definitions, sharing no code
// with the library beyond the formula and label datatypes.
#ifndef MODUI_TESTS_ORACLE_HPP
#define MODUI_TESTS_ORACLE_HPP

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "modui/formula.hpp"
#include "modui/label.hpp"
#include "modui/model.hpp"
#include "modui/multiformula.hpp"

namespace oracle {

struct Frame {
    int n = 0;
    std::vector<std::vector<char>> r;  // r[u][v]
    std::map<std::string, std::vector<char>> v;
};

inline bool eval(const Frame& m, int w, const modui::Formula& f) {
    using modui::Op;
    switch (f.op()) {
        case Op::Bot: return false;
        case Op::Top: return true;
        case Op::Atom: {
            auto it = m.v.find(f.name());
            return it != m.v.end() && it->second[w];
        }
        case Op::NegAtom: {
            auto it = m.v.find(f.name());
            return it == m.v.end() || !it->second[w];
        }
        case Op::And: return eval(m, w, f.left()) && eval(m, w, f.right());
        case Op::Or: return eval(m, w, f.left()) || eval(m, w, f.right());
        case Op::Box:
            for (int u = 0; u < m.n; ++u)
                if (m.r[w][u] && !eval(m, u, f.body())) return false;
            return true;
        case Op::Dia:
            for (int u = 0; u < m.n; ++u)
                if (m.r[w][u] && eval(m, u, f.body())) return true;
            return false;
    }
    return false;
}

using Interp = std::map<modui::Label, int>;

inline bool meval(const Frame& m, const Interp& i, const modui::Multiformula& mf) {
    using modui::MOp;
    if (mf.is(MOp::Lab)) return eval(m, i.at(mf.label()), mf.formula());
    if (mf.is(MOp::And)) return meval(m, i, mf.left()) && meval(m, i, mf.right());
    return meval(m, i, mf.left()) || meval(m, i, mf.right());
}

enum class Cls { K, D, T, S5 };

// Rooted trees given by parent[i] < i (every labelled shape, no pruning),
// or the total relation for S5, with every valuation over `atoms`.
inline std::vector<Frame> frames(Cls c, int max_worlds, const std::vector<std::string>& atoms) {
    std::vector<Frame> out;
    for (int n = 1; n <= max_worlds; ++n) {
        std::vector<std::vector<int>> parents;
        if (c == Cls::S5) {
            parents.push_back({});
        } else {
            std::vector<int> par(n, -1);
            std::function<void(int)> go = [&](int i) {
                if (i == n) {
                    parents.push_back(par);
                    return;
                }
                for (int p = 0; p < i; ++p) {
                    par[i] = p;
                    go(i + 1);
                }
            };
            go(1);
        }
        for (const auto& par : parents) {
            Frame f;
            f.n = n;
            f.r.assign(n, std::vector<char>(n, 0));
            if (c == Cls::S5) {
                for (auto& row : f.r) row.assign(n, 1);
            } else {
                std::vector<int> kids(n, 0);
                for (int i = 1; i < n; ++i) {
                    f.r[par[i]][i] = 1;
                    ++kids[par[i]];
                }
                for (int i = 0; i < n; ++i)
                    if (c == Cls::T || (c == Cls::D && kids[i] == 0)) f.r[i][i] = 1;
            }
            const int bits = n * static_cast<int>(atoms.size());
            for (long mask = 0; mask < (1L << bits); ++mask) {
                Frame g = f;
                for (std::size_t a = 0; a < atoms.size(); ++a) {
                    auto& col = g.v[atoms[a]];
                    col.assign(n, 0);
                    for (int w = 0; w < n; ++w)
                        col[w] = (mask >> (static_cast<int>(a) * n + w)) & 1;
                }
                out.push_back(std::move(g));
            }
        }
    }
    return out;
}

inline modui::KripkeModel to_model(const Frame& f) {
    modui::KripkeModel m(f.n);
    for (int u = 0; u < f.n; ++u)
        for (int v = 0; v < f.n; ++v)
            if (f.r[u][v]) m.add_edge(u, v);
    for (const auto& [a, col] : f.v)
        for (int w = 0; w < f.n; ++w) m.set_val(a, w, col[w]);
    return m;
}

// Interpretations of a prefix-closed label set with I(σ) R I(σ∗n). With
// `treelike` false every label may go anywhere.
inline void for_each_interp(const Frame& m, const std::set<modui::Label>& labels, bool treelike,
                            const std::function<void(const Interp&)>& fn) {
    std::vector<modui::Label> ls(labels.begin(), labels.end());  // parents sort first
    Interp i;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == ls.size()) {
            fn(i);
            return;
        }
        const auto& l = ls[k];
        for (int w = 0; w < m.n; ++w) {
            if (treelike && !l.is_root() && !m.r[i.at(l.parent())][w]) continue;
            i[l] = w;
            go(k + 1);
        }
        i.erase(l);
    };
    go(0);
}

// Classical validity over the atoms occurring, by truth table.
inline bool prop_valid(const modui::Formula& f) {
    const auto as = modui::vars(f);
    std::vector<std::string> atoms(as.begin(), as.end());
    for (long mask = 0; mask < (1L << atoms.size()); ++mask) {
        Frame w;
        w.n = 1;
        w.r = {{0}};
        for (std::size_t a = 0; a < atoms.size(); ++a) w.v[atoms[a]] = {char((mask >> a) & 1)};
        if (!eval(w, 0, f)) return false;
    }
    return true;
}

inline modui::Formula implies(const modui::Formula& a, const modui::Formula& b) {
    return modui::Formula::disj(modui::negate(a), b);
}

inline void flatten(const modui::Multiformula& m, modui::MOp op,
                    std::vector<modui::Multiformula>& out) {
    if (m.is(op)) {
        flatten(m.left(), op, out);
        flatten(m.right(), op, out);
    } else {
        out.push_back(m);
    }
}

// m is an `outer` combination of blocks of labeled leaves, and each block
// mentions every label of ls exactly once. On failure `bad` gets the block.
inline bool one_label_per_block(const modui::Multiformula& m, modui::MOp outer,
                                const std::set<modui::Label>& ls, std::string* bad = nullptr) {
    using modui::MOp;
    const MOp inner = outer == MOp::And ? MOp::Or : MOp::And;
    std::vector<modui::Multiformula> blocks;
    flatten(m, outer, blocks);
    for (const auto& b : blocks) {
        std::vector<modui::Multiformula> leaves;
        flatten(b, inner, leaves);
        std::multiset<modui::Label> seen;
        bool ok = true;
        for (const auto& l : leaves) {
            if (!l.is(MOp::Lab)) ok = false;
            else seen.insert(l.label());
        }
        ok = ok && seen.size() == ls.size() && std::set<modui::Label>(seen.begin(), seen.end()) == ls;
        if (!ok) {
            if (bad) *bad = modui::to_string(b);
            return false;
        }
    }
    return true;
}

inline modui::Multiformula random_multiformula(std::mt19937_64& rng,
                                               const std::vector<modui::Formula>& leaves,
                                               const std::vector<modui::Label>& ls, int size) {
    using modui::Multiformula;
    if (size <= 1) return Multiformula::lab(ls[rng() % ls.size()], leaves[rng() % leaves.size()]);
    const int left = 1 + static_cast<int>(rng() % (size - 1));
    auto a = random_multiformula(rng, leaves, ls, left);
    auto b = random_multiformula(rng, leaves, ls, size - left);
    return rng() % 2 ? Multiformula::mand(a, b) : Multiformula::mor(a, b);
}

}  // namespace oracle

#endif
