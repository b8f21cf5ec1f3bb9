#include "modui/surgery.hpp"

#include <stdexcept>

namespace modui {

std::vector<World> subtree(const KripkeModel& m, World w) {
    if (!m.has_world(w)) throw std::out_of_range("unknown world " + std::to_string(w));
    return reachable(m, w);
}

namespace {

void require_tree(const KripkeModel& m) {
    if (!tree_root(m)) throw std::invalid_argument("model is not a tree");
}

CopyResult copy_subtree(const KripkeModel& m, World w) {
    CopyResult out{m, {}};
    const std::vector<World> sub = subtree(m, w);
    for (World u : sub) out.copy_of[u] = out.model.add_world();
    for (World u : sub) {
        for (World v : m.successors(u)) out.model.add_edge(out.copy_of[u], out.copy_of.at(v));
        for (const auto& a : m.atoms()) out.model.set_val(a, out.copy_of[u], m.val(a, u));
    }
    return out;
}

}  // namespace

CopyResult duplicate(const KripkeModel& m, World w) {
    require_tree(m);
    const auto parent = tree_parent(m, w);
    if (!parent) throw std::invalid_argument("cannot duplicate the subtree at the root");
    CopyResult out = copy_subtree(m, w);
    out.model.add_edge(*parent, out.copy_of.at(w));
    return out;
}

CopyResult clone_node(const KripkeModel& m, World w) {
    require_tree(m);
    if (!m.has_edge(w, w)) throw std::invalid_argument("cloning requires a reflexive world");
    CopyResult out = copy_subtree(m, w);
    out.model.add_edge(w, out.copy_of.at(w));
    return out;
}

ReplaceResult replace_subtree(const KripkeModel& m, World w, const KripkeModel& n, World n_root) {
    require_tree(m);
    if (!n.has_world(n_root)) throw std::invalid_argument("replacement root is not a world");
    ReplaceResult out;
    std::vector<char> removed(static_cast<std::size_t>(m.size()), 0);
    for (World u : subtree(m, w)) removed[u] = 1;
    out.from_m.assign(static_cast<std::size_t>(m.size()), std::nullopt);
    int count = 0;
    for (World u = 0; u < m.size(); ++u)
        if (!removed[u]) out.from_m[u] = count++;
    for (World x = 0; x < n.size(); ++x) out.from_n.push_back(count++);

    KripkeModel& r = out.model;
    r = KripkeModel(count);
    AtomSet atoms = m.atoms();
    for (const auto& a : n.atoms()) atoms.insert(a);
    for (const auto& a : atoms)
        for (World x = 0; x < count; ++x) r.set_val(a, x, false);
    for (World u = 0; u < m.size(); ++u) {
        if (removed[u]) continue;
        for (World v : m.successors(u)) {
            if (!removed[v])
                r.add_edge(*out.from_m[u], *out.from_m[v]);
            else if (v == w)
                r.add_edge(*out.from_m[u], out.from_n[n_root]);
        }
        for (const auto& a : m.atoms()) r.set_val(a, *out.from_m[u], m.val(a, u));
    }
    for (World x = 0; x < n.size(); ++x) {
        for (World y : n.successors(x)) r.add_edge(out.from_n[x], out.from_n[y]);
        for (const auto& a : n.atoms()) r.set_val(a, out.from_n[x], n.val(a, x));
    }
    if (m.root()) r.set_root(removed[*m.root()] ? out.from_n[n_root] : *out.from_m[*m.root()]);
    return out;
}

}  // namespace modui
