#include "modui/bisimulation.hpp"

#include <map>

namespace modui {

std::vector<std::vector<char>> greatest_bisimulation(const KripkeModel& a, const KripkeModel& b,
                                                     const std::string& p) {
    const int na = a.size();
    const int n = na + b.size();
    AtomSet atoms = a.atoms();
    for (const auto& x : b.atoms()) atoms.insert(x);
    atoms.erase(p);

    auto succ = [&](int u) -> std::vector<int> {
        if (u < na) return a.successors(u);
        std::vector<int> out;
        for (World v : b.successors(u - na)) out.push_back(v + na);
        return out;
    };

    std::vector<int> block(static_cast<std::size_t>(n));
    {
        std::map<std::string, int> ids;
        for (int u = 0; u < n; ++u) {
            std::string key;
            for (const auto& x : atoms) key += (u < na ? a.val(x, u) : b.val(x, u - na)) ? '1' : '0';
            block[u] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
        }
    }
    for (std::size_t count = 0;;) {
        std::map<std::pair<int, std::set<int>>, int> ids;
        std::vector<int> next(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u) {
            std::set<int> sig;
            for (int v : succ(u)) sig.insert(block[v]);
            next[u] = ids.emplace(std::make_pair(block[u], std::move(sig)),
                                  static_cast<int>(ids.size()))
                          .first->second;
        }
        block = std::move(next);
        if (ids.size() == count) break;
        count = ids.size();
    }
    std::vector<std::vector<char>> out(static_cast<std::size_t>(na),
                                       std::vector<char>(static_cast<std::size_t>(b.size()), 0));
    for (int u = 0; u < na; ++u)
        for (int v = 0; v < b.size(); ++v) out[u][v] = block[u] == block[v + na];
    return out;
}

std::optional<Bisimulation> find_bisim(const KripkeModel& a, World w, const KripkeModel& b,
                                       World w2, const std::string& p) {
    const auto z = greatest_bisimulation(a, b, p);
    if (!z.at(w).at(w2)) return std::nullopt;
    Bisimulation out{p, {}};
    for (World u : reachable(a, w))
        for (World v : reachable(b, w2))
            if (z[u][v]) out.pairs.emplace(u, v);
    return out;
}

bool is_bisimulation(const KripkeModel& a, const KripkeModel& b,
                     const std::set<std::pair<World, World>>& z, const std::string& p) {
    if (z.empty()) return false;
    AtomSet atoms = a.atoms();
    for (const auto& x : b.atoms()) atoms.insert(x);
    atoms.erase(p);
    for (const auto& [u, v] : z) {
        if (!a.has_world(u) || !b.has_world(v)) return false;
        for (const auto& x : atoms)
            if (a.val(x, u) != b.val(x, v)) return false;
        for (World u2 : a.successors(u)) {
            bool ok = false;
            for (World v2 : b.successors(v)) ok = ok || z.count({u2, v2});
            if (!ok) return false;
        }
        for (World v2 : b.successors(v)) {
            bool ok = false;
            for (World u2 : a.successors(u)) ok = ok || z.count({u2, v2});
            if (!ok) return false;
        }
    }
    return true;
}

bool bisimilar_interpretations(const KripkeModel& a, const Interpretation& i,
                               const KripkeModel& b, const Interpretation& j,
                               const std::string& p) {
    if (i.size() != j.size()) return false;
    const auto z = greatest_bisimulation(a, b, p);
    for (const auto& [l, w] : i) {
        auto it = j.find(l);
        if (it == j.end() || !z.at(w).at(it->second)) return false;
    }
    return true;
}

}  // namespace modui
