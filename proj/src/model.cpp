#include "modui/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace modui {

const char* to_string(ModelClass c) {
    switch (c) {
        case ModelClass::K: return "K";
        case ModelClass::D: return "D";
        case ModelClass::T: return "T";
        case ModelClass::S5: return "S5";
    }
    return "?";
}

ModelClass parse_model_class(const std::string& s) {
    if (s == "K") return ModelClass::K;
    if (s == "D") return ModelClass::D;
    if (s == "T") return ModelClass::T;
    if (s == "S5") return ModelClass::S5;
    throw std::invalid_argument("unknown model class '" + s + "'");
}

ModelClass model_class(Logic l) {
    switch (l) {
        case Logic::K: return ModelClass::K;
        case Logic::D: return ModelClass::D;
        case Logic::T: return ModelClass::T;
    }
    return ModelClass::K;
}

KripkeModel::KripkeModel(int worlds) : succ_(static_cast<std::size_t>(worlds)) {}

void KripkeModel::check(World w) const {
    if (!has_world(w)) throw std::out_of_range("unknown world " + std::to_string(w));
}

World KripkeModel::add_world() {
    succ_.emplace_back();
    for (auto& [a, bits] : val_) bits.push_back(false);
    return size() - 1;
}

void KripkeModel::add_edge(World u, World v) {
    check(u);
    check(v);
    auto& s = succ_[u];
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
}

void KripkeModel::remove_edge(World u, World v) {
    check(u);
    auto& s = succ_[u];
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it != s.end() && *it == v) s.erase(it);
}

bool KripkeModel::has_edge(World u, World v) const {
    check(u);
    const auto& s = succ_[u];
    return std::binary_search(s.begin(), s.end(), v);
}

std::vector<std::pair<World, World>> KripkeModel::edges() const {
    std::vector<std::pair<World, World>> out;
    for (World u = 0; u < size(); ++u)
        for (World v : succ_[u]) out.emplace_back(u, v);
    return out;
}

bool KripkeModel::val(const std::string& atom, World w) const {
    check(w);
    auto it = val_.find(atom);
    return it != val_.end() && it->second[w];
}

void KripkeModel::set_val(const std::string& atom, World w, bool value) {
    check(w);
    auto it = val_.find(atom);
    if (it == val_.end()) it = val_.emplace(atom, std::vector<bool>(succ_.size(), false)).first;
    it->second[w] = value;
}

AtomSet KripkeModel::atoms() const {
    AtomSet out;
    for (const auto& [a, bits] : val_) out.insert(a);
    return out;
}

bool operator==(const KripkeModel& a, const KripkeModel& b) {
    if (a.succ_ != b.succ_ || a.root_ != b.root_) return false;
    AtomSet atoms = a.atoms();
    for (const auto& x : b.atoms()) atoms.insert(x);
    for (const auto& x : atoms)
        for (World w = 0; w < a.size(); ++w)
            if (a.val(x, w) != b.val(x, w)) return false;
    return true;
}

std::vector<char> extension(const KripkeModel& m, const Formula& f) {
    const std::size_t n = static_cast<std::size_t>(m.size());
    switch (f.op()) {
        case Op::Bot: return std::vector<char>(n, 0);
        case Op::Top: return std::vector<char>(n, 1);
        case Op::Atom:
        case Op::NegAtom: {
            std::vector<char> out(n);
            auto it = m.valuation().find(f.name());
            for (std::size_t w = 0; w < n; ++w) {
                const bool v = it != m.valuation().end() && it->second[w];
                out[w] = f.is(Op::Atom) ? v : !v;
            }
            return out;
        }
        case Op::And:
        case Op::Or: {
            std::vector<char> a = extension(m, f.left());
            std::vector<char> b = extension(m, f.right());
            for (std::size_t w = 0; w < n; ++w) a[w] = f.is(Op::And) ? (a[w] && b[w]) : (a[w] || b[w]);
            return a;
        }
        case Op::Box:
        case Op::Dia: {
            const std::vector<char> b = extension(m, f.body());
            const bool box = f.is(Op::Box);
            std::vector<char> out(n);
            for (std::size_t w = 0; w < n; ++w) {
                bool r = box;
                for (World v : m.successors(static_cast<World>(w)))
                    if (static_cast<bool>(b[v]) != box) {
                        r = !box;
                        break;
                    }
                out[w] = r;
            }
            return out;
        }
    }
    return {};
}

bool satisfies(const KripkeModel& m, World w, const Formula& f) {
    if (!m.has_world(w)) throw std::out_of_range("unknown world " + std::to_string(w));
    switch (f.op()) {
        case Op::Bot: return false;
        case Op::Top: return true;
        case Op::Atom: return m.val(f.name(), w);
        case Op::NegAtom: return !m.val(f.name(), w);
        case Op::And: return satisfies(m, w, f.left()) && satisfies(m, w, f.right());
        case Op::Or: return satisfies(m, w, f.left()) || satisfies(m, w, f.right());
        case Op::Box:
            for (World v : m.successors(w))
                if (!satisfies(m, v, f.body())) return false;
            return true;
        case Op::Dia:
            for (World v : m.successors(w))
                if (satisfies(m, v, f.body())) return true;
            return false;
    }
    return false;
}

bool valid_in(const KripkeModel& m, const Formula& f) {
    for (char c : extension(m, f))
        if (!c) return false;
    return true;
}

bool is_interpretation(const KripkeModel& m, const NestedSequent& g, const Interpretation& i) {
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        auto it = i.find(g.label(n));
        if (it == i.end() || !m.has_world(it->second)) return false;
        if (auto p = g.parent(n)) {
            const World pw = i.at(g.label(*p));
            if (!m.has_edge(pw, it->second)) return false;
        }
    }
    return true;
}

bool for_each_interpretation(const KripkeModel& m, const NestedSequent& g,
                             const std::function<bool(const Interpretation&)>& fn) {
    const std::vector<std::size_t> order = g.preorder();
    std::vector<World> image(g.node_count(), 0);
    Interpretation cur;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == order.size()) return fn(cur);
        const std::size_t n = order[k];
        auto assign = [&](World w) {
            image[n] = w;
            cur[g.label(n)] = w;
            return rec(k + 1);
        };
        if (auto p = g.parent(n)) {
            for (World w : m.successors(image[*p]))
                if (!assign(w)) return false;
        } else {
            for (World w = 0; w < m.size(); ++w)
                if (!assign(w)) return false;
        }
        return true;
    };
    return rec(0);
}

bool holds_sequent(const KripkeModel& m, const Interpretation& i, const NestedSequent& g) {
    if (!is_interpretation(m, g, i))
        throw std::invalid_argument("not a treelike interpretation of the sequent");
    for (std::size_t n = 0; n < g.node_count(); ++n) {
        const World w = i.at(g.label(n));
        for (const auto& f : g.formulas(n))
            if (satisfies(m, w, f)) return true;
    }
    return false;
}

bool meval(const KripkeModel& m, const Interpretation& i, const Multiformula& mf) {
    switch (mf.op()) {
        case MOp::Lab: {
            auto it = i.find(mf.label());
            if (it == i.end())
                throw std::invalid_argument("interpretation not suitable: label " +
                                            mf.label().to_string() + " unmapped");
            return satisfies(m, it->second, mf.formula());
        }
        case MOp::And: return meval(m, i, mf.left()) && meval(m, i, mf.right());
        case MOp::Or: return meval(m, i, mf.left()) || meval(m, i, mf.right());
    }
    return false;
}

std::optional<World> tree_parent(const KripkeModel& m, World w) {
    std::optional<World> out;
    for (World u = 0; u < m.size(); ++u)
        if (u != w && m.has_edge(u, w)) {
            if (out) return std::nullopt;
            out = u;
        }
    return out;
}

std::vector<World> reachable(const KripkeModel& m, World w) {
    std::vector<World> out{w};
    std::vector<char> seen(static_cast<std::size_t>(m.size()), 0);
    seen[w] = 1;
    for (std::size_t k = 0; k < out.size(); ++k)
        for (World v : m.successors(out[k]))
            if (!seen[v]) {
                seen[v] = 1;
                out.push_back(v);
            }
    return out;
}

bool is_leaf(const KripkeModel& m, World w) {
    for (World v : m.successors(w))
        if (v != w) return false;
    return true;
}

std::optional<World> tree_root(const KripkeModel& m) {
    if (m.size() == 0) return std::nullopt;
    std::vector<int> indeg(static_cast<std::size_t>(m.size()), 0);
    for (const auto& [u, v] : m.edges())
        if (u != v) ++indeg[v];
    std::optional<World> root;
    for (World w = 0; w < m.size(); ++w) {
        if (indeg[w] > 1) return std::nullopt;
        if (indeg[w] == 0) {
            if (root) return std::nullopt;
            root = w;
        }
    }
    if (!root) return std::nullopt;
    if (m.root() && *m.root() != *root) return std::nullopt;
    if (static_cast<int>(reachable(m, *root).size()) != m.size()) return std::nullopt;
    return root;
}

bool validate_class(const KripkeModel& m, ModelClass c) {
    if (m.size() == 0) return false;
    if (c == ModelClass::S5) {
        for (World u = 0; u < m.size(); ++u)
            if (static_cast<int>(m.successors(u).size()) != m.size()) return false;
        return true;
    }
    if (!tree_root(m)) return false;
    for (World w = 0; w < m.size(); ++w) {
        const bool loop = m.has_edge(w, w);
        switch (c) {
            case ModelClass::K:
                if (loop) return false;
                break;
            case ModelClass::T:
                if (!loop) return false;
                break;
            case ModelClass::D:
                if (loop != is_leaf(m, w)) return false;
                break;
            case ModelClass::S5: break;
        }
    }
    return true;
}

KripkeModel generated_submodel(const KripkeModel& m, World w, std::vector<World>* old_of_new) {
    const std::vector<World> keep = reachable(m, w);
    std::map<World, World> idx;
    for (std::size_t k = 0; k < keep.size(); ++k) idx[keep[k]] = static_cast<World>(k);
    KripkeModel out(static_cast<int>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        for (World v : m.successors(keep[k])) out.add_edge(static_cast<World>(k), idx.at(v));
        for (const auto& a : m.atoms()) out.set_val(a, static_cast<World>(k), m.val(a, keep[k]));
    }
    out.set_root(0);
    if (old_of_new) *old_of_new = keep;
    return out;
}

namespace {

// AHU-style canonical string of a labeled rooted tree.
std::string canon(const std::vector<std::vector<int>>& kids, const std::vector<std::string>& lab,
                  int w) {
    std::vector<std::string> parts;
    for (int c : kids[w]) parts.push_back(canon(kids, lab, c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(" + lab[w];
    for (auto& s : parts) out += s;
    return out + ")";
}

}  // namespace

std::vector<KripkeModel> enumerate_models(ModelClass c, int max_worlds, const AtomSet& atoms,
                                          int min_worlds) {
    std::vector<KripkeModel> out;
    const std::vector<std::string> names(atoms.begin(), atoms.end());
    const int na = static_cast<int>(names.size());
    for (int n = std::max(1, min_worlds); n <= max_worlds; ++n) {
        const long long nval = 1LL << (n * na);
        std::set<std::string> seen;
        // Parent arrays with parent[i] < i cover every rooted tree shape.
        std::vector<int> parent(static_cast<std::size_t>(n), -1);
        std::function<void(int)> shapes = [&](int i) {
            if (c != ModelClass::S5 && i < n) {
                for (int p = 0; p < i; ++p) {
                    parent[i] = p;
                    shapes(i + 1);
                }
                return;
            }
            std::vector<std::vector<int>> kids(static_cast<std::size_t>(n));
            if (c != ModelClass::S5)
                for (int j = 1; j < n; ++j) kids[parent[j]].push_back(j);
            for (long long bits = 0; bits < nval; ++bits) {
                std::vector<std::string> lab(static_cast<std::size_t>(n));
                for (int w = 0; w < n; ++w)
                    for (int a = 0; a < na; ++a)
                        lab[w] += ((bits >> (w * na + a)) & 1) ? '1' : '0';
                std::string key;
                if (c == ModelClass::S5) {
                    std::vector<std::string> s = lab;
                    std::sort(s.begin(), s.end());
                    for (auto& x : s) key += x + ",";
                } else {
                    key = canon(kids, lab, 0);
                }
                if (!seen.insert(key).second) continue;
                KripkeModel m(n);
                for (const auto& a : names)
                    for (int w = 0; w < n; ++w) m.set_val(a, w, false);
                for (int w = 0; w < n; ++w)
                    for (int a = 0; a < na; ++a)
                        if ((bits >> (w * na + a)) & 1) m.set_val(names[a], w, true);
                if (c == ModelClass::S5) {
                    for (int u = 0; u < n; ++u)
                        for (int v = 0; v < n; ++v) m.add_edge(u, v);
                } else {
                    m.set_root(0);
                    for (int j = 1; j < n; ++j) m.add_edge(parent[j], j);
                    for (int w = 0; w < n; ++w) {
                        if (c == ModelClass::T || (c == ModelClass::D && kids[w].empty()))
                            m.add_edge(w, w);
                    }
                }
                out.push_back(std::move(m));
            }
        };
        shapes(1);
    }
    return out;
}

std::string model_to_json(const KripkeModel& m) {
    nlohmann::ordered_json j;
    std::vector<int> worlds;
    for (World w = 0; w < m.size(); ++w) worlds.push_back(w);
    j["worlds"] = worlds;
    nlohmann::ordered_json rel = nlohmann::ordered_json::array();
    for (const auto& [u, v] : m.edges()) rel.push_back({u, v});
    j["rel"] = rel;
    nlohmann::ordered_json val = nlohmann::ordered_json::object();
    for (const auto& a : m.atoms()) {
        std::vector<int> ws;
        for (World w = 0; w < m.size(); ++w)
            if (m.val(a, w)) ws.push_back(w);
        val[a] = ws;
    }
    j["val"] = val;
    if (m.root()) j["root"] = *m.root();
    return j.dump();
}

KripkeModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed model JSON: ") + e.what());
    }
    try {
        std::vector<int> worlds = j.at("worlds").get<std::vector<int>>();
        std::map<int, World> idx;
        for (int w : worlds) idx.emplace(w, static_cast<World>(idx.size()));
        auto at = [&](int w) {
            auto it = idx.find(w);
            if (it == idx.end()) throw std::invalid_argument("unknown world " + std::to_string(w));
            return it->second;
        };
        KripkeModel m(static_cast<int>(idx.size()));
        if (j.contains("rel"))
            for (const auto& e : j.at("rel")) m.add_edge(at(e.at(0).get<int>()), at(e.at(1).get<int>()));
        if (j.contains("val"))
            for (const auto& [a, ws] : j.at("val").items()) {
                if (!is_atom_name(a)) throw std::invalid_argument("invalid atom name '" + a + "'");
                for (World w = 0; w < m.size(); ++w) m.set_val(a, w, false);
                for (const auto& w : ws) m.set_val(a, at(w.get<int>()), true);
            }
        if (j.contains("root") && !j.at("root").is_null()) m.set_root(at(j.at("root").get<int>()));
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed model JSON: ") + e.what());
    }
}

std::string model_to_dot(const KripkeModel& m, const Interpretation* i) {
    std::ostringstream os;
    os << "digraph model {\n";
    for (World w = 0; w < m.size(); ++w) {
        std::string label = "w" + std::to_string(w);
        std::string facts;
        for (const auto& a : m.atoms())
            if (m.val(a, w)) facts += (facts.empty() ? "" : ",") + a;
        if (!facts.empty()) label += "\\n" + facts;
        if (i)
            for (const auto& [l, v] : *i)
                if (v == w) label += "\\n@" + l.to_string();
        os << "  w" << w << " [label=\"" << label << "\"";
        if (m.root() && *m.root() == w) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (const auto& [u, v] : m.edges()) os << "  w" << u << " -> w" << v << ";\n";
    os << "}\n";
    return os.str();
}

std::string to_string(const Interpretation& i) {
    std::string out = "{";
    for (const auto& [l, w] : i) {
        if (out.size() > 1) out += ", ";
        out += l.to_string() + "->" + std::to_string(w);
    }
    return out + "}";
}

}  // namespace modui
