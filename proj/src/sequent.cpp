#include "modui/sequent.hpp"

#include <deque>
#include <functional>

#include "lexer.hpp"

namespace modui {

const char* to_string(Logic l) {
    switch (l) {
        case Logic::K: return "K";
        case Logic::D: return "D";
        case Logic::T: return "T";
    }
    return "?";
}

Logic parse_logic(const std::string& s) {
    if (s == "K") return Logic::K;
    if (s == "D") return Logic::D;
    if (s == "T") return Logic::T;
    throw std::invalid_argument("unknown logic '" + s + "'");
}

NestedSequent::NestedSequent() : nodes_(1) {}

NestedSequent::NestedSequent(std::vector<Formula> root_formulas) : nodes_(1) {
    nodes_[0].formulas = std::move(root_formulas);
}

std::optional<std::size_t> NestedSequent::parent(std::size_t node) const {
    if (node == 0) return std::nullopt;
    return nodes_[node].parent;
}

std::optional<std::size_t> NestedSequent::find(const Label& l) const {
    const auto& path = l.path();
    if (path.front() != 1) return std::nullopt;
    std::size_t cur = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const auto& ch = nodes_[cur].children;
        const auto k = static_cast<std::size_t>(path[i]);
        if (k > ch.size()) return std::nullopt;
        cur = ch[k - 1];
    }
    return cur;
}

std::size_t NestedSequent::node_of(const Label& l) const {
    auto n = find(l);
    if (!n) throw UnknownLabel(l);
    return *n;
}

bool NestedSequent::contains(std::size_t node, const Formula& f) const {
    for (const auto& g : nodes_[node].formulas)
        if (g == f) return true;
    return false;
}

void NestedSequent::push(std::size_t node, const Formula& f) { nodes_[node].formulas.push_back(f); }

bool NestedSequent::add(std::size_t node, const Formula& f) {
    if (contains(node, f)) return false;
    nodes_[node].formulas.push_back(f);
    return true;
}

std::size_t NestedSequent::add_child(std::size_t node) {
    Node n;
    n.parent = node;
    n.label = nodes_[node].label.child(static_cast<int>(nodes_[node].children.size()) + 1);
    nodes_.push_back(std::move(n));
    const std::size_t idx = nodes_.size() - 1;
    nodes_[node].children.push_back(idx);
    return idx;
}

std::vector<std::size_t> NestedSequent::preorder() const {
    std::vector<std::size_t> out;
    out.reserve(nodes_.size());
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        out.push_back(n);
        const auto& ch = nodes_[n].children;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

std::vector<std::size_t> NestedSequent::bfs() const {
    std::vector<std::size_t> out{0};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t c : nodes_[out[i]].children) out.push_back(c);
    return out;
}

AtomSet NestedSequent::vars() const {
    AtomSet out;
    for (const auto& n : nodes_)
        for (const auto& f : n.formulas) collect_vars(f, out);
    return out;
}

std::size_t NestedSequent::formula_count() const {
    std::size_t k = 0;
    for (const auto& n : nodes_) k += n.formulas.size();
    return k;
}

std::string NestedSequent::to_string() const {
    std::function<std::string(std::size_t)> rec = [&](std::size_t node) {
        std::string out;
        for (const auto& f : nodes_[node].formulas) {
            if (!out.empty()) out += ", ";
            out += modui::to_string(f);
        }
        for (std::size_t c : nodes_[node].children) {
            if (!out.empty()) out += ", ";
            const std::string inner = rec(c);
            out += inner.empty() ? "[ ]" : "[" + inner + "]";
        }
        return out;
    };
    return rec(0);
}

std::string NestedSequent::to_labeled_string() const {
    std::string out;
    for (std::size_t n : preorder())
        for (const auto& f : nodes_[n].formulas) {
            if (!out.empty()) out += ", ";
            out += nodes_[n].label.to_string() + ": " + modui::to_string(f);
        }
    return out;
}

bool operator==(const NestedSequent& a, const NestedSequent& b) {
    std::function<bool(std::size_t, std::size_t)> eq = [&](std::size_t x, std::size_t y) {
        const auto& nx = a.nodes_[x];
        const auto& ny = b.nodes_[y];
        if (nx.formulas != ny.formulas || nx.children.size() != ny.children.size()) return false;
        for (std::size_t i = 0; i < nx.children.size(); ++i)
            if (!eq(nx.children[i], ny.children[i])) return false;
        return true;
    };
    return eq(0, 0);
}

std::set<Label> labels(const NestedSequent& g) {
    std::set<Label> out;
    for (std::size_t n = 0; n < g.node_count(); ++n) out.insert(g.label(n));
    return out;
}

bool member(const NestedSequent& g, const Label& sigma, const Formula& f) {
    auto n = g.find(sigma);
    return n && g.contains(*n, f);
}

Formula interpret(const NestedSequent& g) {
    std::function<Formula(std::size_t)> rec = [&](std::size_t node) {
        std::vector<Formula> parts = g.formulas(node);
        for (std::size_t c : g.children(node)) parts.push_back(Formula::box(rec(c)));
        return Formula::disj_all(parts);
    };
    return rec(0);
}

NestedSequent insert(const NestedSequent& g, const Label& sigma, const Formula& f) {
    NestedSequent out = g;
    out.push(out.node_of(sigma), f);
    return out;
}

std::pair<NestedSequent, Label> new_child(const NestedSequent& g, const Label& sigma) {
    NestedSequent out = g;
    const std::size_t c = out.add_child(out.node_of(sigma));
    Label l = out.label(c);
    return {std::move(out), std::move(l)};
}

namespace detail {

void parse_sequent_items(TokenStream& ts, NestedSequent& g, std::size_t node) {
    if (ts.at(Tok::RBrack) || ts.at(Tok::Semi) || ts.at(Tok::End)) return;
    do {
        if (ts.accept(Tok::LBrack)) {
            const std::size_t c = g.add_child(node);
            parse_sequent_items(ts, g, c);
            ts.expect(Tok::RBrack);
        } else if (ts.at(Tok::Box) &&
                   (ts.peek(1).kind == Tok::Comma || ts.peek(1).kind == Tok::RBrack ||
                    ts.peek(1).kind == Tok::Semi || ts.peek(1).kind == Tok::End)) {
            ts.next();
            g.add_child(node);
        } else {
            g.push(node, ts.formula());
        }
    } while (ts.accept(Tok::Comma));
}

}  // namespace detail

NestedSequent parse_sequent(const std::string& text) {
    detail::TokenStream ts(text);
    NestedSequent g;
    detail::parse_sequent_items(ts, g, 0);
    if (!ts.at(detail::Tok::End))
        ts.fail(std::string("unexpected ") + detail::describe(ts.peek().kind));
    return g;
}

namespace {

bool has_clash(const std::vector<Formula>& fs, const Formula** witness) {
    for (const auto& f : fs) {
        if (!f.is(Op::Atom)) continue;
        for (const auto& g : fs)
            if (g.is(Op::NegAtom) && g.name() == f.name()) {
                if (witness) *witness = &f;
                return true;
            }
    }
    return false;
}

bool has_top(const std::vector<Formula>& fs) {
    for (const auto& f : fs)
        if (f.is(Op::Top)) return true;
    return false;
}

bool box_saturated(const NestedSequent& g, std::size_t node, const Formula& f) {
    for (std::size_t c : g.children(node))
        if (g.contains(c, f.body())) return true;
    return false;
}

}  // namespace

std::optional<NodeRedex> next_redex(const NestedSequent& g, Logic logic) {
    const auto order = g.preorder();
    for (std::size_t n : order) {
        const auto& fs = g.formulas(n);
        if (has_top(fs)) return NodeRedex{n, Formula::top(), rule::id_top};
        const Formula* w = nullptr;
        if (has_clash(fs, &w)) return NodeRedex{n, *w, rule::id_p};
    }
    for (std::size_t n : order)
        for (const auto& f : g.formulas(n))
            if (f.is(Op::Or) && !(g.contains(n, f.left()) && g.contains(n, f.right())))
                return NodeRedex{n, f, rule::disj};
    for (std::size_t n : order)
        for (const auto& f : g.formulas(n))
            if (f.is(Op::And) && !g.contains(n, f.left()) && !g.contains(n, f.right()))
                return NodeRedex{n, f, rule::conj};
    for (std::size_t n : order)
        for (const auto& f : g.formulas(n)) {
            if (!f.is(Op::Dia)) continue;
            for (std::size_t c : g.children(n))
                if (!g.contains(c, f.body())) return NodeRedex{n, f, rule::k, c};
        }
    if (logic != Logic::K) {
        for (std::size_t n : order)
            for (const auto& f : g.formulas(n)) {
                if (!f.is(Op::Dia)) continue;
                if (logic == Logic::D && g.children(n).empty()) return NodeRedex{n, f, rule::d};
                if (logic == Logic::T && !g.contains(n, f.body())) return NodeRedex{n, f, rule::t};
            }
    }
    for (std::size_t n : order)
        for (const auto& f : g.formulas(n))
            if (f.is(Op::Box) && !box_saturated(g, n, f)) return NodeRedex{n, f, rule::box};
    return std::nullopt;
}

SaturationReport saturation(const NestedSequent& g, Logic logic) {
    SaturationReport rep;
    auto add = [&](std::size_t n, const Formula& f, const char* r,
                   std::optional<Label> target = std::nullopt) {
        rep.redexes.push_back({g.label(n), f, r, std::move(target)});
    };
    for (std::size_t n : g.preorder()) {
        const auto& fs = g.formulas(n);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const Formula& f = fs[i];
            bool seen = false;
            for (std::size_t j = 0; j < i && !seen; ++j) seen = fs[j] == f;
            if (seen) continue;
            switch (f.op()) {
                case Op::Top: add(n, f, rule::id_top); break;
                case Op::Atom:
                    if (g.contains(n, Formula::neg_atom(f.name()))) add(n, f, rule::id_p);
                    break;
                case Op::Or:
                    if (!(g.contains(n, f.left()) && g.contains(n, f.right())))
                        add(n, f, rule::disj);
                    break;
                case Op::And:
                    if (!g.contains(n, f.left()) && !g.contains(n, f.right()))
                        add(n, f, rule::conj);
                    break;
                case Op::Box:
                    if (!box_saturated(g, n, f)) add(n, f, rule::box);
                    break;
                case Op::Dia:
                    for (std::size_t c : g.children(n))
                        if (!g.contains(c, f.body())) add(n, f, rule::k, g.label(c));
                    if (logic == Logic::D && g.children(n).empty()) add(n, f, rule::d);
                    if (logic == Logic::T && !g.contains(n, f.body())) add(n, f, rule::t);
                    break;
                default: break;
            }
        }
    }
    rep.saturated = rep.redexes.empty();
    return rep;
}

bool is_saturated(const NestedSequent& g, Logic logic) { return !next_redex(g, logic); }

std::vector<Formula> diamond_bodies(const NestedSequent& g, std::size_t node) {
    std::vector<Formula> out;
    for (const auto& f : g.formulas(node))
        if (f.is(Op::Dia)) {
            bool seen = false;
            for (const auto& o : out) seen = seen || o == f.body();
            if (!seen) out.push_back(f.body());
        }
    return out;
}

}  // namespace modui
