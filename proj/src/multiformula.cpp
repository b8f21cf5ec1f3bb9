#include "modui/multiformula.hpp"

#include <algorithm>
#include <stdexcept>

#include "lexer.hpp"

namespace modui {

Multiformula Multiformula::lab(Label sigma, Formula f) {
    auto n = std::make_shared<Node>();
    n->op = MOp::Lab;
    n->label = std::move(sigma);
    n->formula = std::move(f);
    return Multiformula(std::move(n));
}

Multiformula Multiformula::mand(Multiformula a, Multiformula b) {
    auto n = std::make_shared<Node>();
    n->op = MOp::And;
    n->leaves = a.leaves() + b.leaves();
    n->kids = {std::move(a), std::move(b)};
    return Multiformula(std::move(n));
}

Multiformula Multiformula::mor(Multiformula a, Multiformula b) {
    auto n = std::make_shared<Node>();
    n->op = MOp::Or;
    n->leaves = a.leaves() + b.leaves();
    n->kids = {std::move(a), std::move(b)};
    return Multiformula(std::move(n));
}

Multiformula Multiformula::mand_all(const std::vector<Multiformula>& items) {
    if (items.empty()) throw std::invalid_argument("empty multiformula conjunction");
    Multiformula acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) acc = mand(acc, items[i]);
    return acc;
}

Multiformula Multiformula::mor_all(const std::vector<Multiformula>& items) {
    if (items.empty()) throw std::invalid_argument("empty multiformula disjunction");
    Multiformula acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) acc = mor(acc, items[i]);
    return acc;
}

bool operator==(const Multiformula& a, const Multiformula& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    if (a.is(MOp::Lab)) return a.label() == b.label() && a.formula() == b.formula();
    return a.left() == b.left() && a.right() == b.right();
}

namespace {

template <class F>
void visit_leaves(const Multiformula& m, F&& f) {
    if (m.is(MOp::Lab)) {
        f(m);
        return;
    }
    visit_leaves(m.left(), f);
    visit_leaves(m.right(), f);
}

void flatten(const Multiformula& m, MOp op, std::vector<Multiformula>& out) {
    if (m.op() == op) {
        flatten(m.left(), op, out);
        flatten(m.right(), op, out);
    } else {
        out.push_back(m);
    }
}

}  // namespace

std::set<Label> mlabels(const Multiformula& m) {
    std::set<Label> out;
    visit_leaves(m, [&](const Multiformula& l) { out.insert(l.label()); });
    return out;
}

AtomSet mvars(const Multiformula& m) {
    AtomSet out;
    visit_leaves(m, [&](const Multiformula& l) { collect_vars(l.formula(), out); });
    return out;
}

Formula form(const Multiformula& m) {
    switch (m.op()) {
        case MOp::Lab: return m.formula();
        case MOp::And: return Formula::conj(form(m.left()), form(m.right()));
        case MOp::Or: return Formula::disj(form(m.left()), form(m.right()));
    }
    return m.formula();
}

namespace {

void print(const Multiformula& m, std::string& out) {
    if (m.is(MOp::Lab)) {
        out += m.label().to_string() + ": " + to_string(m.formula());
        return;
    }
    const bool is_and = m.is(MOp::And);
    auto operand = [&](const Multiformula& k, bool right) {
        // Under &&, an || operand needs parentheses; a right operand of the
        // same connective does too, to preserve the tree shape.
        const bool paren = (is_and && k.is(MOp::Or)) || (right && k.op() == m.op());
        if (paren) out += '(';
        print(k, out);
        if (paren) out += ')';
    };
    operand(m.left(), false);
    out += is_and ? " && " : " || ";
    operand(m.right(), true);
}

Multiformula parse_mor(detail::TokenStream& ts);

Multiformula parse_matom(detail::TokenStream& ts) {
    using detail::Tok;
    if (ts.at(Tok::LParen) && ts.peek(1).kind == Tok::Number) {
        ts.next();
        Multiformula m = parse_mor(ts);
        ts.expect(Tok::RParen);
        return m;
    }
    if (!ts.at(Tok::Number))
        ts.fail(std::string("expected a label, found ") + detail::describe(ts.peek().kind));
    const detail::Token t = ts.next();
    Label l;
    try {
        l = Label::parse(t.text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), t.pos);
    }
    ts.expect(Tok::Colon);
    return Multiformula::lab(std::move(l), ts.formula());
}

Multiformula parse_mand(detail::TokenStream& ts) {
    Multiformula acc = parse_matom(ts);
    while (ts.accept(detail::Tok::MAnd)) acc = Multiformula::mand(acc, parse_matom(ts));
    return acc;
}

Multiformula parse_mor(detail::TokenStream& ts) {
    Multiformula acc = parse_mand(ts);
    while (ts.accept(detail::Tok::MOr)) acc = Multiformula::mor(acc, parse_mand(ts));
    return acc;
}

}  // namespace

std::string to_string(const Multiformula& m) {
    std::string out;
    print(m, out);
    return out;
}

Multiformula parse_multiformula(const std::string& text) {
    detail::TokenStream ts(text);
    Multiformula m = parse_mor(ts);
    if (!ts.at(detail::Tok::End))
        ts.fail(std::string("unexpected ") + detail::describe(ts.peek().kind));
    return m;
}

namespace {

// Normal forms share one construction. In "outer-and" mode (SCNF) blocks
// are disjunctions; the absorbing entry is ⊤ and the neutral one ⊥. SDNF is
// the dual.
struct Dual {
    bool cnf;
    MOp outer() const { return cnf ? MOp::And : MOp::Or; }
    Op neutral() const { return cnf ? Op::Bot : Op::Top; }
    Op absorbing() const { return cnf ? Op::Top : Op::Bot; }
    Formula join(const Formula& a, const Formula& b) const {
        return cnf ? Formula::disj(a, b) : Formula::conj(a, b);
    }
    Formula unit() const { return cnf ? Formula::bot() : Formula::top(); }
};

// Blocks are kept unpadded (neutral entries omitted) during construction.
using Sparse = std::map<Label, Formula>;

bool trivial(const Sparse& b, const Dual& d) {
    for (const auto& [l, f] : b)
        if (f.is(d.absorbing())) return true;
    return false;
}

// a makes b redundant: every entry of a also occurs in b.
bool subsumes(const Sparse& a, const Sparse& b) {
    if (a.size() > b.size()) return false;
    for (const auto& [l, f] : a) {
        auto it = b.find(l);
        if (it == b.end() || !(it->second == f)) return false;
    }
    return true;
}

void normalize(std::vector<Sparse>& blocks, const Dual& d, bool simp) {
    if (!simp) return;
    std::vector<Sparse> kept;
    for (auto& b : blocks) {
        Sparse s;
        for (auto& [l, f] : b) {
            Formula g = simplify_formula(f);
            if (!g.is(d.neutral())) s.emplace(l, std::move(g));
        }
        if (!trivial(s, d)) kept.push_back(std::move(s));
    }
    std::sort(kept.begin(), kept.end(),
              [](const Sparse& a, const Sparse& b) { return a.size() < b.size(); });
    std::vector<Sparse> out;
    for (auto& b : kept) {
        bool redundant = false;
        for (const auto& o : out)
            if (subsumes(o, b)) {
                redundant = true;
                break;
            }
        if (!redundant) out.push_back(std::move(b));
    }
    blocks = std::move(out);
}

std::vector<Sparse> build(const Multiformula& m, const Dual& d, bool simp) {
    if (m.is(MOp::Lab)) {
        std::vector<Sparse> out{Sparse{{m.label(), m.formula()}}};
        normalize(out, d, simp);
        return out;
    }
    std::vector<Sparse> a = build(m.left(), d, simp);
    std::vector<Sparse> b = build(m.right(), d, simp);
    if (m.op() == d.outer()) {
        a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
        normalize(a, d, simp);
        return a;
    }
    std::vector<Sparse> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) {
            Sparse z = x;
            for (const auto& [l, f] : y) {
                auto it = z.find(l);
                if (it == z.end())
                    z.emplace(l, f);
                else
                    it->second = d.join(it->second, f);
            }
            out.push_back(std::move(z));
        }
    normalize(out, d, simp);
    return out;
}

std::vector<Block> blocks(const Multiformula& m, const std::set<Label>& L, const Dual& d,
                          bool simp) {
    if (L.empty()) throw std::invalid_argument("normal form over an empty label set");
    for (const auto& l : mlabels(m))
        if (!L.count(l))
            throw std::invalid_argument("label " + l.to_string() + " outside the target set");
    std::vector<Sparse> sparse = build(m, d, simp);
    std::vector<Block> out;
    if (sparse.empty()) {
        // Empty conjunction (SCNF) is true, empty disjunction (SDNF) false.
        Block b;
        for (const auto& l : L) b.emplace(l, d.unit());
        b.begin()->second = d.cnf ? Formula::top() : Formula::bot();
        out.push_back(std::move(b));
        return out;
    }
    for (auto& s : sparse) {
        Block b;
        for (const auto& l : L) {
            auto it = s.find(l);
            b.emplace(l, it == s.end() ? d.unit() : it->second);
        }
        out.push_back(std::move(b));
    }
    return out;
}

Multiformula assemble(const std::vector<Block>& bs, const Dual& d) {
    std::vector<Multiformula> outer;
    for (const auto& b : bs) {
        std::vector<Multiformula> inner;
        for (const auto& [l, f] : b) inner.push_back(Multiformula::lab(l, f));
        outer.push_back(d.cnf ? Multiformula::mor_all(inner) : Multiformula::mand_all(inner));
    }
    return d.cnf ? Multiformula::mand_all(outer) : Multiformula::mor_all(outer);
}

}  // namespace

std::vector<Block> scnf_blocks(const Multiformula& m, const std::set<Label>& L,
                               NormalFormOptions opt) {
    return blocks(m, L, Dual{true}, opt.simplify);
}

std::vector<Block> sdnf_blocks(const Multiformula& m, const std::set<Label>& L,
                               NormalFormOptions opt) {
    return blocks(m, L, Dual{false}, opt.simplify);
}

Multiformula to_scnf(const Multiformula& m, const std::set<Label>& L, NormalFormOptions opt) {
    return assemble(scnf_blocks(m, L, opt), Dual{true});
}

Multiformula to_sdnf(const Multiformula& m, const std::set<Label>& L, NormalFormOptions opt) {
    return assemble(sdnf_blocks(m, L, opt), Dual{false});
}

Multiformula simplify(const Multiformula& m) {
    if (m.is(MOp::Lab)) {
        Formula f = simplify_formula(m.formula());
        return f == m.formula() ? m : Multiformula::lab(m.label(), f);
    }
    const bool is_and = m.is(MOp::And);
    const Op absorbing = is_and ? Op::Bot : Op::Top;
    const Op unit = is_and ? Op::Top : Op::Bot;

    std::vector<Multiformula> raw;
    flatten(m, m.op(), raw);
    std::vector<Multiformula> parts;
    for (const auto& r : raw) flatten(simplify(r), m.op(), parts);

    // Merge same-label leaves into the position of the first occurrence.
    std::vector<Multiformula> items;
    std::map<Label, std::size_t> slot;
    for (const auto& p : parts) {
        if (!p.is(MOp::Lab)) {
            if (std::find(items.begin(), items.end(), p) == items.end()) items.push_back(p);
            continue;
        }
        auto it = slot.find(p.label());
        if (it == slot.end()) {
            slot.emplace(p.label(), items.size());
            items.push_back(p);
        } else {
            const Formula& prev = items[it->second].formula();
            Formula joined = is_and ? Formula::conj(prev, p.formula())
                                    : Formula::disj(prev, p.formula());
            items[it->second] = Multiformula::lab(p.label(), simplify_formula(joined));
        }
    }
    std::vector<Multiformula> kept;
    for (const auto& it : items) {
        if (it.is(MOp::Lab) && it.formula().is(absorbing)) return it;
        if (it.is(MOp::Lab) && it.formula().is(unit)) continue;
        kept.push_back(it);
    }
    if (kept.empty()) {
        const Label first = parts.front().is(MOp::Lab) ? parts.front().label()
                                                       : *mlabels(parts.front()).begin();
        return Multiformula::lab(first, is_and ? Formula::top() : Formula::bot());
    }
    return is_and ? Multiformula::mand_all(kept) : Multiformula::mor_all(kept);
}

}  // namespace modui
