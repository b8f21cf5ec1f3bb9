#include "modui/formula.hpp"

#include <cassert>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace modui {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Op op, std::string name, std::vector<Formula> kids) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->hash = mix(0xcbf29ce484222325ULL, static_cast<std::size_t>(op));
    if (!name.empty()) node->hash = mix(node->hash, std::hash<std::string>{}(name));
    for (const auto& k : kids) {
        node->hash = mix(node->hash, k.hash());
        node->size += k.size();
        node->depth = std::max(node->depth, k.modal_depth());
    }
    if (op == Op::Box || op == Op::Dia) node->depth += 1;
    node->name = std::move(name);
    node->kids = std::move(kids);
    return Formula(std::move(node));
}

Formula Formula::bot() {
    static const Formula f = make(Op::Bot, "", {});
    return f;
}

Formula Formula::top() {
    static const Formula f = make(Op::Top, "", {});
    return f;
}

Formula Formula::atom(std::string name) {
    if (!is_atom_name(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
    return make(Op::Atom, std::move(name), {});
}

Formula Formula::neg_atom(std::string name) {
    if (!is_atom_name(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
    return make(Op::NegAtom, std::move(name), {});
}

Formula Formula::literal(std::string name, bool positive) {
    return positive ? atom(std::move(name)) : neg_atom(std::move(name));
}

Formula Formula::conj(Formula left, Formula right) {
    return make(Op::And, "", {std::move(left), std::move(right)});
}

Formula Formula::disj(Formula left, Formula right) {
    return make(Op::Or, "", {std::move(left), std::move(right)});
}

Formula Formula::box(Formula body) { return make(Op::Box, "", {std::move(body)}); }

Formula Formula::dia(Formula body) { return make(Op::Dia, "", {std::move(body)}); }

Formula Formula::conj_all(const std::vector<Formula>& items) {
    if (items.empty()) return top();
    Formula acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) acc = conj(acc, items[i]);
    return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& items) {
    if (items.empty()) return bot();
    Formula acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) acc = disj(acc, items[i]);
    return acc;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size() || a.op() != b.op()) return false;
    if (a.name() != b.name()) return false;
    const auto& ka = a.node_->kids;
    const auto& kb = b.node_->kids;
    for (std::size_t i = 0; i < ka.size(); ++i)
        if (!(ka[i] == kb[i])) return false;
    return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.op() <=> b.op(); c != 0) return c;
    if (auto c = a.name() <=> b.name(); c != 0) return c;
    const auto& ka = a.node_->kids;
    const auto& kb = b.node_->kids;
    for (std::size_t i = 0; i < ka.size(); ++i)
        if (auto c = ka[i] <=> kb[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

Formula negate(const Formula& f) {
    switch (f.op()) {
        case Op::Bot: return Formula::top();
        case Op::Top: return Formula::bot();
        case Op::Atom: return Formula::neg_atom(f.name());
        case Op::NegAtom: return Formula::atom(f.name());
        case Op::And: return Formula::disj(negate(f.left()), negate(f.right()));
        case Op::Or: return Formula::conj(negate(f.left()), negate(f.right()));
        case Op::Box: return Formula::dia(negate(f.body()));
        case Op::Dia: return Formula::box(negate(f.body()));
    }
    assert(false);
    return f;
}

void collect_vars(const Formula& f, AtomSet& out) {
    switch (f.op()) {
        case Op::Bot:
        case Op::Top: return;
        case Op::Atom:
        case Op::NegAtom: out.insert(f.name()); return;
        case Op::And:
        case Op::Or:
            collect_vars(f.left(), out);
            collect_vars(f.right(), out);
            return;
        case Op::Box:
        case Op::Dia: collect_vars(f.body(), out); return;
    }
}

AtomSet vars(const Formula& f) {
    AtomSet out;
    collect_vars(f, out);
    return out;
}

int modal_depth(const Formula& f) { return f.modal_depth(); }

Formula substitute_constant(const Formula& f, const std::string& p, bool value) {
    switch (f.op()) {
        case Op::Bot:
        case Op::Top: return f;
        case Op::Atom:
            if (f.name() == p) return value ? Formula::top() : Formula::bot();
            return f;
        case Op::NegAtom:
            if (f.name() == p) return value ? Formula::bot() : Formula::top();
            return f;
        case Op::And:
            return Formula::conj(substitute_constant(f.left(), p, value),
                                 substitute_constant(f.right(), p, value));
        case Op::Or:
            return Formula::disj(substitute_constant(f.left(), p, value),
                                 substitute_constant(f.right(), p, value));
        case Op::Box: return Formula::box(substitute_constant(f.body(), p, value));
        case Op::Dia: return Formula::dia(substitute_constant(f.body(), p, value));
    }
    return f;
}

namespace {

void flatten(const Formula& f, Op op, std::vector<Formula>& out) {
    if (f.op() == op) {
        flatten(f.left(), op, out);
        flatten(f.right(), op, out);
    } else {
        out.push_back(f);
    }
}

bool complementary(const Formula& a, const Formula& b) {
    return a.is_literal() && b.is_literal() && a.name() == b.name() && a.op() != b.op();
}

}  // namespace

Formula simplify_formula(const Formula& f) {
    switch (f.op()) {
        case Op::Bot:
        case Op::Top:
        case Op::Atom:
        case Op::NegAtom: return f;
        case Op::Box: {
            Formula b = simplify_formula(f.body());
            if (b.is(Op::Top)) return b;
            return b == f.body() ? f : Formula::box(b);
        }
        case Op::Dia: {
            Formula b = simplify_formula(f.body());
            if (b.is(Op::Bot)) return b;
            return b == f.body() ? f : Formula::dia(b);
        }
        case Op::And:
        case Op::Or: break;
    }
    const bool is_and = f.is(Op::And);
    const Op absorbing = is_and ? Op::Bot : Op::Top;
    const Op unit = is_and ? Op::Top : Op::Bot;

    std::vector<Formula> raw;
    flatten(f, f.op(), raw);
    std::vector<Formula> items;
    std::unordered_set<Formula, FormulaHash> seen;
    for (const auto& r : raw) {
        std::vector<Formula> parts;
        flatten(simplify_formula(r), f.op(), parts);
        for (auto& s : parts) {
            if (s.is(absorbing)) return s;
            if (s.is(unit)) continue;
            if (!seen.insert(s).second) continue;
            items.push_back(std::move(s));
        }
    }
    for (std::size_t i = 0; i < items.size(); ++i)
        for (std::size_t j = i + 1; j < items.size(); ++j)
            if (complementary(items[i], items[j]))
                return is_and ? Formula::bot() : Formula::top();
    return is_and ? Formula::conj_all(items) : Formula::disj_all(items);
}

namespace {

int precedence(const Formula& f) {
    switch (f.op()) {
        case Op::Or: return 1;
        case Op::And: return 2;
        default: return 3;
    }
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, int min_prec, std::string& out) {
    if (precedence(f) < min_prec) {
        out += '(';
        print(f, out);
        out += ')';
    } else {
        print(f, out);
    }
}

void print(const Formula& f, std::string& out) {
    switch (f.op()) {
        case Op::Bot: out += "false"; return;
        case Op::Top: out += "true"; return;
        case Op::Atom: out += f.name(); return;
        case Op::NegAtom:
            out += '~';
            out += f.name();
            return;
        case Op::Box:
            out += "[] ";
            print_operand(f.body(), 3, out);
            return;
        case Op::Dia:
            out += "<> ";
            print_operand(f.body(), 3, out);
            return;
        case Op::And:
        case Op::Or: {
            // Left-associative parse: the right operand of equal precedence
            // needs parentheses to round-trip.
            const int p = precedence(f);
            print_operand(f.left(), p, out);
            out += f.is(Op::And) ? " & " : " | ";
            print_operand(f.right(), p + 1, out);
            return;
        }
    }
}

}  // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(f, out);
    return out;
}

bool is_atom_name(const std::string& s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    for (char c : s)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
    return s != "false" && s != "true";
}

}  // namespace modui
