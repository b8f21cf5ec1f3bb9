#ifndef MODUI_FORMULA_HPP
#define MODUI_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace modui {

enum class Op : std::uint8_t { Bot, Top, Atom, NegAtom, And, Or, Box, Dia };

/// Immutable modal formula in negation normal form.
///
/// Nodes are shared; copies are cheap. Equality and ordering are structural,
/// with a pointer fast path and a cached hash to reject most mismatches early.
class Formula {
public:
    static Formula bot();
    static Formula top();
    static Formula atom(std::string name);
    static Formula neg_atom(std::string name);
    static Formula literal(std::string name, bool positive);
    static Formula conj(Formula left, Formula right);
    static Formula disj(Formula left, Formula right);
    static Formula box(Formula body);
    static Formula dia(Formula body);

    /// Left-nested conjunction/disjunction; empty input gives the unit (⊤ / ⊥).
    static Formula conj_all(const std::vector<Formula>& items);
    static Formula disj_all(const std::vector<Formula>& items);

    Op op() const { return node_->op; }
    bool is(Op o) const { return node_->op == o; }
    bool is_literal() const { return is(Op::Atom) || is(Op::NegAtom); }
    bool is_atomic() const { return is_literal() || is(Op::Bot) || is(Op::Top); }
    bool is_binary() const { return is(Op::And) || is(Op::Or); }
    bool is_modal() const { return is(Op::Box) || is(Op::Dia); }

    /// Atom name; only meaningful for literals.
    const std::string& name() const { return node_->name; }
    const Formula& left() const { return node_->kids[0]; }
    const Formula& right() const { return node_->kids[1]; }
    const Formula& body() const { return node_->kids[0]; }

    std::size_t hash() const { return node_->hash; }
    /// Number of nodes in the tree.
    std::size_t size() const { return node_->size; }
    /// Nesting depth of □/◇.
    int modal_depth() const { return node_->depth; }
    const void* identity() const { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b);
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

private:
    struct Node {
        Op op;
        std::string name;
        std::vector<Formula> kids;
        std::size_t hash = 0;
        std::size_t size = 1;
        int depth = 0;
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula make(Op op, std::string name, std::vector<Formula> kids);

    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using AtomSet = std::set<std::string>;

/// NNF of ¬f (De Morgan pushed to the atoms).
Formula negate(const Formula& f);
AtomSet vars(const Formula& f);
void collect_vars(const Formula& f, AtomSet& out);
int modal_depth(const Formula& f);

/// Replace atom p by a constant (p̄ gets the dual constant).
Formula substitute_constant(const Formula& f, const std::string& p, bool value);

/// Constant absorption, ◇⊥ → ⊥, □⊤ → ⊤, idempotence and complementary
/// literals inside flattened ∧/∨ chains. Preserves truth in every world of
/// every model.
Formula simplify_formula(const Formula& f);

/// ASCII surface syntax, parseable by parse_formula.
std::string to_string(const Formula& f);

/// True iff s matches [a-z][a-z0-9_]*.
bool is_atom_name(const std::string& s);

}  // namespace modui

#endif
