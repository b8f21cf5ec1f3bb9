#ifndef MODUI_SEQUENT_HPP
#define MODUI_SEQUENT_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modui/formula.hpp"
#include "modui/label.hpp"

namespace modui {

enum class Logic { K, D, T };

const char* to_string(Logic l);
Logic parse_logic(const std::string& s);

class UnknownLabel : public std::invalid_argument {
public:
    explicit UnknownLabel(const Label& l)
        : std::invalid_argument("unknown label " + l.to_string()) {}
};

/// A nested sequent: a finite tree whose nodes hold formula multisets.
///
/// Nodes are addressed either by a dense index (stable for the lifetime of
/// the value, index 0 is the root) or by their positional Label. Children are
/// only ever appended, so the i-th child of σ always carries label σ∗i.
class NestedSequent {
public:
    NestedSequent();
    explicit NestedSequent(std::vector<Formula> root_formulas);
    static NestedSequent of(const Formula& f) { return NestedSequent({f}); }

    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<Formula>& formulas(std::size_t node) const { return nodes_[node].formulas; }
    const std::vector<std::size_t>& children(std::size_t node) const {
        return nodes_[node].children;
    }
    std::optional<std::size_t> parent(std::size_t node) const;
    const Label& label(std::size_t node) const { return nodes_[node].label; }
    std::optional<std::size_t> find(const Label& l) const;
    /// Index of the node with label l; throws UnknownLabel.
    std::size_t node_of(const Label& l) const;

    bool contains(std::size_t node, const Formula& f) const;
    /// Appends f to the node's multiset.
    void push(std::size_t node, const Formula& f);
    /// Appends f unless an equal formula is already present; returns whether
    /// it was added.
    bool add(std::size_t node, const Formula& f);
    /// Appends an empty child; its label is σ∗(m+1) for m existing children.
    std::size_t add_child(std::size_t node);

    /// Node indices in preorder (parents before children, children in order).
    std::vector<std::size_t> preorder() const;
    /// Node indices in breadth-first order.
    std::vector<std::size_t> bfs() const;
    bool is_single_root() const { return nodes_.size() == 1; }
    AtomSet vars() const;
    std::size_t formula_count() const;

    /// Text form, e.g. "~p, <>q & <>p, [q]"; an empty child prints as "[ ]".
    std::string to_string() const;
    /// Labeled form, e.g. "1: ~p, 1: <>q & <>p, 1.1: q".
    std::string to_labeled_string() const;

    friend bool operator==(const NestedSequent& a, const NestedSequent& b);

private:
    struct Node {
        std::vector<Formula> formulas;
        std::vector<std::size_t> children;
        std::size_t parent = 0;
        Label label;
    };
    std::vector<Node> nodes_;
};

std::set<Label> labels(const NestedSequent& g);
bool member(const NestedSequent& g, const Label& sigma, const Formula& f);
/// Formula interpretation ι: the disjunction of a node's formulas and □ι of
/// its children; the empty disjunction is ⊥.
Formula interpret(const NestedSequent& g);
NestedSequent insert(const NestedSequent& g, const Label& sigma, const Formula& f);
std::pair<NestedSequent, Label> new_child(const NestedSequent& g, const Label& sigma);

/// Comma-separated formulas and bracketed children: `~p, <>q & <>p, [q]`.
/// An empty child is written `[ ]` (or `[]` where no formula follows).
NestedSequent parse_sequent(const std::string& text);

/// Rule names used in saturation reports and proof traces.
namespace rule {
inline constexpr const char* id_p = "id_P";
inline constexpr const char* id_top = "id_T";
inline constexpr const char* disj = "or";
inline constexpr const char* conj = "and";
inline constexpr const char* box = "box";
inline constexpr const char* k = "k";
inline constexpr const char* d = "d";
inline constexpr const char* t = "t";
}  // namespace rule

/// An unsaturated principal formula. For rule k, `target` is the child the
/// diamond has not yet been propagated to.
struct Redex {
    Label label;
    Formula formula;
    std::string rule;
    std::optional<Label> target;
};

struct SaturationReport {
    bool saturated = true;
    std::vector<Redex> redexes;
};

SaturationReport saturation(const NestedSequent& g, Logic logic);
bool is_saturated(const NestedSequent& g, Logic logic);

/// Index-based redex used by proof search and the interpolant construction.
struct NodeRedex {
    std::size_t node;
    Formula formula;
    const char* rule;
    std::size_t target = 0;  // child index for rule k
};

/// The redex proof search works on next: axioms first, then ∨, ∧, the
/// diamond rules (k, d, t) and □ last; ties go to the first node in preorder
/// and the first formula in the node.
std::optional<NodeRedex> next_redex(const NestedSequent& g, Logic logic);

/// The diamond bodies ψ with σ:◇ψ ∈ g, in order of occurrence.
std::vector<Formula> diamond_bodies(const NestedSequent& g, std::size_t node);

}  // namespace modui

#endif
