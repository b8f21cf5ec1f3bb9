#ifndef MODUI_CALCULUS_HPP
#define MODUI_CALCULUS_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modui/model.hpp"
#include "modui/sequent.hpp"

namespace modui {

/// One backward rule application: `rule` applied to `conclusion` with
/// principal formula `principal` at `label`.
struct ProofNode {
    std::string rule;
    NestedSequent conclusion;
    Label label;
    Formula principal = Formula::bot();
    std::vector<std::shared_ptr<const ProofNode>> premises;
};

struct ProofOutcome {
    bool derivable = false;
    /// Present for derivable outcomes when the tree was recorded.
    std::shared_ptr<const ProofNode> tree;
    /// Saturated leaf of the leftmost open branch for refutable outcomes.
    std::optional<NestedSequent> witness;
    std::size_t steps = 0;
};

struct ProveOptions {
    bool record_tree = true;
    /// Rule applications before FuelExhausted is thrown.
    std::size_t fuel = 1'000'000;
};

class FuelExhausted : public std::runtime_error {
public:
    FuelExhausted() : std::runtime_error("proof search exceeded its step budget") {}
};

ProofOutcome prove(const NestedSequent& g, Logic logic, ProveOptions opt = {});
bool derivable(const Formula& f, Logic logic);
bool derivable(const NestedSequent& g, Logic logic);

/// Tree model over labels(g) falsifying every member of the saturated g.
/// World ids follow the order of g's node indices; I maps each label to its
/// world. Throws std::invalid_argument if g is not saturated.
std::pair<KripkeModel, Interpretation> countermodel(const NestedSequent& g, Logic logic);

/// Indented trace, one "rule  conclusion" line per application.
std::string proof_to_text(const ProofNode& root);

}  // namespace modui

#endif
