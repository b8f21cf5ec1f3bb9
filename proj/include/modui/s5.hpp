#ifndef MODUI_S5_HPP
#define MODUI_S5_HPP

#include <functional>
#include <memory>
#include <set>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modui/calculus.hpp"
#include "modui/interpolation.hpp"
#include "modui/model.hpp"
#include "modui/multiformula.hpp"
#include "modui/sequent.hpp"

namespace modui {

/// Γ₁ | … | Γₙ; component k (0-based here) carries label ⟨k+1⟩.
class Hypersequent {
public:
    Hypersequent() : comps_(1) {}
    explicit Hypersequent(std::vector<std::vector<Formula>> comps);
    static Hypersequent of(const Formula& f) { return Hypersequent({{f}}); }

    std::size_t size() const { return comps_.size(); }
    const std::vector<Formula>& component(std::size_t k) const { return comps_.at(k); }
    static Label label(std::size_t k) { return Label::component(static_cast<int>(k) + 1); }

    bool contains(std::size_t k, const Formula& f) const;
    /// Set-semantic insertion; returns whether f was added.
    bool add(std::size_t k, const Formula& f);
    std::size_t add_component();

    std::set<Label> labels() const;
    AtomSet vars() const;
    int modal_depth() const;
    /// `p, <> q ; ~q`; an empty component prints as nothing between `;`.
    std::string to_string() const;

    friend bool operator==(const Hypersequent&, const Hypersequent&) = default;

private:
    std::vector<std::vector<Formula>> comps_;
};

Hypersequent parse_hypersequent(const std::string& text);
/// □ι(Γ₁) ∨ … ∨ □ι(Γₙ).
Formula interpret(const Hypersequent& h);

/// Raised when S5 interpolation input exceeds modal depth 1.
class DepthError : public std::invalid_argument {
public:
    DepthError(const Formula& offending);
    const Formula& offending() const { return offending_; }

private:
    Formula offending_;
};

SaturationReport saturated_s5(const Hypersequent& h);

struct S5Redex {
    std::size_t comp;
    Formula formula;
    const char* rule;
    std::size_t target = 0;  // component receiving the body for rule k
};
/// Axioms, ∨, ∧, t, k, then □; ties by component then position.
std::optional<S5Redex> next_redex_s5(const Hypersequent& h);

struct S5ProofNode {
    std::string rule;
    Hypersequent conclusion;
    std::size_t comp = 0;
    Formula principal = Formula::bot();
    std::vector<std::shared_ptr<const S5ProofNode>> premises;
};

struct S5ProofOutcome {
    bool derivable = false;
    std::shared_ptr<const S5ProofNode> tree;
    std::optional<Hypersequent> witness;
    std::size_t steps = 0;
};

S5ProofOutcome prove_s5(const Hypersequent& h, ProveOptions opt = {});
bool derivable_s5(const Formula& f);
std::string proof_to_text(const S5ProofNode& root);

/// Cluster with one world per component falsifying every member.
std::pair<KripkeModel, Interpretation> countermodel_s5(const Hypersequent& h);
bool holds_hyper(const KripkeModel& m, const Interpretation& i, const Hypersequent& h);
/// Calls fn on every interpretation of h into m (all label maps).
bool for_each_interpretation(const KripkeModel& m, const Hypersequent& h,
                             const std::function<bool(const Interpretation&)>& fn);

/// Classical ∀p: f[p:=⊤] ∧ f[p:=⊥], simplified. Requires modal depth 0.
Formula prop_forall_p(const Formula& f, const std::string& p);

struct S5Trace {
    ApRow row = ApRow::Saturated;
    Hypersequent hyper;
    std::size_t comp = 0;
    Formula principal = Formula::bot();
    std::size_t target = 0;
    std::vector<std::shared_ptr<const S5Trace>> premises;
    std::vector<Block> blocks;
    Formula xi = Formula::bot();       // saturated: ⋁ψ over ◇ψ
    Formula xi_forall = Formula::bot();  // prop_forall_p(ξ)
    Multiformula result = Multiformula::lab(Label(), Formula::bot());
};

/// Throws DepthError if some member has modal depth above 1.
std::shared_ptr<const S5Trace> ap_s5_trace(const Hypersequent& h, const std::string& p,
                                           ApOptions opt = {});
Multiformula ap_s5(const Hypersequent& h, const std::string& p, ApOptions opt = {});
Formula forall_p_s5(const Formula& f, const std::string& p, ApOptions opt = {});
Formula exists_p_s5(const Formula& f, const std::string& p, ApOptions opt = {});
std::string trace_to_text(const S5Trace& t);

/// Cluster analogue of refute: duplicate conflated worlds, fix p outside
/// the range, then rewrite p on the range.
Refutation refute_s5(const Hypersequent& h, const std::string& p, const KripkeModel& m,
                     const Interpretation& i);
bool verify_refutation_s5(const Hypersequent& h, const std::string& p, const KripkeModel& m,
                          const Interpretation& i, const Refutation& r,
                          std::string* why = nullptr);

}  // namespace modui

#endif
