#ifndef MODUI_INTERPOLATION_HPP
#define MODUI_INTERPOLATION_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "modui/model.hpp"
#include "modui/multiformula.hpp"
#include "modui/sequent.hpp"

namespace modui {

enum class ApRow { Top, Clash, Or, And, K, T, D, Box, Saturated };

const char* to_string(ApRow r);

/// One step of the interpolant construction for `sequent`.
struct ApTrace {
    struct DiamondCall {
        std::size_t node;  // τ
        Formula xi;        // ⋁ψ over τ:◇ψ
        Formula xi_form;   // form of the interpolant of {ξ}
        std::shared_ptr<const ApTrace> sub;
    };

    ApRow row = ApRow::Saturated;
    NestedSequent sequent;
    std::size_t node = 0;  // σ
    Formula principal = Formula::bot();
    /// k: the child receiving the body; box/d: the fresh child in the premise.
    std::size_t target = 0;
    std::vector<std::shared_ptr<const ApTrace>> premises;
    /// box: SCNF blocks of the premise interpolant; d: its SDNF blocks.
    std::vector<Block> blocks;
    std::vector<DiamondCall> diamonds;
    Multiformula result = Multiformula::lab(Label(), Formula::bot());
};

struct ApOptions {
    /// Simplify every intermediate result; disable to see the raw rows.
    bool simplify = true;
};

std::shared_ptr<const ApTrace> ap_trace(const NestedSequent& g, const std::string& p, Logic logic,
                                        ApOptions opt = {});
Multiformula ap(const NestedSequent& g, const std::string& p, Logic logic, ApOptions opt = {});
/// ∀p f: the interpolant of {f} collapsed to one formula over label 1.
Formula forall_p(const Formula& f, const std::string& p, Logic logic, ApOptions opt = {});
/// ∃p f := ¬∀p ¬f.
Formula exists_p(const Formula& f, const std::string& p, Logic logic, ApOptions opt = {});

/// Numbered rewrite log: one line per table row with sequent and result.
std::string trace_to_text(const ApTrace& t);

class RefutationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A p-bisimilar model falsifying the sequent. `origin[w]` is the world of
/// the input model that w was copied from; its graph is the certificate.
struct Refutation {
    KripkeModel model;
    Interpretation interp;
    std::vector<World> origin;
};

/// Constructive refutation: given (M, I) falsifying the interpolant of g,
/// builds a class model (M', I') ∼_p (M, I) falsifying g. Works for any
/// sequent by following the construction rows down to saturated ones.
/// Throws RefutationError if a precondition fails.
Refutation refute(const NestedSequent& g, const std::string& p, const KripkeModel& m,
                  const Interpretation& i, Logic logic);
Refutation refute(const ApTrace& t, const std::string& p, const KripkeModel& m,
                  const Interpretation& i, Logic logic);

/// Checks the three postconditions of a refutation; on failure `why` says
/// which one.
bool verify_refutation(const NestedSequent& g, const std::string& p, const KripkeModel& m,
                       const Interpretation& i, Logic logic, const Refutation& r,
                       std::string* why = nullptr);

/// Not M, I ⊨ ap(g) or M, I ⊨ g.
bool check_nuip_ii(const NestedSequent& g, const std::string& p, Logic logic,
                   const KripkeModel& m, const Interpretation& i);

}  // namespace modui

#endif
