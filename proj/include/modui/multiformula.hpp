#ifndef MODUI_MULTIFORMULA_HPP
#define MODUI_MULTIFORMULA_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "modui/formula.hpp"
#include "modui/label.hpp"

namespace modui {

enum class MOp : std::uint8_t { Lab, And, Or };

/// Labeled formulas combined with meta-conjunction ⩕ and meta-disjunction ⩖.
class Multiformula {
public:
    static Multiformula lab(Label sigma, Formula f);
    static Multiformula mand(Multiformula a, Multiformula b);
    static Multiformula mor(Multiformula a, Multiformula b);
    /// Left-nested fold; `items` must be nonempty.
    static Multiformula mand_all(const std::vector<Multiformula>& items);
    static Multiformula mor_all(const std::vector<Multiformula>& items);

    MOp op() const { return node_->op; }
    bool is(MOp o) const { return node_->op == o; }
    const Label& label() const { return node_->label; }
    const Formula& formula() const { return node_->formula; }
    const Multiformula& left() const { return node_->kids[0]; }
    const Multiformula& right() const { return node_->kids[1]; }
    /// Number of labeled leaves.
    std::size_t leaves() const { return node_->leaves; }

    friend bool operator==(const Multiformula& a, const Multiformula& b);

private:
    struct Node {
        MOp op;
        Label label;
        Formula formula = Formula::bot();
        std::vector<Multiformula> kids;
        std::size_t leaves = 1;
    };
    explicit Multiformula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

std::set<Label> mlabels(const Multiformula& m);
AtomSet mvars(const Multiformula& m);
/// Erases labels: ⩕ ↦ ∧, ⩖ ↦ ∨.
Formula form(const Multiformula& m);

/// Text form: `1.1: q || 1: <> p && 1.2: false`; && binds tighter than ||.
std::string to_string(const Multiformula& m);
Multiformula parse_multiformula(const std::string& text);

/// One block of a normal form: exactly one formula per label.
using Block = std::map<Label, Formula>;

struct NormalFormOptions {
    /// Simplify block entries and drop trivial or subsumed blocks.
    bool simplify = true;
};

/// SCNF blocks: the conjunction over blocks of the disjunction of entries.
/// Labels of L missing from a block are padded with σ:⊥.
std::vector<Block> scnf_blocks(const Multiformula& m, const std::set<Label>& L,
                               NormalFormOptions opt = {});
/// SDNF blocks: the disjunction over blocks of the conjunction of entries.
/// Labels of L missing from a block are padded with σ:⊤.
std::vector<Block> sdnf_blocks(const Multiformula& m, const std::set<Label>& L,
                               NormalFormOptions opt = {});

Multiformula to_scnf(const Multiformula& m, const std::set<Label>& L, NormalFormOptions opt = {});
Multiformula to_sdnf(const Multiformula& m, const std::set<Label>& L, NormalFormOptions opt = {});

/// Best-effort equivalence-preserving cleanup: constant absorption at both
/// levels, formula simplification, same-label merging and idempotence.
Multiformula simplify(const Multiformula& m);

}  // namespace modui

#endif
