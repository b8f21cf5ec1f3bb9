#include "modui/calculus.hpp"

#include <functional>

namespace modui {

namespace {

struct Search {
    Logic logic;
    ProveOptions opt;
    std::size_t steps = 0;
    std::optional<NestedSequent> witness;

    // Returns nullptr-equivalent `false` when the branch stays open.
    bool run(NestedSequent& g, std::shared_ptr<const ProofNode>* out) {
        if (++steps > opt.fuel) throw FuelExhausted();
        const auto r = next_redex(g, logic);
        if (!r) {
            witness = g;
            return false;
        }
        std::shared_ptr<ProofNode> node;
        if (opt.record_tree) {
            node = std::make_shared<ProofNode>();
            node->rule = r->rule;
            node->conclusion = g;
            node->label = g.label(r->node);
            node->principal = r->formula;
        }
        auto premise = [&](NestedSequent& h) {
            std::shared_ptr<const ProofNode> sub;
            if (!run(h, node ? &sub : nullptr)) return false;
            if (node) node->premises.push_back(std::move(sub));
            return true;
        };
        const std::string rule = r->rule;
        bool closed = true;
        if (rule == rule::id_p || rule == rule::id_top) {
            closed = true;
        } else if (rule == rule::disj) {
            g.add(r->node, r->formula.left());
            g.add(r->node, r->formula.right());
            closed = premise(g);
        } else if (rule == rule::conj) {
            NestedSequent h = g;
            g.add(r->node, r->formula.left());
            h.add(r->node, r->formula.right());
            closed = premise(g) && premise(h);
        } else if (rule == rule::k) {
            g.add(r->target, r->formula.body());
            closed = premise(g);
        } else if (rule == rule::t) {
            g.add(r->node, r->formula.body());
            closed = premise(g);
        } else {  // d and box both open a fresh child
            const std::size_t c = g.add_child(r->node);
            g.add(c, r->formula.body());
            closed = premise(g);
        }
        if (closed && out) *out = std::move(node);
        return closed;
    }
};

}  // namespace

ProofOutcome prove(const NestedSequent& g, Logic logic, ProveOptions opt) {
    Search s{logic, opt, 0, std::nullopt};
    NestedSequent work = g;
    ProofOutcome out;
    std::shared_ptr<const ProofNode> tree;
    out.derivable = s.run(work, opt.record_tree ? &tree : nullptr);
    out.steps = s.steps;
    if (out.derivable)
        out.tree = std::move(tree);
    else
        out.witness = std::move(s.witness);
    return out;
}

bool derivable(const NestedSequent& g, Logic logic) {
    return prove(g, logic, ProveOptions{false}).derivable;
}

bool derivable(const Formula& f, Logic logic) { return derivable(NestedSequent::of(f), logic); }

std::pair<KripkeModel, Interpretation> countermodel(const NestedSequent& g, Logic logic) {
    if (!is_saturated(g, logic))
        throw std::invalid_argument("countermodel requires a saturated sequent");
    const int n = static_cast<int>(g.node_count());
    KripkeModel m(n);
    m.set_root(0);
    Interpretation i;
    for (const auto& a : g.vars())
        for (World w = 0; w < n; ++w) m.set_val(a, w, false);
    for (std::size_t k = 0; k < g.node_count(); ++k) {
        const World w = static_cast<World>(k);
        i[g.label(k)] = w;
        for (std::size_t c : g.children(k)) m.add_edge(w, static_cast<World>(c));
        for (const auto& f : g.formulas(k))
            if (f.is(Op::NegAtom)) m.set_val(f.name(), w, true);
        if (logic == Logic::T || (logic == Logic::D && g.children(k).empty())) m.add_edge(w, w);
    }
    return {std::move(m), std::move(i)};
}

std::string proof_to_text(const ProofNode& root) {
    std::string out;
    std::function<void(const ProofNode&, int)> rec = [&](const ProofNode& n, int depth) {
        out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + n.rule + "  " +
               n.conclusion.to_string() + "\n";
        for (const auto& p : n.premises) rec(*p, depth + 1);
    };
    rec(root, 0);
    return out;
}

}  // namespace modui
