#include "modui/interpolation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "modui/bisimulation.hpp"
#include "modui/surgery.hpp"

namespace modui {

const char* to_string(ApRow r) {
    switch (r) {
        case ApRow::Top: return "top";
        case ApRow::Clash: return "clash";
        case ApRow::Or: return "or";
        case ApRow::And: return "and";
        case ApRow::K: return "k";
        case ApRow::T: return "t";
        case ApRow::D: return "d";
        case ApRow::Box: return "box";
        case ApRow::Saturated: return "saturated";
    }
    return "?";
}

namespace {

class Builder {
public:
    Builder(std::string p, Logic logic, ApOptions opt)
        : p_(std::move(p)), logic_(logic), opt_(opt) {}

    std::shared_ptr<const ApTrace> build(const NestedSequent& g) {
        if (++steps_ > kFuel) throw std::runtime_error("interpolant construction exceeded its budget");
        auto t = std::make_shared<ApTrace>();
        t->sequent = g;
        const auto r = next_redex(g, logic_);
        if (!r) {
            saturated(*t);
            return t;
        }
        t->node = r->node;
        t->principal = r->formula;
        const Label& sigma = g.label(r->node);
        const std::string rule = r->rule;
        if (rule == rule::id_top || rule == rule::id_p) {
            t->row = rule == rule::id_top ? ApRow::Top : ApRow::Clash;
            t->result = Multiformula::lab(sigma, Formula::top());
        } else if (rule == rule::disj) {
            t->row = ApRow::Or;
            NestedSequent h = g;
            h.add(r->node, r->formula.left());
            h.add(r->node, r->formula.right());
            t->premises.push_back(build(h));
            t->result = t->premises[0]->result;
        } else if (rule == rule::conj) {
            t->row = ApRow::And;
            NestedSequent h1 = g, h2 = g;
            h1.add(r->node, r->formula.left());
            h2.add(r->node, r->formula.right());
            t->premises.push_back(build(h1));
            t->premises.push_back(build(h2));
            t->result = tidy(Multiformula::mand(t->premises[0]->result, t->premises[1]->result));
        } else if (rule == rule::k || rule == rule::t) {
            t->row = rule == rule::k ? ApRow::K : ApRow::T;
            t->target = rule == rule::k ? r->target : r->node;
            NestedSequent h = g;
            h.add(t->target, r->formula.body());
            t->premises.push_back(build(h));
            t->result = t->premises[0]->result;
        } else {
            const bool box = rule == rule::box;
            t->row = box ? ApRow::Box : ApRow::D;
            NestedSequent h = g;
            t->target = h.add_child(r->node);
            if (!box && h.label(t->target) != sigma.child(1))
                throw std::logic_error("d row on a node with children");
            h.add(t->target, r->formula.body());
            t->premises.push_back(build(h));
            const std::set<Label> L = labels(h);
            const Label fresh = h.label(t->target);
            const NormalFormOptions nf{opt_.simplify};
            t->blocks = box ? scnf_blocks(t->premises[0]->result, L, nf)
                            : sdnf_blocks(t->premises[0]->result, L, nf);
            std::vector<Multiformula> outer;
            for (const auto& b : t->blocks) {
                const Formula& delta = b.at(fresh);
                std::vector<Multiformula> inner{
                    Multiformula::lab(sigma, box ? Formula::box(delta) : Formula::dia(delta))};
                const Op neutral = box ? Op::Bot : Op::Top;
                for (const auto& [tau, gamma] : b) {
                    if (tau == fresh || (opt_.simplify && gamma.is(neutral))) continue;
                    inner.push_back(Multiformula::lab(tau, gamma));
                }
                outer.push_back(box ? Multiformula::mor_all(inner) : Multiformula::mand_all(inner));
            }
            t->result = tidy(box ? Multiformula::mand_all(outer) : Multiformula::mor_all(outer));
        }
        return t;
    }

private:
    static constexpr std::size_t kFuel = 5'000'000;

    Multiformula tidy(const Multiformula& m) const { return opt_.simplify ? simplify(m) : m; }

    void saturated(ApTrace& t) {
        const NestedSequent& g = t.sequent;
        t.row = ApRow::Saturated;
        std::vector<Multiformula> items;
        for (std::size_t n : g.preorder()) {
            std::vector<Formula> seen;
            for (const auto& f : g.formulas(n)) {
                if (!f.is_literal() || f.name() == p_) continue;
                if (std::find(seen.begin(), seen.end(), f) != seen.end()) continue;
                seen.push_back(f);
                items.push_back(Multiformula::lab(g.label(n), f));
            }
        }
        for (std::size_t n : g.preorder()) {
            const std::vector<Formula> bodies = diamond_bodies(g, n);
            if (bodies.empty()) continue;
            ApTrace::DiamondCall call{n, Formula::disj_all(bodies), Formula::bot(), nullptr};
            auto it = memo_.find(call.xi);
            if (it == memo_.end())
                it = memo_.emplace(call.xi, build(NestedSequent::of(call.xi))).first;
            call.sub = it->second;
            call.xi_form = form(call.sub->result);
            if (opt_.simplify) call.xi_form = simplify_formula(call.xi_form);
            items.push_back(Multiformula::lab(g.label(n), Formula::dia(call.xi_form)));
            t.diamonds.push_back(std::move(call));
        }
        t.result = items.empty() ? Multiformula::lab(Label::root(), Formula::bot())
                                 : tidy(Multiformula::mor_all(items));
    }

    std::string p_;
    Logic logic_;
    ApOptions opt_;
    std::size_t steps_ = 0;
    std::map<Formula, std::shared_ptr<const ApTrace>> memo_;
};

}  // namespace

std::shared_ptr<const ApTrace> ap_trace(const NestedSequent& g, const std::string& p, Logic logic,
                                        ApOptions opt) {
    if (!is_atom_name(p)) throw std::invalid_argument("invalid atom name '" + p + "'");
    return Builder(p, logic, opt).build(g);
}

Multiformula ap(const NestedSequent& g, const std::string& p, Logic logic, ApOptions opt) {
    return ap_trace(g, p, logic, opt)->result;
}

Formula forall_p(const Formula& f, const std::string& p, Logic logic, ApOptions opt) {
    const Multiformula a = ap(NestedSequent::of(f), p, logic, opt);
    if (!opt.simplify) return form(a);
    // All labels are 1, so simplification merges everything into one leaf
    // and the SDNF has a single block.
    const auto blocks = sdnf_blocks(simplify(a), {Label::root()});
    std::vector<Formula> parts;
    for (const auto& b : blocks) parts.push_back(b.at(Label::root()));
    return simplify_formula(Formula::disj_all(parts));
}

Formula exists_p(const Formula& f, const std::string& p, Logic logic, ApOptions opt) {
    return negate(forall_p(negate(f), p, logic, opt));
}

std::string trace_to_text(const ApTrace& root) {
    std::string out;
    int counter = 0;
    std::function<void(const ApTrace&, int)> rec = [&](const ApTrace& t, int depth) {
        std::string line = std::to_string(++counter) + ". " + std::string(depth * 2, ' ') +
                           to_string(t.row);
        if (t.row != ApRow::Saturated)
            line += " " + t.sequent.label(t.node).to_string() + ": " + to_string(t.principal);
        line += "  |  " + t.sequent.to_string() + "  =>  " + to_string(t.result);
        out += line + "\n";
        for (const auto& p : t.premises) rec(*p, depth + 1);
        for (const auto& d : t.diamonds) rec(*d.sub, depth + 1);
    };
    rec(root, 0);
    return out;
}

namespace {

class Refuter {
public:
    Refuter(std::string p, Logic logic) : p_(std::move(p)), logic_(logic) {}

    struct Work {
        KripkeModel m;
        Interpretation i;
        std::vector<World> origin;
    };

    void run(const ApTrace& t, Work& w) {
        if (meval(w.m, w.i, t.result))
            throw RefutationError("interpolant holds under the given interpretation");
        const NestedSequent& g = t.sequent;
        switch (t.row) {
            case ApRow::Top:
            case ApRow::Clash: throw RefutationError("interpolant of an axiom cannot be false");
            case ApRow::Or:
            case ApRow::K:
            case ApRow::T: run(*t.premises[0], w); return;
            case ApRow::And: {
                const bool first_false = !meval(w.m, w.i, t.premises[0]->result);
                run(*t.premises[first_false ? 0 : 1], w);
                return;
            }
            case ApRow::Box:
            case ApRow::D: {
                const ApTrace& prem = *t.premises[0];
                const Label fresh = prem.sequent.label(t.target);
                const World s = w.i.at(g.label(t.node));
                std::optional<World> v;
                if (t.row == ApRow::D) {
                    if (w.m.successors(s).empty()) throw RefutationError("model is not serial");
                    v = w.m.successors(s).front();
                } else {
                    for (const auto& b : t.blocks) {
                        bool others_false = true;
                        for (const auto& [tau, gamma] : b)
                            if (tau != fresh && satisfies(w.m, w.i.at(tau), gamma)) {
                                others_false = false;
                                break;
                            }
                        if (!others_false) continue;
                        for (World u : w.m.successors(s))
                            if (!satisfies(w.m, u, b.at(fresh))) {
                                v = u;
                                break;
                            }
                        if (v) break;
                    }
                    if (!v) throw RefutationError("no false block in the box row");
                }
                w.i[fresh] = *v;
                run(prem, w);
                w.i.erase(fresh);
                return;
            }
            case ApRow::Saturated: saturated(t, w); return;
        }
    }

private:
    void add_copies(Work& w, const std::map<World, World>& copy_of) {
        w.origin.resize(static_cast<std::size_t>(w.m.size()));
        for (const auto& [u, c] : copy_of) w.origin[c] = w.origin[u];
    }

    // Re-targets the images of σ's sequent subtree (σ included) through f.
    void remap_subtree(const NestedSequent& g, std::size_t node, Work& w,
                       const std::function<World(World)>& f) {
        std::vector<std::size_t> stack{node};
        while (!stack.empty()) {
            const std::size_t n = stack.back();
            stack.pop_back();
            World& img = w.i.at(g.label(n));
            img = f(img);
            for (std::size_t c : g.children(n)) stack.push_back(c);
        }
    }

    void injectify(const NestedSequent& g, Work& w) {
        std::map<World, std::size_t> used;
        for (std::size_t n : g.bfs()) {
            const World img = w.i.at(g.label(n));
            if (auto par = g.parent(n); par && used.count(img)) {
                const World pw = w.i.at(g.label(*par));
                CopyResult c = img == pw ? clone_node(w.m, img) : duplicate(w.m, img);
                w.m = std::move(c.model);
                add_copies(w, c.copy_of);
                remap_subtree(g, n, w, [&](World x) {
                    auto it = c.copy_of.find(x);
                    return it == c.copy_of.end() ? x : it->second;
                });
            }
            const World now = w.i.at(g.label(n));
            if (used.count(now)) throw std::logic_error("injectification failed");
            used[now] = n;
            if (logic_ == Logic::D && !g.children(n).empty() && is_leaf(w.m, now)) split_leaf(g, n, w);
        }
    }

    // D-models: give each sequent child of a leaf its own reflexive leaf.
    void split_leaf(const NestedSequent& g, std::size_t n, Work& w) {
        const World x = w.i.at(g.label(n));
        w.m.remove_edge(x, x);
        for (std::size_t c : g.children(n)) {
            const World y = w.m.add_world();
            w.m.add_edge(x, y);
            w.m.add_edge(y, y);
            for (const auto& a : w.m.atoms()) w.m.set_val(a, y, w.m.val(a, x));
            w.origin.push_back(w.origin[x]);
            remap_subtree(g, c, w, [&](World) { return y; });
        }
    }

    void saturated(const ApTrace& t, Work& w) {
        const NestedSequent& g = t.sequent;
        injectify(g, w);

        for (const auto& call : t.diamonds) {
            const World x = w.i.at(g.label(call.node));
            std::set<World> range;
            for (const auto& [l, y] : w.i) range.insert(y);
            std::vector<World> stray;
            for (World v : w.m.successors(x))
                if (v != x && !range.count(v)) stray.push_back(v);
            for (std::size_t k = 0; k < stray.size(); ++k) {
                const World v = stray[k];
                Work sub;
                std::vector<World> sub_old;
                sub.m = generated_submodel(w.m, v, &sub_old);
                sub.i[Label::root()] = 0;
                sub.origin.resize(static_cast<std::size_t>(sub.m.size()));
                for (World z = 0; z < sub.m.size(); ++z) sub.origin[z] = z;
                run(*call.sub, sub);

                std::vector<World> n_old;
                KripkeModel n = generated_submodel(sub.m, sub.i.at(Label::root()), &n_old);
                ReplaceResult r = replace_subtree(w.m, v, n, 0);
                std::vector<World> origin(static_cast<std::size_t>(r.model.size()));
                for (World u = 0; u < w.m.size(); ++u)
                    if (r.from_m[u]) origin[*r.from_m[u]] = w.origin[u];
                for (World z = 0; z < n.size(); ++z)
                    origin[r.from_n[z]] = w.origin[sub_old[sub.origin[n_old[z]]]];
                for (auto& [l, y] : w.i) y = *r.from_m[y];
                for (std::size_t j = k + 1; j < stray.size(); ++j) stray[j] = *r.from_m[stray[j]];
                w.m = std::move(r.model);
                w.origin = std::move(origin);
            }
        }

        std::set<World> neg;
        std::set<World> range;
        for (std::size_t n = 0; n < g.node_count(); ++n) {
            const World y = w.i.at(g.label(n));
            range.insert(y);
            if (g.contains(n, Formula::neg_atom(p_))) neg.insert(y);
        }
        for (World y : range) w.m.set_val(p_, y, neg.count(y) > 0);
    }

    std::string p_;
    Logic logic_;
};

}  // namespace

Refutation refute(const ApTrace& t, const std::string& p, const KripkeModel& m,
                  const Interpretation& i, Logic logic) {
    if (!validate_class(m, model_class(logic)))
        throw RefutationError(std::string("input is not a ") + to_string(logic) + "-model");
    if (!is_interpretation(m, t.sequent, i))
        throw RefutationError("not a treelike interpretation of the sequent");
    Refuter::Work w{m, {}, {}};
    for (std::size_t n = 0; n < t.sequent.node_count(); ++n)
        w.i[t.sequent.label(n)] = i.at(t.sequent.label(n));
    w.origin.resize(static_cast<std::size_t>(m.size()));
    for (World x = 0; x < m.size(); ++x) w.origin[x] = x;
    Refuter(p, logic).run(t, w);
    return {std::move(w.m), std::move(w.i), std::move(w.origin)};
}

Refutation refute(const NestedSequent& g, const std::string& p, const KripkeModel& m,
                  const Interpretation& i, Logic logic) {
    return refute(*ap_trace(g, p, logic), p, m, i, logic);
}

bool verify_refutation(const NestedSequent& g, const std::string& p, const KripkeModel& m,
                       const Interpretation& i, Logic logic, const Refutation& r,
                       std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (!validate_class(r.model, model_class(logic))) return fail("result is not a class model");
    if (!is_interpretation(r.model, g, r.interp)) return fail("result interpretation is invalid");
    if (holds_sequent(r.model, r.interp, g)) return fail("result does not falsify the sequent");
    std::set<std::pair<World, World>> z;
    for (World x = 0; x < r.model.size(); ++x) z.emplace(x, r.origin.at(x));
    if (!is_bisimulation(r.model, m, z, p)) return fail("certificate is not a p-bisimulation");
    Interpretation restricted;
    for (std::size_t n = 0; n < g.node_count(); ++n) restricted[g.label(n)] = i.at(g.label(n));
    if (!bisimilar_interpretations(r.model, r.interp, m, restricted, p))
        return fail("interpretations are not p-bisimilar");
    return true;
}

bool check_nuip_ii(const NestedSequent& g, const std::string& p, Logic logic,
                   const KripkeModel& m, const Interpretation& i) {
    return !meval(m, i, ap(g, p, logic)) || holds_sequent(m, i, g);
}

}  // namespace modui
