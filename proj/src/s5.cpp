#include "modui/s5.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lexer.hpp"
#include "modui/bisimulation.hpp"

namespace modui {

Hypersequent::Hypersequent(std::vector<std::vector<Formula>> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) throw std::invalid_argument("a hypersequent needs a component");
}

bool Hypersequent::contains(std::size_t k, const Formula& f) const {
    const auto& c = comps_.at(k);
    return std::find(c.begin(), c.end(), f) != c.end();
}

bool Hypersequent::add(std::size_t k, const Formula& f) {
    if (contains(k, f)) return false;
    comps_[k].push_back(f);
    return true;
}

std::size_t Hypersequent::add_component() {
    comps_.emplace_back();
    return comps_.size() - 1;
}

std::set<Label> Hypersequent::labels() const {
    std::set<Label> out;
    for (std::size_t k = 0; k < comps_.size(); ++k) out.insert(label(k));
    return out;
}

AtomSet Hypersequent::vars() const {
    AtomSet out;
    for (const auto& c : comps_)
        for (const auto& f : c) collect_vars(f, out);
    return out;
}

int Hypersequent::modal_depth() const {
    int d = 0;
    for (const auto& c : comps_)
        for (const auto& f : c) d = std::max(d, f.modal_depth());
    return d;
}

std::string Hypersequent::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < comps_.size(); ++k) {
        if (k) out += " ; ";
        for (std::size_t j = 0; j < comps_[k].size(); ++j) {
            if (j) out += ", ";
            out += modui::to_string(comps_[k][j]);
        }
    }
    return out;
}

Hypersequent parse_hypersequent(const std::string& text) {
    using detail::Tok;
    detail::TokenStream ts(text);
    std::vector<std::vector<Formula>> comps(1);
    for (;;) {
        if (!ts.at(Tok::Semi) && !ts.at(Tok::End)) {
            do comps.back().push_back(ts.formula());
            while (ts.accept(Tok::Comma));
        }
        if (ts.accept(Tok::Semi)) {
            comps.emplace_back();
            continue;
        }
        if (!ts.at(Tok::End)) ts.fail(std::string("unexpected ") + detail::describe(ts.peek().kind));
        return Hypersequent(std::move(comps));
    }
}

Formula interpret(const Hypersequent& h) {
    std::vector<Formula> parts;
    for (std::size_t k = 0; k < h.size(); ++k)
        parts.push_back(Formula::box(Formula::disj_all(h.component(k))));
    return Formula::disj_all(parts);
}

namespace {

Formula deepest(const Formula& f) {
    if (f.modal_depth() <= 1) return f;
    if (f.is_modal()) return f;
    return f.left().modal_depth() >= f.right().modal_depth() ? deepest(f.left()) : deepest(f.right());
}

bool box_saturated(const Hypersequent& h, const Formula& f) {
    for (std::size_t k = 0; k < h.size(); ++k)
        if (h.contains(k, f.body())) return true;
    return false;
}

bool has_clash(const std::vector<Formula>& fs, Formula* witness) {
    for (const auto& f : fs)
        if (f.is(Op::Atom) && std::find(fs.begin(), fs.end(), Formula::neg_atom(f.name())) != fs.end()) {
            *witness = f;
            return true;
        }
    return false;
}

}  // namespace

DepthError::DepthError(const Formula& offending)
    : std::invalid_argument("S5 interpolation needs modal depth at most 1, but '" +
                            to_string(deepest(offending)) +
                            "' is deeper; rewrite the input into its depth-1 S5 equivalent first"),
      offending_(deepest(offending)) {}

std::optional<S5Redex> next_redex_s5(const Hypersequent& h) {
    const std::size_t n = h.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& fs = h.component(k);
        if (std::find(fs.begin(), fs.end(), Formula::top()) != fs.end())
            return S5Redex{k, Formula::top(), rule::id_top};
        Formula w = Formula::bot();
        if (has_clash(fs, &w)) return S5Redex{k, w, rule::id_p};
    }
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& f : h.component(k))
            if (f.is(Op::Or) && !(h.contains(k, f.left()) && h.contains(k, f.right())))
                return S5Redex{k, f, rule::disj};
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& f : h.component(k))
            if (f.is(Op::And) && !h.contains(k, f.left()) && !h.contains(k, f.right()))
                return S5Redex{k, f, rule::conj};
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& f : h.component(k))
            if (f.is(Op::Dia) && !h.contains(k, f.body())) return S5Redex{k, f, rule::t};
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& f : h.component(k))
            if (f.is(Op::Dia))
                for (std::size_t j = 0; j < n; ++j)
                    if (j != k && !h.contains(j, f.body())) return S5Redex{k, f, rule::k, j};
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& f : h.component(k))
            if (f.is(Op::Box) && !box_saturated(h, f)) return S5Redex{k, f, rule::box};
    return std::nullopt;
}

SaturationReport saturated_s5(const Hypersequent& h) {
    SaturationReport rep;
    for (std::size_t k = 0; k < h.size(); ++k) {
        const auto& fs = h.component(k);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const Formula& f = fs[i];
            if (std::find(fs.begin(), fs.begin() + static_cast<long>(i), f) != fs.begin() + static_cast<long>(i))
                continue;
            auto add = [&](const char* r, std::optional<Label> target = std::nullopt) {
                rep.redexes.push_back({Hypersequent::label(k), f, r, std::move(target)});
            };
            switch (f.op()) {
                case Op::Top: add(rule::id_top); break;
                case Op::Atom:
                    if (h.contains(k, Formula::neg_atom(f.name()))) add(rule::id_p);
                    break;
                case Op::Or:
                    if (!(h.contains(k, f.left()) && h.contains(k, f.right()))) add(rule::disj);
                    break;
                case Op::And:
                    if (!h.contains(k, f.left()) && !h.contains(k, f.right())) add(rule::conj);
                    break;
                case Op::Box:
                    if (!box_saturated(h, f)) add(rule::box);
                    break;
                case Op::Dia:
                    for (std::size_t j = 0; j < h.size(); ++j)
                        if (!h.contains(j, f.body()))
                            j == k ? add(rule::t) : add(rule::k, Hypersequent::label(j));
                    break;
                default: break;
            }
        }
    }
    rep.saturated = rep.redexes.empty();
    return rep;
}

namespace {

struct S5Search {
    ProveOptions opt;
    std::size_t steps = 0;
    std::optional<Hypersequent> witness;

    bool run(Hypersequent& h, std::shared_ptr<const S5ProofNode>* out) {
        if (++steps > opt.fuel) throw FuelExhausted();
        const auto r = next_redex_s5(h);
        if (!r) {
            witness = h;
            return false;
        }
        std::shared_ptr<S5ProofNode> node;
        if (opt.record_tree) {
            node = std::make_shared<S5ProofNode>();
            node->rule = r->rule;
            node->conclusion = h;
            node->comp = r->comp;
            node->principal = r->formula;
        }
        auto premise = [&](Hypersequent& g) {
            std::shared_ptr<const S5ProofNode> sub;
            if (!run(g, node ? &sub : nullptr)) return false;
            if (node) node->premises.push_back(std::move(sub));
            return true;
        };
        const std::string rule = r->rule;
        bool closed = true;
        if (rule == rule::id_p || rule == rule::id_top) {
            closed = true;
        } else if (rule == rule::disj) {
            h.add(r->comp, r->formula.left());
            h.add(r->comp, r->formula.right());
            closed = premise(h);
        } else if (rule == rule::conj) {
            Hypersequent g = h;
            h.add(r->comp, r->formula.left());
            g.add(r->comp, r->formula.right());
            closed = premise(h) && premise(g);
        } else if (rule == rule::t) {
            h.add(r->comp, r->formula.body());
            closed = premise(h);
        } else if (rule == rule::k) {
            h.add(r->target, r->formula.body());
            closed = premise(h);
        } else {
            const std::size_t c = h.add_component();
            h.add(c, r->formula.body());
            closed = premise(h);
        }
        if (closed && out) *out = std::move(node);
        return closed;
    }
};

}  // namespace

S5ProofOutcome prove_s5(const Hypersequent& h, ProveOptions opt) {
    S5Search s{opt, 0, std::nullopt};
    Hypersequent work = h;
    S5ProofOutcome out;
    std::shared_ptr<const S5ProofNode> tree;
    out.derivable = s.run(work, opt.record_tree ? &tree : nullptr);
    out.steps = s.steps;
    if (out.derivable)
        out.tree = std::move(tree);
    else
        out.witness = std::move(s.witness);
    return out;
}

bool derivable_s5(const Formula& f) {
    return prove_s5(Hypersequent::of(f), ProveOptions{false}).derivable;
}

std::string proof_to_text(const S5ProofNode& root) {
    std::string out;
    std::function<void(const S5ProofNode&, int)> rec = [&](const S5ProofNode& n, int depth) {
        out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + n.rule + "  " +
               n.conclusion.to_string() + "\n";
        for (const auto& p : n.premises) rec(*p, depth + 1);
    };
    rec(root, 0);
    return out;
}

std::pair<KripkeModel, Interpretation> countermodel_s5(const Hypersequent& h) {
    if (!saturated_s5(h).saturated)
        throw std::invalid_argument("countermodel requires a saturated hypersequent");
    const int n = static_cast<int>(h.size());
    KripkeModel m(n);
    Interpretation i;
    for (const auto& a : h.vars())
        for (World w = 0; w < n; ++w) m.set_val(a, w, false);
    for (World u = 0; u < n; ++u) {
        for (World v = 0; v < n; ++v) m.add_edge(u, v);
        i[Hypersequent::label(static_cast<std::size_t>(u))] = u;
        for (const auto& f : h.component(static_cast<std::size_t>(u)))
            if (f.is(Op::NegAtom)) m.set_val(f.name(), u, true);
    }
    return {std::move(m), std::move(i)};
}

bool holds_hyper(const KripkeModel& m, const Interpretation& i, const Hypersequent& h) {
    for (std::size_t k = 0; k < h.size(); ++k) {
        auto it = i.find(Hypersequent::label(k));
        if (it == i.end() || !m.has_world(it->second))
            throw std::invalid_argument("interpretation does not cover the hypersequent");
        for (const auto& f : h.component(k))
            if (satisfies(m, it->second, f)) return true;
    }
    return false;
}

bool for_each_interpretation(const KripkeModel& m, const Hypersequent& h,
                             const std::function<bool(const Interpretation&)>& fn) {
    Interpretation cur;
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == h.size()) return fn(cur);
        for (World w = 0; w < m.size(); ++w) {
            cur[Hypersequent::label(k)] = w;
            if (!rec(k + 1)) return false;
        }
        return true;
    };
    return rec(0);
}

Formula prop_forall_p(const Formula& f, const std::string& p) {
    if (f.modal_depth() != 0) throw std::invalid_argument("prop_forall_p needs a propositional formula");
    return simplify_formula(
        Formula::conj(substitute_constant(f, p, true), substitute_constant(f, p, false)));
}

namespace {

class S5Builder {
public:
    S5Builder(std::string p, ApOptions opt) : p_(std::move(p)), opt_(opt) {}

    std::shared_ptr<const S5Trace> build(const Hypersequent& h) {
        auto t = std::make_shared<S5Trace>();
        t->hyper = h;
        const auto r = next_redex_s5(h);
        if (!r) {
            saturated(*t);
            return t;
        }
        t->comp = r->comp;
        t->principal = r->formula;
        const Label k = Hypersequent::label(r->comp);
        const std::string rule = r->rule;
        if (rule == rule::id_top || rule == rule::id_p) {
            t->row = rule == rule::id_top ? ApRow::Top : ApRow::Clash;
            t->result = Multiformula::lab(k, Formula::top());
        } else if (rule == rule::disj) {
            t->row = ApRow::Or;
            Hypersequent g = h;
            g.add(r->comp, r->formula.left());
            g.add(r->comp, r->formula.right());
            t->premises.push_back(build(g));
            t->result = t->premises[0]->result;
        } else if (rule == rule::conj) {
            t->row = ApRow::And;
            Hypersequent g1 = h, g2 = h;
            g1.add(r->comp, r->formula.left());
            g2.add(r->comp, r->formula.right());
            t->premises.push_back(build(g1));
            t->premises.push_back(build(g2));
            t->result = tidy(Multiformula::mand(t->premises[0]->result, t->premises[1]->result));
        } else if (rule == rule::t || rule == rule::k) {
            t->row = rule == rule::t ? ApRow::T : ApRow::K;
            t->target = rule == rule::t ? r->comp : r->target;
            Hypersequent g = h;
            g.add(t->target, r->formula.body());
            t->premises.push_back(build(g));
            t->result = t->premises[0]->result;
        } else {
            t->row = ApRow::Box;
            Hypersequent g = h;
            t->target = g.add_component();
            g.add(t->target, r->formula.body());
            t->premises.push_back(build(g));
            const Label fresh = Hypersequent::label(t->target);
            t->blocks = scnf_blocks(t->premises[0]->result, g.labels(), NormalFormOptions{opt_.simplify});
            std::vector<Multiformula> outer;
            for (const auto& b : t->blocks) {
                std::vector<Multiformula> inner{Multiformula::lab(k, Formula::box(b.at(fresh)))};
                for (const auto& [tau, gamma] : b) {
                    if (tau == fresh || (opt_.simplify && gamma.is(Op::Bot))) continue;
                    inner.push_back(Multiformula::lab(tau, gamma));
                }
                outer.push_back(Multiformula::mor_all(inner));
            }
            t->result = tidy(Multiformula::mand_all(outer));
        }
        return t;
    }

private:
    Multiformula tidy(const Multiformula& m) const { return opt_.simplify ? simplify(m) : m; }

    void saturated(S5Trace& t) {
        const Hypersequent& h = t.hyper;
        t.row = ApRow::Saturated;
        std::vector<Multiformula> items;
        std::vector<Formula> bodies;
        for (std::size_t k = 0; k < h.size(); ++k) {
            std::vector<Formula> seen;
            for (const auto& f : h.component(k)) {
                if (f.is(Op::Dia) && std::find(bodies.begin(), bodies.end(), f.body()) == bodies.end())
                    bodies.push_back(f.body());
                if (!f.is_literal() || f.name() == p_) continue;
                if (std::find(seen.begin(), seen.end(), f) != seen.end()) continue;
                seen.push_back(f);
                items.push_back(Multiformula::lab(Hypersequent::label(k), f));
            }
        }
        if (items.empty()) items.push_back(Multiformula::lab(Label::root(), Formula::bot()));
        t.xi = Formula::disj_all(bodies);
        t.xi_forall = prop_forall_p(t.xi, p_);
        items.push_back(Multiformula::lab(Label::root(), Formula::dia(t.xi_forall)));
        t.result = tidy(Multiformula::mor_all(items));
    }

    std::string p_;
    ApOptions opt_;
};

}  // namespace

std::shared_ptr<const S5Trace> ap_s5_trace(const Hypersequent& h, const std::string& p,
                                           ApOptions opt) {
    if (!is_atom_name(p)) throw std::invalid_argument("invalid atom name '" + p + "'");
    for (std::size_t k = 0; k < h.size(); ++k)
        for (const auto& f : h.component(k))
            if (f.modal_depth() > 1) throw DepthError(f);
    return S5Builder(p, opt).build(h);
}

Multiformula ap_s5(const Hypersequent& h, const std::string& p, ApOptions opt) {
    return ap_s5_trace(h, p, opt)->result;
}

Formula forall_p_s5(const Formula& f, const std::string& p, ApOptions opt) {
    const Multiformula a = ap_s5(Hypersequent::of(f), p, opt);
    if (!opt.simplify) return form(a);
    const auto blocks = sdnf_blocks(simplify(a), {Label::root()});
    std::vector<Formula> parts;
    for (const auto& b : blocks) parts.push_back(b.at(Label::root()));
    return simplify_formula(Formula::disj_all(parts));
}

Formula exists_p_s5(const Formula& f, const std::string& p, ApOptions opt) {
    return negate(forall_p_s5(negate(f), p, opt));
}

std::string trace_to_text(const S5Trace& root) {
    std::string out;
    int counter = 0;
    std::function<void(const S5Trace&, int)> rec = [&](const S5Trace& t, int depth) {
        std::string line = std::to_string(++counter) + ". " + std::string(depth * 2, ' ') +
                           to_string(t.row);
        if (t.row != ApRow::Saturated)
            line += " " + Hypersequent::label(t.comp).to_string() + ": " + to_string(t.principal);
        line += "  |  " + t.hyper.to_string() + "  =>  " + to_string(t.result);
        out += line + "\n";
        for (const auto& p : t.premises) rec(*p, depth + 1);
    };
    rec(root, 0);
    return out;
}

namespace {

class S5Refuter {
public:
    explicit S5Refuter(std::string p) : p_(std::move(p)) {}

    void run(const S5Trace& t, Refutation& w) {
        if (meval(w.model, w.interp, t.result))
            throw RefutationError("interpolant holds under the given interpretation");
        switch (t.row) {
            case ApRow::Top:
            case ApRow::Clash: throw RefutationError("interpolant of an axiom cannot be false");
            case ApRow::Or:
            case ApRow::K:
            case ApRow::T:
            case ApRow::D: run(*t.premises[0], w); return;
            case ApRow::And: {
                const bool first_false = !meval(w.model, w.interp, t.premises[0]->result);
                run(*t.premises[first_false ? 0 : 1], w);
                return;
            }
            case ApRow::Box: {
                const Label fresh = Hypersequent::label(t.target);
                std::optional<World> v;
                for (const auto& b : t.blocks) {
                    bool others_false = true;
                    for (const auto& [tau, gamma] : b)
                        if (tau != fresh && satisfies(w.model, w.interp.at(tau), gamma)) {
                            others_false = false;
                            break;
                        }
                    if (!others_false) continue;
                    for (World u = 0; u < w.model.size() && !v; ++u)
                        if (!satisfies(w.model, u, b.at(fresh))) v = u;
                    if (v) break;
                }
                if (!v) throw RefutationError("no false block in the box row");
                w.interp[fresh] = *v;
                run(*t.premises[0], w);
                w.interp.erase(fresh);
                return;
            }
            case ApRow::Saturated: saturated(t, w); return;
        }
    }

private:
    World duplicate_world(Refutation& w, World x) {
        const World y = w.model.add_world();
        for (World u = 0; u < w.model.size(); ++u) {
            w.model.add_edge(u, y);
            w.model.add_edge(y, u);
        }
        for (const auto& a : w.model.atoms()) w.model.set_val(a, y, w.model.val(a, x));
        w.origin.push_back(w.origin[x]);
        return y;
    }

    void saturated(const S5Trace& t, Refutation& w) {
        const Hypersequent& h = t.hyper;
        std::set<World> used;
        for (std::size_t k = 0; k < h.size(); ++k) {
            World& img = w.interp.at(Hypersequent::label(k));
            if (used.count(img)) img = duplicate_world(w, img);
            used.insert(img);
        }
        for (World v = 0; v < w.model.size(); ++v) {
            if (used.count(v)) continue;
            if (satisfies(w.model, v, t.xi)) {
                w.model.set_val(p_, v, !w.model.val(p_, v));
                if (satisfies(w.model, v, t.xi))
                    throw RefutationError("cannot falsify the diamond bodies outside the range");
            }
        }
        for (std::size_t k = 0; k < h.size(); ++k) {
            const World y = w.interp.at(Hypersequent::label(k));
            if (h.contains(k, Formula::neg_atom(p_))) w.model.set_val(p_, y, true);
        }
        for (std::size_t k = 0; k < h.size(); ++k) {
            const World y = w.interp.at(Hypersequent::label(k));
            if (h.contains(k, Formula::atom(p_))) w.model.set_val(p_, y, false);
        }
    }

    std::string p_;
};

}  // namespace

Refutation refute_s5(const Hypersequent& h, const std::string& p, const KripkeModel& m,
                     const Interpretation& i) {
    if (!validate_class(m, ModelClass::S5)) throw RefutationError("input is not a cluster");
    const auto t = ap_s5_trace(h, p);
    Refutation w{m, {}, {}};
    for (std::size_t k = 0; k < h.size(); ++k) {
        auto it = i.find(Hypersequent::label(k));
        if (it == i.end() || !m.has_world(it->second))
            throw RefutationError("interpretation does not cover the hypersequent");
        w.interp[it->first] = it->second;
    }
    for (World x = 0; x < m.size(); ++x) w.origin.push_back(x);
    S5Refuter(p).run(*t, w);
    return w;
}

bool verify_refutation_s5(const Hypersequent& h, const std::string& p, const KripkeModel& m,
                          const Interpretation& i, const Refutation& r, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (!validate_class(r.model, ModelClass::S5)) return fail("result is not a cluster");
    if (holds_hyper(r.model, r.interp, h)) return fail("result does not falsify the hypersequent");
    std::set<std::pair<World, World>> z;
    for (World x = 0; x < r.model.size(); ++x) z.emplace(x, r.origin.at(x));
    if (!is_bisimulation(r.model, m, z, p)) return fail("certificate is not a p-bisimulation");
    Interpretation restricted;
    for (std::size_t k = 0; k < h.size(); ++k)
        restricted[Hypersequent::label(k)] = i.at(Hypersequent::label(k));
    if (!bisimilar_interpretations(r.model, r.interp, m, restricted, p))
        return fail("interpretations are not p-bisimilar");
    return true;
}

}  // namespace modui
