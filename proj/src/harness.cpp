#include "modui/harness.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

#include "modui/bisimulation.hpp"
#include "modui/calculus.hpp"
#include "modui/interpolation.hpp"
#include "modui/parser.hpp"
#include "modui/surgery.hpp"

namespace modui {

namespace {

const std::vector<std::string> kAtomNames{"p", "q", "r", "s", "t", "u"};
const std::string kP = "p";

std::vector<Formula> leaves(const std::vector<std::string>& atoms) {
    std::vector<Formula> out;
    for (const auto& a : atoms) {
        out.push_back(Formula::atom(a));
        out.push_back(Formula::neg_atom(a));
    }
    out.push_back(Formula::bot());
    out.push_back(Formula::top());
    return out;
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Formula implies(const Formula& a, const Formula& b) { return Formula::disj(negate(a), b); }

bool subset(const AtomSet& a, const AtomSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Json model_json(const KripkeModel& m) { return Json::parse(model_to_json(m)); }
KripkeModel model_of(const Json& j) { return model_from_json(j.dump()); }

Json interp_json(const Interpretation& i) {
    Json j = Json::object();
    for (const auto& [l, w] : i) j[l.to_string()] = w;
    return j;
}

Interpretation interp_of(const Json& j) {
    Interpretation i;
    for (const auto& [k, v] : j.items()) i[Label::parse(k)] = v.get<World>();
    return i;
}

std::vector<KripkeModel> models_upto(const Corpus& c, ModelClass cls, int max_worlds) {
    std::vector<KripkeModel> out;
    auto it = c.models.find(cls);
    if (it == c.models.end()) return out;
    for (const auto& m : it->second)
        if (max_worlds <= 0 || m.size() <= max_worlds) out.push_back(m);
    return out;
}

std::function<Multiformula(const Multiformula&)> mutation_by_name(const std::string& name) {
    if (name.empty()) return {};
    if (name == "drop-first-conjunct") return drop_first_conjunct;
    if (name == "constant-false") return constant_false;
    throw std::invalid_argument("unknown mutation '" + name + "'");
}

class Recorder {
public:
    explicit Recorder(Report& r) : r_(r) {}
    template <class F>
    void check(bool ok, F&& cx) {
        ++r_.total;
        if (ok) return;
        ++r_.failures;
        if (!r_.first_counterexample) r_.first_counterexample = cx();
    }

private:
    Report& r_;
};

// ---- uniform interpolation conditions ----

struct UipTarget {
    std::string logic;
    ModelClass cls;
    int max_depth;
    std::function<bool(const Formula&)> derivable;
    std::function<Formula(const Formula&)> forall;
    std::function<Multiformula(const Formula&)> ap;
};

UipTarget uip_target(const std::string& logic) {
    if (logic == "S5")
        return {"S5", ModelClass::S5, 1, [](const Formula& f) { return derivable_s5(f); },
                [](const Formula& f) { return forall_p_s5(f, kP); },
                [](const Formula& f) { return ap_s5(Hypersequent::of(f), kP); }};
    const Logic l = parse_logic(logic);
    return {logic, model_class(l), -1, [l](const Formula& f) { return derivable(f, l); },
            [l](const Formula& f) { return forall_p(f, kP, l); },
            [l](const Formula& f) { return ap(NestedSequent::of(f), kP, l); }};
}

Formula collapse(const Multiformula& m) {
    std::vector<Formula> parts;
    for (const auto& b : sdnf_blocks(simplify(m), {Label::root()})) parts.push_back(b.at(Label::root()));
    return simplify_formula(Formula::disj_all(parts));
}

struct Quantified {
    Formula all, some;
};

Quantified quantify(const UipTarget& t, const Formula& f,
                    const std::function<Multiformula(const Multiformula&)>& mutate) {
    if (!mutate) return {t.forall(f), negate(t.forall(negate(f)))};
    return {collapse(mutate(t.ap(f))), negate(collapse(mutate(t.ap(negate(f)))))};
}

bool vars_ok(const Formula& interpolant, const Formula& f) {
    AtomSet allowed = vars(f);
    allowed.erase(kP);
    return subset(vars(interpolant), allowed);
}

// True iff the named condition fails for (phi, psi).
bool uip_fails(const UipTarget& t, const std::string& check, const Formula& phi,
               const std::optional<Formula>& psi,
               const std::function<Multiformula(const Multiformula&)>& mutate) {
    const Quantified q = quantify(t, phi, mutate);
    if (check == "vars-forall") return !vars_ok(q.all, phi);
    if (check == "vars-exists") return !vars_ok(q.some, phi);
    if (check == "forall-implies-phi") return !t.derivable(implies(q.all, phi));
    if (check == "phi-implies-exists") return !t.derivable(implies(phi, q.some));
    if (!psi) throw std::invalid_argument("counterexample lacks psi");
    if (check == "forall-strongest")
        return t.derivable(implies(*psi, phi)) && !t.derivable(implies(*psi, q.all));
    if (check == "exists-weakest")
        return t.derivable(implies(phi, *psi)) && !t.derivable(implies(q.some, *psi));
    throw std::invalid_argument("unknown check '" + check + "'");
}

std::size_t bits_hash(const Bank::Bits& b) {
    std::size_t h = 1469598103934665603ull;
    for (auto w : b) h = (h ^ w) * 1099511628211ull;
    return h;
}

void run_uip(const UipTarget& t, const Corpus& c, const SuiteOptions& opt, Report& rep) {
    Recorder rec(rep);
    Bank bank(c.models.at(t.cls));
    std::vector<Formula> phis;
    for (const auto& f : c.formulas)
        if (t.max_depth < 0 || f.modal_depth() <= t.max_depth) phis.push_back(f);

    auto cx = [&](const std::string& check, const Formula& phi, const std::optional<Formula>& psi) {
        Json j{{"suite", "uip-" + t.logic}, {"logic", t.logic}, {"check", check},
               {"phi", to_string(phi)}};
        if (psi) j["psi"] = to_string(*psi);
        if (!opt.mutation_name.empty()) j["mutation"] = opt.mutation_name;
        return j;
    };

    std::vector<Quantified> qs;
    qs.reserve(phis.size());
    for (const auto& phi : phis) {
        qs.push_back(quantify(t, phi, opt.mutate));
        const Quantified& q = qs.back();
        rec.check(vars_ok(q.all, phi), [&] { return cx("vars-forall", phi, std::nullopt); });
        rec.check(vars_ok(q.some, phi), [&] { return cx("vars-exists", phi, std::nullopt); });
        rec.check(t.derivable(implies(q.all, phi)),
                  [&] { return cx("forall-implies-phi", phi, std::nullopt); });
        rec.check(t.derivable(implies(phi, q.some)),
                  [&] { return cx("phi-implies-exists", phi, std::nullopt); });
    }

    // Provably equivalent formulas share their interpolants, so condition
    // (iii) is enumerated on one representative per class. Classes are
    // bucketed by truth table and confirmed by the prover.
    auto classes = [&](const std::vector<Formula>& fs, auto&& on_member) {
        std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const auto& bits = bank.table(fs[i]);
            auto& bucket = buckets[bits_hash(bits)];
            bool matched = false;
            for (std::size_t r : bucket) {
                if (bank.table(fs[r]) != bits) continue;
                if (!t.derivable(implies(fs[i], fs[r])) || !t.derivable(implies(fs[r], fs[i])))
                    continue;
                on_member(i, r);
                matched = true;
                break;
            }
            if (!matched) {
                bucket.push_back(i);
                reps.push_back(i);
            }
        }
        return reps;
    };

    const auto phi_reps = classes(phis, [&](std::size_t i, std::size_t r) {
        rec.check(t.derivable(implies(qs[r].all, qs[i].all)),
                  [&] { return cx("forall-strongest", phis[i], qs[r].all); });
        rec.check(t.derivable(implies(qs[i].some, qs[r].some)),
                  [&] { return cx("exists-weakest", phis[i], qs[r].some); });
    });
    std::vector<Formula> psis;
    for (const auto& f : phis)
        if (!vars(f).count(kP)) psis.push_back(f);
    const auto psi_reps = classes(psis, [](std::size_t, std::size_t) {});

    for (std::size_t r : phi_reps) {
        const Formula& phi = phis[r];
        for (std::size_t s : psi_reps) {
            const Formula& psi = psis[s];
            if (bank.entails(psi, phi) && t.derivable(implies(psi, phi)))
                rec.check(bank.entails(psi, qs[r].all) && t.derivable(implies(psi, qs[r].all)),
                          [&] { return cx("forall-strongest", phi, psi); });
            if (bank.entails(phi, psi) && t.derivable(implies(phi, psi)))
                rec.check(bank.entails(qs[r].some, psi) && t.derivable(implies(qs[r].some, psi)),
                          [&] { return cx("exists-weakest", phi, psi); });
        }
    }
}

// ---- prover soundness and countermodels ----

bool countermodel_ok(const Formula& phi, const std::string& logic) {
    if (logic == "S5") {
        const auto o = prove_s5(Hypersequent::of(phi), ProveOptions{false});
        if (o.derivable) return false;
        const auto [m, i] = countermodel_s5(*o.witness);
        return validate_class(m, ModelClass::S5) && !satisfies(m, i.at(Label::root()), phi) &&
               !holds_hyper(m, i, *o.witness);
    }
    const Logic l = parse_logic(logic);
    const auto o = prove(NestedSequent::of(phi), l, ProveOptions{false});
    if (o.derivable) return false;
    const auto [m, i] = countermodel(*o.witness, l);
    return validate_class(m, model_class(l)) && !satisfies(m, i.at(Label::root()), phi) &&
           !holds_sequent(m, i, *o.witness);
}

bool derives(const Formula& phi, const std::string& logic) {
    return logic == "S5" ? derivable_s5(phi) : derivable(phi, parse_logic(logic));
}

void run_soundness(const Corpus& c, Report& rep) {
    Recorder rec(rep);
    for (const std::string logic : {"K", "D", "T", "S5"}) {
        const ModelClass cls = logic == "S5" ? ModelClass::S5 : model_class(parse_logic(logic));
        const auto& models = c.models.at(cls);
        Bank bank(models);
        for (const auto& phi : c.formulas) {
            if (derives(phi, logic)) {
                const auto bad = bank.counterexample(Formula::top(), phi);
                rec.check(!bad, [&] {
                    const auto [mi, w] = bank.locate(*bad);
                    return Json{{"suite", "soundness"}, {"logic", logic},
                                {"check", "derivable-refuted"}, {"phi", to_string(phi)},
                                {"model", model_json(models[mi])}, {"world", w}};
                });
            } else {
                rec.check(countermodel_ok(phi, logic), [&] {
                    return Json{{"suite", "soundness"}, {"logic", logic}, {"check", "countermodel"},
                                {"phi", to_string(phi)}};
                });
            }
        }
    }
}

// ---- sequent truth vs. its formula interpretation ----

bool lemma7_ok(const NestedSequent& g, const KripkeModel& m, World w) {
    const Formula iota = interpret(g);
    bool all = true;
    for_each_interpretation(m, g, [&](const Interpretation& i) {
        if (i.at(Label::root()) == w && !holds_sequent(m, i, g)) all = false;
        return all;
    });
    return all == satisfies(m, w, iota);
}

void run_lemma7(const Corpus& c, const SuiteOptions& opt, Report& rep) {
    Recorder rec(rep);
    const int limit = std::min(3, opt.max_worlds > 0 ? opt.max_worlds : c.bounds.max_worlds);
    for (ModelClass cls : {ModelClass::K, ModelClass::T}) {
        const auto models = models_upto(c, cls, limit);
        for (const auto& g : c.sequents) {
            if (g.node_count() > 3) continue;
            const Formula iota = interpret(g);
            for (const auto& m : models) {
                const auto ext = extension(m, iota);
                std::vector<char> all(static_cast<std::size_t>(m.size()), 1);
                for_each_interpretation(m, g, [&](const Interpretation& i) {
                    if (!holds_sequent(m, i, g)) all[i.at(Label::root())] = 0;
                    return true;
                });
                for (World w = 0; w < m.size(); ++w)
                    rec.check(all[w] == ext[w], [&] {
                        return Json{{"suite", "lemma7"}, {"sequent", g.to_string()},
                                    {"model", model_json(m)}, {"world", w}};
                    });
            }
        }
    }
}

// ---- p-bisimilar worlds agree on p-free formulas ----

bool agree_on(const std::vector<Formula>& fs, const KripkeModel& a, World u, const KripkeModel& b,
              World v, Formula* bad = nullptr) {
    for (const auto& f : fs)
        if (satisfies(a, u, f) != satisfies(b, v, f)) {
            if (bad) *bad = f;
            return false;
        }
    return true;
}

void run_thm3(const Corpus& c, const SuiteOptions& opt, Report& rep) {
    Recorder rec(rep);
    const int limit = std::min(3, opt.max_worlds > 0 ? opt.max_worlds : c.bounds.max_worlds);
    std::vector<KripkeModel> models = models_upto(c, ModelClass::K, limit);
    for (const auto& m : models_upto(c, ModelClass::T, limit)) models.push_back(m);
    std::vector<Formula> fs;
    for (const auto& f : c.formulas)
        if (!vars(f).count(kP) && f.modal_depth() <= 2) fs.push_back(f);

    KripkeModel all;
    std::vector<World> offset;
    for (const auto& m : models) {
        offset.push_back(all.size());
        for (World w = 0; w < m.size(); ++w) all.add_world();
        for (const auto& [u, v] : m.edges()) all.add_edge(offset.back() + u, offset.back() + v);
        for (const auto& [a, vals] : m.valuation())
            for (World w = 0; w < m.size(); ++w) all.set_val(a, offset.back() + w, vals[w]);
    }
    const auto z = greatest_bisimulation(all, all, kP);
    std::vector<World> rep_of(static_cast<std::size_t>(all.size()));
    for (World u = 0; u < all.size(); ++u)
        rep_of[u] = static_cast<World>(std::find(z[u].begin(), z[u].end(), 1) - z[u].begin());
    Bank bank(models);
    for (const auto& f : fs) {
        const auto& bits = bank.table(f);
        auto bit = [&](World w) { return (bits[w / 64] >> (w % 64)) & 1; };
        World bad = -1;
        for (World u = 0; u < all.size() && bad < 0; ++u)
            if (bit(u) != bit(rep_of[u])) bad = u;
        rec.check(bad < 0, [&] {
            const auto [ma, wa] = bank.locate(bad);
            const auto [mb, wb] = bank.locate(rep_of[bad]);
            return Json{{"suite", "thm3"},          {"formula", to_string(f)},
                        {"model_a", model_json(models[ma])}, {"world_a", wa},
                        {"model_b", model_json(models[mb])}, {"world_b", wb}};
        });
    }

    // Pairwise find_bisim must agree with the union refinement and certify.
    std::mt19937_64 rng(c.seed);
    const int samples = static_cast<int>(std::min<std::size_t>(500, models.size() * models.size()));
    for (int k = 0; k < samples; ++k) {
        const auto ia = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(models.size()) - 1));
        const auto ib = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(models.size()) - 1));
        const KripkeModel& a = models[ia];
        const KripkeModel& b = models[ib];
        const World wa = uniform(rng, 0, a.size() - 1);
        const World wb = uniform(rng, 0, b.size() - 1);
        const auto found = find_bisim(a, wa, b, wb, kP);
        const bool expect = z[offset[ia] + wa][offset[ib] + wb];
        bool ok = found.has_value() == expect;
        if (ok && found) ok = is_bisimulation(a, b, found->pairs, kP) && agree_on(fs, a, wa, b, wb);
        rec.check(ok, [&] {
            Formula f = Formula::bot();
            agree_on(fs, a, wa, b, wb, &f);
            return Json{{"suite", "thm3"},    {"formula", to_string(f)},
                        {"model_a", model_json(a)}, {"world_a", wa},
                        {"model_b", model_json(b)}, {"world_b", wb}};
        });
    }
}

// ---- surgery preserves bisimilarity and model classes ----

struct SurgeryCase {
    std::string op;  // duplicate, clone, replace
    ModelClass cls;
    KripkeModel m;
    World w = 0;
    KripkeModel n;         // replace only
    std::vector<World> z;  // replace only: world of m each world of n is bisimilar to
};

KripkeModel random_tree(std::mt19937_64& rng, ModelClass cls, int size,
                        const std::vector<std::string>& atoms) {
    KripkeModel m(size);
    for (World i = 1; i < size; ++i) m.add_edge(uniform(rng, 0, i - 1), i);
    for (World w = 0; w < size; ++w) {
        if (cls == ModelClass::T || (cls == ModelClass::D && m.successors(w).empty())) m.add_edge(w, w);
        for (const auto& a : atoms) m.set_val(a, w, uniform(rng, 0, 1) == 1);
    }
    m.set_root(0);
    return m;
}

SurgeryCase make_case(std::mt19937_64& rng, int index, const std::vector<std::string>& atoms) {
    static const std::pair<const char*, ModelClass> kinds[] = {
        {"duplicate", ModelClass::K}, {"duplicate", ModelClass::D}, {"duplicate", ModelClass::T},
        {"clone", ModelClass::T},     {"clone", ModelClass::D},     {"replace", ModelClass::K},
        {"replace", ModelClass::D},   {"replace", ModelClass::T}};
    const auto& [op, cls] = kinds[index % 8];
    SurgeryCase c{op, cls, random_tree(rng, cls, uniform(rng, 2, 6), atoms), 0, {}, {}};
    const int n = c.m.size();
    if (c.op == "duplicate") {
        c.w = uniform(rng, 1, n - 1);
    } else if (c.op == "clone") {
        std::vector<World> loops;
        for (World w = 0; w < n; ++w)
            if (c.m.has_edge(w, w)) loops.push_back(w);
        c.w = loops[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(loops.size()) - 1))];
    } else {
        c.w = uniform(rng, 0, n - 1);
        c.n = generated_submodel(c.m, c.w, &c.z);
        for (World x = 0; x < c.n.size(); ++x)
            if (uniform(rng, 0, 1)) c.n.set_val(kP, x, !c.n.val(kP, x));
        if (c.n.size() > 1 && uniform(rng, 0, 1)) {
            const auto d = duplicate(c.n, uniform(rng, 1, c.n.size() - 1));
            c.n = d.model;
            c.z.resize(static_cast<std::size_t>(c.n.size()));
            for (const auto& [u, copy] : d.copy_of) c.z[copy] = c.z[u];
        }
    }
    return c;
}

Json case_json(const SurgeryCase& c) {
    Json j{{"suite", "lemma14"}, {"op", c.op}, {"class", to_string(c.cls)},
           {"model", model_json(c.m)}, {"world", c.w}};
    if (c.op == "replace") {
        j["n"] = model_json(c.n);
        j["z"] = c.z;
    }
    return j;
}

// Empty on the expected outcome, otherwise what went wrong.
std::string check_case(const SurgeryCase& c) {
    auto bisim = [](const KripkeModel& a, World u, const KripkeModel& b, World v) {
        return find_bisim(a, u, b, v, kP).has_value();
    };
    if (c.op == "replace") {
        std::set<std::pair<World, World>> zs;
        for (World x = 0; x < c.n.size(); ++x) zs.emplace(x, c.z.at(x));
        if (!is_bisimulation(c.n, c.m, zs, kP)) return "case setup: z is not a bisimulation";
        const auto r = replace_subtree(c.m, c.w, c.n, 0);
        if (!validate_class(r.model, c.cls)) return "replace left the model class";
        for (World v = 0; v < c.m.size(); ++v)
            if (r.from_m[v] && !bisim(r.model, *r.from_m[v], c.m, v))
                return "kept world " + std::to_string(v) + " not bisimilar";
        for (World x = 0; x < c.n.size(); ++x)
            if (!bisim(r.model, r.from_n[x], c.m, c.z[x]))
                return "inserted world " + std::to_string(x) + " not bisimilar";
        return {};
    }
    const CopyResult r = c.op == "duplicate" ? duplicate(c.m, c.w) : clone_node(c.m, c.w);
    const bool expect_class = !(c.op == "clone" && c.cls == ModelClass::D);
    if (validate_class(r.model, c.cls) != expect_class)
        return expect_class ? c.op + " left the model class" : "clone kept a D-model";
    for (World v = 0; v < c.m.size(); ++v)
        if (!bisim(r.model, v, c.m, v)) return "world " + std::to_string(v) + " not bisimilar";
    for (const auto& [u, copy] : r.copy_of)
        if (!bisim(r.model, copy, c.m, u)) return "copy of " + std::to_string(u) + " not bisimilar";
    return {};
}

void run_lemma14(const Corpus& c, Report& rep) {
    Recorder rec(rep);
    std::mt19937_64 rng(c.seed);
    for (int k = 0; k < c.bounds.lemma14_cases; ++k) {
        const SurgeryCase sc = make_case(rng, k, c.atoms);
        std::string why;
        try {
            why = check_case(sc);
        } catch (const std::exception& e) {
            why = e.what();
        }
        rec.check(why.empty(), [&] {
            Json j = case_json(sc);
            j["reason"] = why;
            return j;
        });
    }
}

// ---- nested interpolant conditions and the refutation engine ----

constexpr Logic kLogics[] = {Logic::K, Logic::D, Logic::T};

bool nuip_i_ok(const NestedSequent& g, const Multiformula& a) {
    AtomSet allowed = g.vars();
    allowed.erase(kP);
    const auto ls = labels(g);
    const auto ml = mlabels(a);
    return subset(mvars(a), allowed) && std::includes(ls.begin(), ls.end(), ml.begin(), ml.end());
}

void run_nuip(const Corpus& c, const SuiteOptions& opt, Report& rep) {
    Recorder rec(rep);
    const int limit = opt.max_worlds > 0 ? opt.max_worlds : c.bounds.max_worlds;
    for (Logic l : kLogics) {
        const auto models = models_upto(c, model_class(l), limit);
        for (const auto& g : c.sequents) {
            Multiformula a = ap(g, kP, l);
            if (opt.mutate) a = opt.mutate(a);
            auto cx = [&](const char* check) {
                Json j{{"suite", "nuip"}, {"logic", to_string(l)}, {"check", check},
                       {"sequent", g.to_string()}};
                if (!opt.mutation_name.empty()) j["mutation"] = opt.mutation_name;
                return j;
            };
            rec.check(nuip_i_ok(g, a), [&] { return cx("nuip-i"); });
            for (const auto& m : models)
                for_each_interpretation(m, g, [&](const Interpretation& i) {
                    rec.check(!meval(m, i, a) || holds_sequent(m, i, g), [&] {
                        Json j = cx("nuip-ii");
                        j["model"] = model_json(m);
                        j["interp"] = interp_json(i);
                        return j;
                    });
                    return true;
                });
        }
    }
}

bool refutation_ok(const ApTrace& t, const NestedSequent& g, Logic l, const KripkeModel& m,
                   const Interpretation& i) {
    try {
        const Refutation r = refute(t, kP, m, i, l);
        if (!verify_refutation(g, kP, m, i, l, r)) return false;
        for (const auto& [label, w] : i)
            if (!find_bisim(r.model, r.interp.at(label), m, w, kP)) return false;
        return true;
    } catch (const RefutationError&) {
        return false;
    }
}

void run_bnuip(const Corpus& c, const SuiteOptions& opt, Report& rep) {
    Recorder rec(rep);
    const int limit = std::min(3, opt.max_worlds > 0 ? opt.max_worlds : c.bounds.max_worlds);
    for (Logic l : kLogics) {
        const auto models = models_upto(c, model_class(l), limit);
        for (const auto& g : c.sequents) {
            if (!is_saturated(g, l)) continue;
            const auto t = ap_trace(g, kP, l);
            const Multiformula a = opt.mutate ? opt.mutate(t->result) : t->result;
            for (const auto& m : models)
                for_each_interpretation(m, g, [&](const Interpretation& i) {
                    if (meval(m, i, a)) return true;
                    rec.check(refutation_ok(*t, g, l, m, i), [&] {
                        Json j{{"suite", "bnuip"},          {"logic", to_string(l)},
                               {"sequent", g.to_string()}, {"model", model_json(m)},
                               {"interp", interp_json(i)}};
                        if (!opt.mutation_name.empty()) j["mutation"] = opt.mutation_name;
                        return j;
                    });
                    return true;
                });
        }
    }
}

// ---- S5 ----

const char* const kS5Axioms[][2] = {{"axiom-k", "[](p -> q) -> ([]p -> []q)"},
                                    {"axiom-t", "[]p -> p"},
                                    {"axiom-5", "<>p -> []<>p"}};

bool bhuip_iii_ok(const Hypersequent& h, const KripkeModel& m, const Interpretation& i) {
    try {
        const Refutation r = refute_s5(h, kP, m, i);
        if (!verify_refutation_s5(h, kP, m, i, r)) return false;
        for (const auto& [label, w] : i)
            if (!find_bisim(r.model, r.interp.at(label), m, w, kP)) return false;
        return true;
    } catch (const RefutationError&) {
        return false;
    }
}

bool bhuip_i_ok(const Hypersequent& h, const Multiformula& a) {
    AtomSet allowed = h.vars();
    allowed.erase(kP);
    const auto ls = h.labels();
    const auto ml = mlabels(a);
    return subset(mvars(a), allowed) && std::includes(ls.begin(), ls.end(), ml.begin(), ml.end());
}

void run_s5(const Corpus& c, const SuiteOptions& opt, Report& rep) {
    Recorder rec(rep);
    for (const auto& [name, text] : kS5Axioms)
        rec.check(derivable_s5(parse_formula(text)), [&, name = name] {
            return Json{{"suite", "uip-S5"}, {"check", name}};
        });
    rec.check(countermodel_ok(parse_formula("p -> []p"), "S5"),
              [] { return Json{{"suite", "uip-S5"}, {"check", "refute-p-box-p"}}; });

    run_uip(uip_target("S5"), c, opt, rep);

    const int limit = opt.max_worlds > 0 ? opt.max_worlds : c.bounds.max_worlds;
    const auto models = models_upto(c, ModelClass::S5, limit);
    for (const auto& h : c.hypersequents) {
        if (h.modal_depth() > 1) continue;
        Multiformula a = ap_s5(h, kP);
        if (opt.mutate) a = opt.mutate(a);
        auto cx = [&](const char* check) {
            Json j{{"suite", "uip-S5"}, {"check", check}, {"hypersequent", h.to_string()}};
            if (!opt.mutation_name.empty()) j["mutation"] = opt.mutation_name;
            return j;
        };
        rec.check(bhuip_i_ok(h, a), [&] { return cx("bhuip-i"); });
        for (const auto& m : models)
            for_each_interpretation(m, h, [&](const Interpretation& i) {
                const bool holds = meval(m, i, a);
                const bool ok = holds ? holds_hyper(m, i, h) : opt.mutate || bhuip_iii_ok(h, m, i);
                rec.check(ok, [&] {
                    Json j = cx(holds ? "bhuip-ii" : "bhuip-iii");
                    j["model"] = model_json(m);
                    j["interp"] = interp_json(i);
                    return j;
                });
                return true;
            });
    }
}

}  // namespace

// ---- corpus ----

std::vector<Formula> enumerate_formulas(const std::vector<std::string>& atoms, int max_connectives,
                                        int max_depth) {
    std::vector<std::vector<Formula>> by_size{leaves(atoms)};
    for (int n = 1; n <= max_connectives; ++n) {
        std::vector<Formula> cur;
        for (bool is_box : {true, false})
            for (const auto& f : by_size[n - 1])
                if (max_depth < 0 || f.modal_depth() < max_depth)
                    cur.push_back(is_box ? Formula::box(f) : Formula::dia(f));
        for (bool is_and : {true, false})
            for (int i = 0; i < n; ++i)
                for (const auto& a : by_size[i])
                    for (const auto& b : by_size[n - 1 - i])
                        cur.push_back(is_and ? Formula::conj(a, b) : Formula::disj(a, b));
        by_size.push_back(std::move(cur));
    }
    std::vector<Formula> out;
    for (auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
    return out;
}

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                       int connectives, int max_depth) {
    if (connectives == 0) {
        const auto ls = leaves(atoms);
        return ls[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ls.size()) - 1))];
    }
    const int pick = uniform(rng, 0, 3);
    if (pick < 2 && max_depth != 0) {
        Formula body = random_formula(rng, atoms, connectives - 1, max_depth < 0 ? -1 : max_depth - 1);
        return pick == 0 ? Formula::box(body) : Formula::dia(body);
    }
    const int left = uniform(rng, 0, connectives - 1);
    Formula a = random_formula(rng, atoms, left, max_depth);
    Formula b = random_formula(rng, atoms, connectives - 1 - left, max_depth);
    return pick % 2 == 0 ? Formula::conj(a, b) : Formula::disj(a, b);
}

Corpus gen_corpus(std::uint64_t seed, const Bounds& b) {
    if (b.max_connectives < 1 || b.max_atoms < 1 || b.max_worlds < 1 ||
        b.max_atoms > static_cast<int>(kAtomNames.size()) || b.random_formulas < 0 ||
        b.random_sequents < 0 || b.witness_connectives < 0 || b.lemma14_cases < 0)
        throw std::invalid_argument("corpus bounds must be positive");
    Corpus c;
    c.seed = seed;
    c.bounds = b;
    c.atoms.assign(kAtomNames.begin(), kAtomNames.begin() + b.max_atoms);
    std::mt19937_64 rng(seed);

    c.formulas = enumerate_formulas(c.atoms, b.max_connectives);
    for (int k = 0; k < b.random_formulas; ++k)
        c.formulas.push_back(random_formula(rng, c.atoms,
                                            uniform(rng, b.max_connectives + 1, b.max_connectives + 3)));

    const auto pool = enumerate_formulas(c.atoms, 1);
    auto pick = [&] { return pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))]; };

    std::set<std::string> seen;
    auto add_sequent = [&](NestedSequent g) {
        if (seen.insert(g.to_string()).second) c.sequents.push_back(std::move(g));
    };
    const auto small = enumerate_formulas(c.atoms, b.witness_connectives);
    for (const auto& f : small)
        for (Logic l : kLogics) {
            auto o = prove(NestedSequent::of(f), l, ProveOptions{false});
            if (!o.derivable) add_sequent(std::move(*o.witness));
        }
    for (int k = 0; k < b.random_sequents; ++k) {
        NestedSequent g;
        const int nodes = uniform(rng, 1, 3);
        for (int n = 1; n < nodes; ++n)
            g.add_child(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(g.node_count()) - 1)));
        for (std::size_t n = 0; n < g.node_count(); ++n)
            for (int j = uniform(rng, 0, 2); j > 0; --j) g.push(n, pick());
        add_sequent(std::move(g));
    }

    seen.clear();
    auto add_hyper = [&](Hypersequent h) {
        if (seen.insert(h.to_string()).second) c.hypersequents.push_back(std::move(h));
    };
    for (const auto& f : enumerate_formulas(c.atoms, b.witness_connectives, 1)) {
        auto o = prove_s5(Hypersequent::of(f), ProveOptions{false});
        if (!o.derivable) add_hyper(std::move(*o.witness));
    }
    for (int k = 0; k < b.random_sequents; ++k) {
        std::vector<std::vector<Formula>> comps(static_cast<std::size_t>(uniform(rng, 1, 3)));
        for (auto& comp : comps)
            for (int j = uniform(rng, 0, 2); j > 0; --j) comp.push_back(pick());
        add_hyper(Hypersequent(std::move(comps)));
    }

    const AtomSet atoms(c.atoms.begin(), c.atoms.end());
    for (ModelClass cls : {ModelClass::K, ModelClass::D, ModelClass::T, ModelClass::S5})
        c.models[cls] = enumerate_models(cls, b.max_worlds, atoms);
    return c;
}

// ---- bank ----

Bank::Bank(const std::vector<KripkeModel>& models) {
    for (const auto& m : models) {
        offsets_.push_back(world_count_);
        for (World w = 0; w < m.size(); ++w) {
            std::vector<int> s;
            for (World v : m.successors(w)) s.push_back(world_count_ + v);
            succ_.push_back(std::move(s));
        }
        world_count_ += m.size();
    }
    const std::size_t words = (static_cast<std::size_t>(world_count_) + 63) / 64;
    for (std::size_t k = 0; k < models.size(); ++k)
        for (const auto& [a, vals] : models[k].valuation()) {
            auto& bits = atoms_.try_emplace(a, words, 0).first->second;
            for (std::size_t w = 0; w < vals.size(); ++w)
                if (vals[w]) {
                    const auto g = static_cast<std::size_t>(offsets_[k]) + w;
                    bits[g / 64] |= std::uint64_t{1} << (g % 64);
                }
        }
}

const Bank::Bits& Bank::table(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    const std::size_t words = (static_cast<std::size_t>(world_count_) + 63) / 64;
    Bits mask(words, ~std::uint64_t{0});
    if (world_count_ % 64) mask.back() = (std::uint64_t{1} << (world_count_ % 64)) - 1;
    if (words == 0) mask.clear();
    Bits out(words, 0);
    auto bit = [](const Bits& b, int w) { return (b[static_cast<std::size_t>(w) / 64] >> (w % 64)) & 1; };
    switch (f.op()) {
        case Op::Bot: break;
        case Op::Top: out = mask; break;
        case Op::Atom:
        case Op::NegAtom: {
            auto it = atoms_.find(f.name());
            if (it != atoms_.end()) out = it->second;
            if (f.is(Op::NegAtom))
                for (std::size_t i = 0; i < words; ++i) out[i] = ~out[i] & mask[i];
            break;
        }
        case Op::And:
        case Op::Or: {
            const Bits& a = table(f.left());
            const Bits& b = table(f.right());
            for (std::size_t i = 0; i < words; ++i) out[i] = f.is(Op::And) ? a[i] & b[i] : a[i] | b[i];
            break;
        }
        case Op::Box:
        case Op::Dia: {
            const Bits& b = table(f.body());
            const bool box = f.is(Op::Box);
            for (int w = 0; w < world_count_; ++w) {
                bool v = box;
                for (int s : succ_[static_cast<std::size_t>(w)])
                    if (bit(b, s) != box) {
                        v = !box;
                        break;
                    }
                if (v) out[static_cast<std::size_t>(w) / 64] |= std::uint64_t{1} << (w % 64);
            }
            break;
        }
    }
    return memo_.emplace(f, std::move(out)).first->second;
}

std::optional<int> Bank::counterexample(const Formula& a, const Formula& b) {
    const Bits& ta = table(a);
    const Bits& tb = table(b);
    for (std::size_t i = 0; i < ta.size(); ++i)
        if (const std::uint64_t bad = ta[i] & ~tb[i])
            return static_cast<int>(i * 64) + __builtin_ctzll(bad);
    return std::nullopt;
}

bool Bank::entails(const Formula& a, const Formula& b) { return !counterexample(a, b); }

bool Bank::refutes(const Formula& f) { return counterexample(Formula::top(), f).has_value(); }

std::pair<std::size_t, World> Bank::locate(int world) const {
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), world) - 1;
    return {static_cast<std::size_t>(it - offsets_.begin()), world - *it};
}

// ---- reports and suites ----

std::string Report::text() const {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", seconds);
    std::string out = suite + ": " + std::to_string(total) + " checks, " +
                      std::to_string(failures) + " failures (" + secs + " s)";
    if (first_counterexample) out += "\nfirst counterexample: " + first_counterexample->dump();
    return out;
}

Json Report::json() const {
    return Json{{"suite", suite},
                {"total", total},
                {"failures", failures},
                {"first_counterexample", first_counterexample ? *first_counterexample : Json()}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"uip-K", "uip-D", "uip-T",   "uip-S5", "nuip",
                                                "bnuip", "lemma7", "lemma14", "thm3",   "soundness"};
    return names;
}

Report run_suite(const std::string& name, const Corpus& corpus, const SuiteOptions& opt) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw std::invalid_argument("unknown suite '" + name + "'");
    Report rep;
    rep.suite = name;
    const auto start = std::chrono::steady_clock::now();
    if (name == "uip-S5")
        run_s5(corpus, opt, rep);
    else if (name.rfind("uip-", 0) == 0)
        run_uip(uip_target(name.substr(4)), corpus, opt, rep);
    else if (name == "nuip")
        run_nuip(corpus, opt, rep);
    else if (name == "bnuip")
        run_bnuip(corpus, opt, rep);
    else if (name == "lemma7")
        run_lemma7(corpus, opt, rep);
    else if (name == "lemma14")
        run_lemma14(corpus, rep);
    else if (name == "thm3")
        run_thm3(corpus, opt, rep);
    else
        run_soundness(corpus, rep);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

Multiformula drop_first_conjunct(const Multiformula& m) {
    return m.is(MOp::And) ? m.right() : m;
}

Multiformula constant_false(const Multiformula&) {
    return Multiformula::lab(Label::root(), Formula::bot());
}

bool replay(const Json& cx) {
    const std::string suite = cx.at("suite");
    const std::string check = cx.value("check", "");
    const auto mutate = mutation_by_name(cx.value("mutation", ""));
    auto model = [&](const char* key) { return model_of(cx.at(key)); };

    if (suite.rfind("uip-", 0) == 0 && check.rfind("bhuip", 0) != 0 && check.rfind("axiom", 0) != 0 &&
        check != "refute-p-box-p") {
        std::optional<Formula> psi;
        if (cx.contains("psi")) psi = parse_formula(cx.at("psi").get<std::string>());
        return uip_fails(uip_target(cx.at("logic")), check,
                         parse_formula(cx.at("phi").get<std::string>()), psi, mutate);
    }
    if (suite == "uip-S5") {
        if (check == "refute-p-box-p") return !countermodel_ok(parse_formula("p -> []p"), "S5");
        for (const auto& [name, text] : kS5Axioms)
            if (check == name) return !derivable_s5(parse_formula(text));
        const Hypersequent h = parse_hypersequent(cx.at("hypersequent"));
        Multiformula a = ap_s5(h, kP);
        if (mutate) a = mutate(a);
        if (check == "bhuip-i") return !bhuip_i_ok(h, a);
        const KripkeModel m = model("model");
        const Interpretation i = interp_of(cx.at("interp"));
        if (check == "bhuip-ii") return meval(m, i, a) && !holds_hyper(m, i, h);
        return !meval(m, i, a) && !bhuip_iii_ok(h, m, i);
    }
    if (suite == "soundness") {
        const Formula phi = parse_formula(cx.at("phi").get<std::string>());
        const std::string logic = cx.at("logic");
        if (check == "countermodel") return !derives(phi, logic) && !countermodel_ok(phi, logic);
        return derives(phi, logic) && !satisfies(model("model"), cx.at("world").get<World>(), phi);
    }
    if (suite == "lemma7")
        return !lemma7_ok(parse_sequent(cx.at("sequent")), model("model"), cx.at("world").get<World>());
    if (suite == "thm3") {
        const Formula f = parse_formula(cx.at("formula").get<std::string>());
        const KripkeModel a = model("model_a"), b = model("model_b");
        const World wa = cx.at("world_a"), wb = cx.at("world_b");
        return find_bisim(a, wa, b, wb, kP) && satisfies(a, wa, f) != satisfies(b, wb, f);
    }
    if (suite == "lemma14") {
        SurgeryCase c{cx.at("op"), parse_model_class(cx.at("class")), model("model"),
                      cx.at("world").get<World>(), {}, {}};
        if (c.op == "replace") {
            c.n = model("n");
            c.z = cx.at("z").get<std::vector<World>>();
        }
        try {
            return !check_case(c).empty();
        } catch (const std::exception&) {
            return true;
        }
    }
    const Logic l = parse_logic(cx.at("logic"));
    const NestedSequent g = parse_sequent(cx.at("sequent"));
    if (suite == "nuip") {
        Multiformula a = ap(g, kP, l);
        if (mutate) a = mutate(a);
        if (check == "nuip-i") return !nuip_i_ok(g, a);
        const KripkeModel m = model("model");
        const Interpretation i = interp_of(cx.at("interp"));
        return meval(m, i, a) && !holds_sequent(m, i, g);
    }
    if (suite == "bnuip") {
        const KripkeModel m = model("model");
        const Interpretation i = interp_of(cx.at("interp"));
        const auto t = ap_trace(g, kP, l);
        const Multiformula a = mutate ? mutate(t->result) : t->result;
        return !meval(m, i, a) && !refutation_ok(*t, g, l, m, i);
    }
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace modui
