#include "modui/cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modui/calculus.hpp"
#include "modui/harness.hpp"
#include "modui/interpolation.hpp"
#include "modui/parser.hpp"
#include "modui/s5.hpp"

namespace modui {

namespace {

struct Args {
    std::string input;
    std::string file;
    std::string logic = "K";
    std::string format = "text";
    std::string forall_atom;
    std::string exists_atom;
    bool raw = false;
    bool trace = false;
    std::vector<std::string> suites;
    std::uint64_t seed = 1;
    int max_connectives = 2;
    int max_worlds = 3;
    int max_atoms = 2;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const Args& a) {
    if (!a.file.empty()) {
        std::ifstream in(a.file);
        if (!in) throw UsageError("cannot read '" + a.file + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
        return text;
    }
    if (a.input.empty()) throw UsageError("no input given (pass it inline or with --file)");
    return a.input;
}

std::string model_text(const KripkeModel& m, const Interpretation& i) {
    std::string out = "worlds: " + std::to_string(m.size()) + "\nedges:";
    for (const auto& [u, v] : m.edges()) out += " " + std::to_string(u) + "->" + std::to_string(v);
    out += "\n";
    for (const auto& a : m.atoms()) {
        out += a + " true at:";
        for (World w = 0; w < m.size(); ++w)
            if (m.val(a, w)) out += " " + std::to_string(w);
        out += "\n";
    }
    return out + "interpretation: " + to_string(i) + "\n";
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

// prove and countermodel share the search; `proof` is empty when refutable.
struct Decision {
    bool derivable = false;
    std::size_t steps = 0;
    std::string proof;
    KripkeModel model;
    Interpretation interp;
};

Decision decide(const Args& a, const std::string& text) {
    Decision d;
    if (a.logic == "S5") {
        const auto o = prove_s5(parse_hypersequent(text));
        d.derivable = o.derivable;
        d.steps = o.steps;
        if (o.derivable)
            d.proof = proof_to_text(*o.tree);
        else
            std::tie(d.model, d.interp) = countermodel_s5(*o.witness);
        return d;
    }
    const Logic l = parse_logic(a.logic);
    const auto o = prove(parse_sequent(text), l);
    d.derivable = o.derivable;
    d.steps = o.steps;
    if (o.derivable)
        d.proof = proof_to_text(*o.tree);
    else
        std::tie(d.model, d.interp) = countermodel(*o.witness, l);
    return d;
}

int cmd_prove(const Args& a, std::ostream& out, bool model_only) {
    const std::string text = read_input(a);
    const Decision d = decide(a, text);
    const char* verdict = d.derivable ? "DERIVABLE" : "REFUTABLE";
    if (a.format == "json") {
        Json j{{"result", verdict}, {"logic", a.logic}, {"input", text}, {"steps", d.steps}};
        if (d.derivable && !model_only) j["proof"] = lines(d.proof);
        if (!d.derivable) {
            j["countermodel"] = Json::parse(model_to_json(d.model));
            Json i = Json::object();
            for (const auto& [l, w] : d.interp) i[l.to_string()] = w;
            j["interpretation"] = i;
        }
        out << j.dump(2) << "\n";
    } else if (a.format == "dot") {
        if (d.derivable)
            out << verdict << "\n";
        else
            out << model_to_dot(d.model, &d.interp);
    } else if (model_only) {
        out << verdict << "\n";
        if (!d.derivable) out << model_text(d.model, d.interp);
    } else {
        out << verdict << "\n" << (d.derivable ? d.proof : model_text(d.model, d.interp));
    }
    return d.derivable ? kDerivable : kRefutable;
}

Formula collapse(const Multiformula& m, bool simplified) {
    if (!simplified) return form(m);
    std::vector<Formula> parts;
    for (const auto& b : sdnf_blocks(simplify(m), {Label::root()})) parts.push_back(b.at(Label::root()));
    return simplify_formula(Formula::disj_all(parts));
}

int cmd_interpolate(const Args& a, std::ostream& out) {
    if (a.forall_atom.empty() == a.exists_atom.empty())
        throw UsageError("give exactly one of --forall ATOM or --exists ATOM");
    const bool exists = !a.exists_atom.empty();
    const std::string p = exists ? a.exists_atom : a.forall_atom;
    if (!is_atom_name(p)) throw UsageError("invalid atom name '" + p + "'");
    const std::string text = read_input(a);
    const ApOptions opt{!a.raw};

    std::string trace;
    std::optional<Multiformula> mf;
    std::optional<Formula> collapsed;
    bool single = false;
    if (a.logic == "S5") {
        Hypersequent h = parse_hypersequent(text);
        single = h.size() == 1;
        if (exists) {
            if (!single) throw UsageError("--exists needs a single-component input");
            h = Hypersequent::of(negate(Formula::disj_all(h.component(0))));
        }
        const auto t = ap_s5_trace(h, p, opt);
        trace = trace_to_text(*t);
        mf = t->result;
    } else {
        const Logic l = parse_logic(a.logic);
        NestedSequent g = parse_sequent(text);
        single = g.is_single_root();
        if (exists) {
            if (!single) throw UsageError("--exists needs a formula (single-node) input");
            g = NestedSequent::of(negate(Formula::disj_all(g.formulas(0))));
        }
        const auto t = ap_trace(g, p, l, opt);
        trace = trace_to_text(*t);
        mf = t->result;
    }
    if (single) {
        collapsed = collapse(*mf, opt.simplify);
        if (exists) collapsed = negate(*collapsed);
    }

    if (a.format == "json") {
        Json j{{"logic", a.logic}, {"quantifier", exists ? "exists" : "forall"}, {"atom", p},
               {"input", text}};
        if (!exists) j["multiformula"] = to_string(*mf);
        if (collapsed) j["formula"] = to_string(*collapsed);
        if (a.trace) j["trace"] = lines(trace);
        out << j.dump(2) << "\n";
        return 0;
    }
    if (a.trace) out << trace;
    out << (collapsed ? to_string(*collapsed) : to_string(*mf)) << "\n";
    return 0;
}

int cmd_normalize(const Args& a, std::ostream& out) {
    const std::string text = read_input(a);
    std::optional<Multiformula> mf;
    try {
        mf = parse_multiformula(text);
    } catch (const ParseError&) {
    }
    if (mf) {
        const auto ls = mlabels(*mf);
        const NormalFormOptions opt{!a.raw};
        if (a.format == "json") {
            out << Json{{"input", to_string(*mf)},
                        {"sdnf", to_string(to_sdnf(*mf, ls, opt))},
                        {"scnf", to_string(to_scnf(*mf, ls, opt))}}
                       .dump(2)
                << "\n";
        } else {
            out << "multiformula: " << to_string(*mf) << "\n"
                << "sdnf: " << to_string(to_sdnf(*mf, ls, opt)) << "\n"
                << "scnf: " << to_string(to_scnf(*mf, ls, opt)) << "\n";
        }
        return 0;
    }
    std::string nnf;
    Formula iota = Formula::bot();
    if (a.logic == "S5") {
        const Hypersequent h = parse_hypersequent(text);
        nnf = h.to_string();
        iota = interpret(h);
    } else {
        const NestedSequent g = parse_sequent(text);
        nnf = g.to_string();
        iota = interpret(g);
    }
    if (a.format == "json")
        out << Json{{"nnf", nnf}, {"iota", to_string(iota)}}.dump(2) << "\n";
    else
        out << "nnf: " << nnf << "\n" << "iota: " << to_string(iota) << "\n";
    return 0;
}

int cmd_verify(const Args& a, std::ostream& out) {
    Bounds b;
    b.max_connectives = a.max_connectives;
    b.max_worlds = a.max_worlds;
    b.max_atoms = a.max_atoms;
    Corpus corpus;
    try {
        corpus = gen_corpus(a.seed, b);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const std::vector<std::string> suites = a.suites.empty() ? suite_names() : a.suites;
    bool ok = true;
    Json all = Json::array();
    for (const auto& s : suites) {
        const Report r = run_suite(s, corpus);
        ok = ok && r.ok();
        if (a.format == "json")
            all.push_back(r.json());
        else
            out << r.text() << "\n";
    }
    if (a.format == "json") out << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Modal logic prover and uniform interpolation toolkit (K, D, T, S5)", "modui"};
    app.require_subcommand(1);
    Args a;
    const std::vector<std::string> logics{"K", "D", "T", "S5"};

    auto input_opts = [&](CLI::App* sub) {
        sub->add_option("input", a.input, "Formula, nested sequent, hypersequent (S5) or multiformula");
        sub->add_option("--file", a.file, "Read the input from a file");
        sub->add_option("--logic", a.logic, "K, D, T or S5")
            ->check(CLI::IsMember(logics, CLI::ignore_case))
            ->transform([](std::string s) {
                for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
                return s;
            });
    };

    auto* prove = app.add_subcommand("prove", "Decide derivability; print a proof or a countermodel");
    input_opts(prove);
    prove->add_option("--format", a.format, "text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));

    auto* interp = app.add_subcommand("interpolate", "Compute a uniform interpolant");
    input_opts(interp);
    interp->add_option("--forall", a.forall_atom, "Universally eliminate ATOM");
    interp->add_option("--exists", a.exists_atom, "Existentially eliminate ATOM");
    interp->add_flag("--raw", a.raw, "Skip simplification");
    interp->add_flag("--trace", a.trace, "Print the construction, one row per line");
    interp->add_option("--format", a.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* cm = app.add_subcommand("countermodel", "Print a countermodel if the input is not derivable");
    input_opts(cm);
    cm->add_option("--format", a.format, "text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));

    auto* verify = app.add_subcommand("verify", "Run property suites on a seeded corpus");
    verify->add_option("--suite", a.suites, "Suite name (repeatable; default all)")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--seed", a.seed, "Corpus seed");
    verify->add_option("--max-connectives", a.max_connectives, "Exhaustive formula size")
        ->check(CLI::PositiveNumber);
    verify->add_option("--max-worlds", a.max_worlds, "Largest enumerated model")
        ->check(CLI::PositiveNumber);
    verify->add_option("--max-atoms", a.max_atoms, "Atoms p, q, ... in the corpus")
        ->check(CLI::Range(1, 6));
    verify->add_option("--format", a.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* norm = app.add_subcommand("normalize", "Print NNF and formula interpretation, or SDNF/SCNF");
    input_opts(norm);
    norm->add_flag("--raw", a.raw, "Keep trivial blocks and neutral entries");
    norm->add_option("--format", a.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (prove->parsed()) return cmd_prove(a, out, false);
        if (cm->parsed()) {
            if (cm->count("--format") == 0) a.format = "json";
            return cmd_prove(a, out, true);
        }
        if (interp->parsed()) return cmd_interpolate(a, out);
        if (norm->parsed()) return cmd_normalize(a, out);
        return cmd_verify(a, out);
    } catch (const DepthError& e) {
        err << "error: " << e.what() << "\n";
        return kDepth;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace modui
