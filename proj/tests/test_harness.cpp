#include <gtest/gtest.h>

#include <algorithm>

#include "modui/harness.hpp"
#include "modui/parser.hpp"
#include "oracle.hpp"

using namespace modui;

namespace {

Bounds tiny() {
    Bounds b;
    b.max_connectives = 1;
    b.max_atoms = 1;
    b.max_worlds = 1;
    b.random_sequents = 10;
    b.witness_connectives = 1;
    b.lemma14_cases = 16;
    return b;
}

std::vector<std::string> texts(const Corpus& c) {
    std::vector<std::string> out;
    for (const auto& f : c.formulas) out.push_back(to_string(f));
    for (const auto& g : c.sequents) out.push_back(g.to_string());
    for (const auto& h : c.hypersequents) out.push_back(h.to_string());
    for (const auto& [cls, ms] : c.models)
        for (const auto& m : ms) out.push_back(model_to_json(m));
    return out;
}

bool has(const std::vector<Formula>& fs, const char* s) {
    return std::find(fs.begin(), fs.end(), parse_formula(s)) != fs.end();
}

// Corpus holding []p | []~p and the formula of ~p, <>q & <>p, [q].
Corpus two_formula_corpus() {
    Bounds b;
    b.max_worlds = 3;
    Corpus c;
    c.bounds = b;
    c.atoms = {"p", "q"};
    c.formulas = {parse_formula("[]p | []~p"), interpret(parse_sequent("~p, <>q & <>p, [q]"))};
    for (auto cls : {ModelClass::K, ModelClass::D, ModelClass::T, ModelClass::S5})
        c.models[cls] = enumerate_models(cls, 3, {"p", "q"});
    return c;
}

}  // namespace

TEST(Corpus, SmallestBounds) {
    const Corpus c = gen_corpus(1, tiny());
    EXPECT_EQ(c.atoms, std::vector<std::string>{"p"});
    EXPECT_TRUE(has(c.formulas, "[]p"));
    EXPECT_TRUE(has(c.formulas, "<>p"));
    EXPECT_TRUE(has(c.formulas, "p & p"));
    EXPECT_TRUE(has(c.formulas, "~p | true"));
    EXPECT_FALSE(has(c.formulas, "[][]p"));
    EXPECT_EQ(c.models.at(ModelClass::K).size(), 2u);
    for (const auto& [cls, ms] : c.models)
        for (const auto& m : ms) EXPECT_TRUE(validate_class(m, cls));
}

TEST(Corpus, Deterministic) {
    Bounds b = tiny();
    b.max_atoms = 2;
    b.max_connectives = 2;
    b.random_formulas = 20;
    EXPECT_EQ(texts(gen_corpus(42, b)), texts(gen_corpus(42, b)));
    EXPECT_NE(texts(gen_corpus(42, b)), texts(gen_corpus(43, b)));
}

TEST(Corpus, ModelCountMatchesDirectCount) {
    for (int atoms = 1; atoms <= 3; ++atoms) {
        Bounds b = tiny();
        b.max_atoms = atoms;
        EXPECT_EQ(gen_corpus(1, b).models.at(ModelClass::K).size(), std::size_t{1} << atoms);
    }
}

TEST(Corpus, RejectsBadBounds) {
    for (auto field : {&Bounds::max_connectives, &Bounds::max_atoms, &Bounds::max_worlds}) {
        Bounds b = tiny();
        b.*field = 0;
        EXPECT_THROW(gen_corpus(1, b), std::invalid_argument);
    }
    Bounds b = tiny();
    b.random_sequents = -1;
    EXPECT_THROW(gen_corpus(1, b), std::invalid_argument);
}

TEST(Enumeration, CountsByConnectives) {
    // 4 leaves; one connective: 2 modal × 4 + 2 binary × 16.
    EXPECT_EQ(enumerate_formulas({"p"}, 0).size(), 4u);
    EXPECT_EQ(enumerate_formulas({"p"}, 1).size(), 4u + 8u + 32u);
    for (const auto& f : enumerate_formulas({"p", "q"}, 2, 1)) EXPECT_LE(f.modal_depth(), 1);
}

TEST(Bank, AgreesWithSatisfies) {
    const auto ms = enumerate_models(ModelClass::T, 3, {"p", "q"});
    Bank bank(ms);
    const auto fs = enumerate_formulas({"p", "q"}, 2);
    for (std::size_t k = 0; k < fs.size(); k += 11) {
        const auto& bits = bank.table(fs[k]);
        for (std::size_t w = 0; w < bank.worlds(); ++w) {
            const auto [mi, x] = bank.locate(static_cast<int>(w));
            ASSERT_EQ(static_cast<bool>((bits[w / 64] >> (w % 64)) & 1), satisfies(ms[mi], x, fs[k]));
        }
    }
    EXPECT_TRUE(bank.entails(parse_formula("[]p"), parse_formula("p")));
    EXPECT_FALSE(bank.entails(parse_formula("p"), parse_formula("[]p")));
    EXPECT_TRUE(bank.counterexample(parse_formula("p"), parse_formula("[]p")).has_value());
    EXPECT_TRUE(bank.refutes(parse_formula("p")));
    EXPECT_FALSE(bank.refutes(parse_formula("[]p -> p")));
}

TEST(Suites, TrivialCorpusPassesEverySuite) {
    const Corpus c = gen_corpus(1, tiny());
    for (const auto& name : suite_names()) {
        const Report r = run_suite(name, c);
        EXPECT_TRUE(r.ok()) << r.text();
        EXPECT_GT(r.total, 0u) << name;
    }
    EXPECT_THROW(run_suite("uip-K4", c), std::invalid_argument);
}

TEST(Suites, TwoFormulaCorpusPassesUip) {
    const Corpus c = two_formula_corpus();
    for (const char* s : {"uip-K", "uip-D", "uip-T"}) {
        const Report r = run_suite(s, c);
        EXPECT_TRUE(r.ok()) << r.text();
    }
}

TEST(Suites, ReportFormats) {
    const Report r = run_suite("lemma7", gen_corpus(1, tiny()));
    const Json j = r.json();
    EXPECT_EQ(j.at("suite"), "lemma7");
    EXPECT_EQ(j.at("failures"), 0);
    EXPECT_TRUE(j.at("first_counterexample").is_null());
    EXPECT_NE(r.text().find("0 failures"), std::string::npos);
}

TEST(Mutation, DroppedConjunctIsCaughtAndReplays) {
    Bounds b = tiny();
    b.max_atoms = 2;
    b.max_connectives = 2;
    b.max_worlds = 3;
    b.witness_connectives = 2;
    b.random_sequents = 100;
    const Corpus c = gen_corpus(1, b);
    const Report r = run_suite("nuip", c, {drop_first_conjunct, "drop-first-conjunct", 0});
    ASSERT_FALSE(r.ok());
    ASSERT_TRUE(r.first_counterexample);
    const Json cx = *r.first_counterexample;
    EXPECT_EQ(cx.at("mutation"), "drop-first-conjunct");
    EXPECT_TRUE(replay(cx));
    EXPECT_TRUE(replay(Json::parse(cx.dump())));
    Json clean = cx;
    clean.erase("mutation");
    EXPECT_FALSE(replay(clean));
}

TEST(Mutation, ConstantFalseIsCaughtByEveryInterpolationSuite) {
    Bounds b = tiny();
    b.max_atoms = 2;
    b.max_connectives = 2;
    b.max_worlds = 2;
    const Corpus c = gen_corpus(1, b);
    for (const char* s : {"uip-K", "uip-D", "uip-T", "uip-S5", "bnuip"}) {
        const Report r = run_suite(s, c, {constant_false, "constant-false", 0});
        ASSERT_FALSE(r.ok()) << s;
        EXPECT_TRUE(replay(*r.first_counterexample)) << r.first_counterexample->dump();
    }
}
