#include <gtest/gtest.h>

#include "modui/harness.hpp"
#include "modui/parser.hpp"
#include "modui/s5.hpp"
#include "oracle.hpp"

using namespace modui;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Hypersequent H(const char* s) { return parse_hypersequent(s); }

bool s5_valid(const Formula& f, int worlds) {
    for (const auto& fr : oracle::frames(oracle::Cls::S5, worlds, {"p", "q"}))
        for (int w = 0; w < fr.n; ++w)
            if (!oracle::eval(fr, w, f)) return false;
    return true;
}

// a and b agree under every cluster interpretation of labels 1..n.
bool cluster_equivalent(const Multiformula& a, const Multiformula& b, std::size_t n) {
    std::set<Label> ls;
    for (std::size_t k = 0; k < n; ++k) ls.insert(Hypersequent::label(k));
    for (const auto& fr : oracle::frames(oracle::Cls::S5, 3, {"p", "q"})) {
        bool ok = true;
        oracle::for_each_interp(fr, ls, false, [&](const oracle::Interp& i) {
            ok = ok && oracle::meval(fr, i, a) == oracle::meval(fr, i, b);
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace

TEST(Hyper, ParseAndPrint) {
    const auto h = H("p, <>q ; ~q");
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h.component(0), (std::vector<Formula>{F("p"), F("<>q")}));
    EXPECT_EQ(h.component(1), std::vector<Formula>{F("~q")});
    EXPECT_EQ(H(h.to_string().c_str()), h);
    EXPECT_EQ(H("p ; ").size(), 2u);
    EXPECT_EQ(interpret(H("p ; q")), F("[]p | []q"));
    EXPECT_THROW(H("p ;; [q]"), ParseError);
}

TEST(ProveS5, Axioms) {
    for (const char* s : {"[]p -> p", "<>p -> []<>p", "[](p -> q) -> ([]p -> []q)",
                          "[]p -> [][]p", "p -> []<>p"}) {
        EXPECT_TRUE(derivable_s5(F(s))) << s;
        EXPECT_TRUE(s5_valid(F(s), 3)) << s;
    }
    EXPECT_FALSE(derivable_s5(F("p -> []p")));
    EXPECT_FALSE(derivable_s5(F("<>p -> p")));
}

TEST(ProveS5, RefutationComesWithCluster) {
    const Formula f = F("p -> []p");
    const auto out = prove_s5(Hypersequent::of(f));
    ASSERT_FALSE(out.derivable);
    ASSERT_TRUE(out.witness);
    EXPECT_TRUE(saturated_s5(*out.witness).saturated);
    const auto [m, i] = countermodel_s5(*out.witness);
    EXPECT_EQ(m.size(), 2);
    EXPECT_TRUE(validate_class(m, ModelClass::S5));
    EXPECT_FALSE(satisfies(m, i.at(Label::component(1)), f));
}

TEST(ProveS5, AgreesWithClusterSemantics) {
    for (const auto& f : enumerate_formulas({"p", "q"}, 2)) {
        const auto out = prove_s5(Hypersequent::of(f), {.record_tree = false});
        if (out.derivable) {
            ASSERT_TRUE(s5_valid(f, 3)) << to_string(f);
        } else {
            const auto [m, i] = countermodel_s5(*out.witness);
            ASSERT_TRUE(validate_class(m, ModelClass::S5));
            ASSERT_FALSE(satisfies(m, i.at(Label::component(1)), f)) << to_string(f);
        }
    }
}

TEST(SaturatedS5, Examples) {
    EXPECT_TRUE(saturated_s5(H("p ; q")).saturated);
    EXPECT_FALSE(saturated_s5(H("q, true ; p")).saturated);
    const auto r = saturated_s5(H("<>p, p ; "));
    ASSERT_FALSE(r.saturated);
    EXPECT_EQ(r.redexes[0].rule, rule::k);
    EXPECT_FALSE(saturated_s5(H("<>p")).saturated);
    EXPECT_TRUE(saturated_s5(H("<>p, p")).saturated);
    EXPECT_FALSE(saturated_s5(H("[]p")).saturated);
    EXPECT_TRUE(saturated_s5(H("[]p ; p")).saturated);
    EXPECT_TRUE(saturated_s5(H("[]p, p")).saturated);
}

TEST(ApS5, Rows) {
    EXPECT_EQ(ap_s5(H("q ; r, true"), "p"), parse_multiformula("2: true"));
    EXPECT_EQ(ap_s5(H("q ; p, ~p"), "p"), parse_multiformula("2: true"));
    const auto both = ap_s5(H("p ; ~p"), "p");
    EXPECT_TRUE(cluster_equivalent(both, parse_multiformula("1: false"), 2));
    EXPECT_TRUE(cluster_equivalent(ap_s5(H("q"), "p"), parse_multiformula("1: q"), 1));
    EXPECT_EQ(forall_p_s5(F("[]p | []~p"), "p"), F("[]false"));
    EXPECT_THROW(ap_s5(H("<>[]p"), "p"), DepthError);
    try {
        ap_s5(H("q ; []<>p"), "p");
        FAIL();
    } catch (const DepthError& e) {
        EXPECT_EQ(e.offending(), F("[]<>p"));
        EXPECT_NE(std::string(e.what()).find("[] <> p"), std::string::npos);
    }
}

TEST(PropForallP, Examples) {
    EXPECT_EQ(prop_forall_p(F("p | q"), "p"), F("q"));
    EXPECT_EQ(prop_forall_p(F("q"), "p"), F("q"));
    EXPECT_EQ(prop_forall_p(F("p"), "p"), F("false"));
    EXPECT_THROW(prop_forall_p(F("<>p"), "p"), std::invalid_argument);
}

// ∀p f is the strongest p-free formula implying f: for p-free g,
// g → f is valid iff g → ∀p f is.
TEST(PropForallP, TruthTableCharacterisation) {
    const auto fs = enumerate_formulas({"p", "q", "r"}, 2, 0);
    std::vector<Formula> gs;
    for (const auto& g : enumerate_formulas({"q", "r"}, 1, 0)) gs.push_back(g);
    for (const auto& f : fs) {
        const Formula a = prop_forall_p(f, "p");
        ASSERT_FALSE(vars(a).count("p"));
        ASSERT_TRUE(oracle::prop_valid(oracle::implies(a, f))) << to_string(f);
        for (const auto& g : gs)
            ASSERT_EQ(oracle::prop_valid(oracle::implies(g, f)),
                      oracle::prop_valid(oracle::implies(g, a)))
                << to_string(f) << " / " << to_string(g);
    }
}

TEST(CountermodelS5, Examples) {
    const auto [m, i] = countermodel_s5(H("p ; q"));
    EXPECT_EQ(m.size(), 2);
    EXPECT_TRUE(validate_class(m, ModelClass::S5));
    EXPECT_FALSE(m.val("p", i.at(Label::component(1))));
    EXPECT_FALSE(m.val("q", i.at(Label::component(2))));
    EXPECT_FALSE(holds_hyper(m, i, H("p ; q")));

    const auto h = H("<>p, p");
    const auto [m2, i2] = countermodel_s5(h);
    EXPECT_FALSE(holds_hyper(m2, i2, h));
    for (int w = 0; w < m2.size(); ++w) EXPECT_FALSE(m2.val("p", w));

    EXPECT_THROW(countermodel_s5(H("q, true")), std::invalid_argument);
}

TEST(RefuteS5, EveryFalsifiedInterpolantIsRefuted) {
    Bounds b;
    b.max_connectives = 2;
    b.max_worlds = 3;
    b.witness_connectives = 2;
    b.random_sequents = 40;
    const Corpus c = gen_corpus(13, b);
    const auto models = enumerate_models(ModelClass::S5, 3, {"p", "q"});
    std::size_t runs = 0;
    for (const auto& h : c.hypersequents) {
        if (!saturated_s5(h).saturated) continue;
        const auto a = ap_s5(h, "p");
        for (const auto& m : models)
            for_each_interpretation(m, h, [&](const Interpretation& i) {
                if (meval(m, i, a)) {
                    EXPECT_TRUE(holds_hyper(m, i, h)) << h.to_string();
                    return true;
                }
                const auto r = refute_s5(h, "p", m, i);
                std::string why;
                EXPECT_TRUE(verify_refutation_s5(h, "p", m, i, r, &why)) << h.to_string() << ": "
                                                                         << why;
                ++runs;
                return true;
            });
    }
    EXPECT_GT(runs, 100u);
}
