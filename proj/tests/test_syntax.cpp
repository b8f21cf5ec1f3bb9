#include <gtest/gtest.h>

#include <random>

#include "modui/harness.hpp"
#include "modui/parser.hpp"
#include "oracle.hpp"

using namespace modui;

namespace {

Formula P() { return Formula::atom("p"); }
Formula Q() { return Formula::atom("q"); }
Formula nP() { return Formula::neg_atom("p"); }
Formula nQ() { return Formula::neg_atom("q"); }

}  // namespace

TEST(Parse, ImplicationIsNegatedAntecedentOrConsequent) {
    EXPECT_EQ(parse_formula("[]p -> p"), Formula::disj(Formula::dia(nP()), P()));
    EXPECT_EQ(parse_formula("p"), P());
    EXPECT_EQ(parse_formula("~(p & <>q)"), Formula::disj(nP(), Formula::box(nQ())));
}

TEST(Parse, Precedence) {
    EXPECT_EQ(parse_formula("p & q | p"), Formula::disj(Formula::conj(P(), Q()), P()));
    EXPECT_EQ(parse_formula("p -> q -> p"),
              Formula::disj(nP(), Formula::disj(nQ(), P())));
    EXPECT_EQ(parse_formula("~[]p"), Formula::dia(nP()));
    EXPECT_EQ(parse_formula("[]p & q"), Formula::conj(Formula::box(P()), Q()));
    EXPECT_EQ(parse_formula("~~p"), P());
    EXPECT_EQ(parse_formula("~true"), Formula::bot());
    EXPECT_EQ(parse_formula("x_1"), Formula::atom("x_1"));
}

TEST(Parse, ErrorsCarryPosition) {
    EXPECT_THROW(parse_formula("p &"), ParseError);
    EXPECT_THROW(parse_formula("(p"), ParseError);
    EXPECT_THROW(parse_formula("P"), ParseError);
    EXPECT_THROW(parse_formula(""), ParseError);
    try {
        parse_formula("p & & q");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(Negate, Examples) {
    EXPECT_EQ(negate(P()), nP());
    EXPECT_EQ(negate(Formula::disj(Formula::box(P()), Q())),
              Formula::conj(Formula::dia(nP()), nQ()));
    EXPECT_EQ(negate(Formula::bot()), Formula::top());
}

TEST(Vars, Examples) {
    EXPECT_EQ(vars(Formula::conj(P(), Formula::dia(nQ()))), (AtomSet{"p", "q"}));
    EXPECT_TRUE(vars(Formula::top()).empty());
    EXPECT_EQ(vars(parse_formula("[]p | []~p")), AtomSet{"p"});
}

TEST(ModalDepth, Examples) {
    EXPECT_EQ(modal_depth(P()), 0);
    EXPECT_EQ(modal_depth(parse_formula("[](p | <>q)")), 2);
    EXPECT_EQ(modal_depth(parse_formula("<>p & []q")), 1);
}

TEST(Syntax, NegationIsAnInvolutionAndPrintingRoundTrips) {
    const auto fs = enumerate_formulas({"p", "q"}, 3);
    ASSERT_GT(fs.size(), 10000u);
    for (const auto& f : fs) {
        ASSERT_EQ(negate(negate(f)), f) << to_string(f);
        ASSERT_EQ(parse_formula(to_string(f)), f) << to_string(f);
    }
    std::mt19937_64 rng(7);
    for (int k = 0; k < 500; ++k) {
        const Formula f = random_formula(rng, {"p", "q", "r"}, 8);
        ASSERT_EQ(parse_formula(to_string(f)), f) << to_string(f);
        ASSERT_EQ(negate(negate(f)), f);
    }
}

TEST(Syntax, FormulaAndNegationNeverBothTrue) {
    const auto fs = enumerate_formulas({"p"}, 2);
    for (const auto& fr : oracle::frames(oracle::Cls::K, 3, {"p"}))
        for (const auto& f : fs)
            for (int w = 0; w < fr.n; ++w)
                ASSERT_NE(oracle::eval(fr, w, f), oracle::eval(fr, w, negate(f))) << to_string(f);
}

TEST(Syntax, SimplifyFormulaPreservesTruth) {
    const auto fs = enumerate_formulas({"p"}, 3);
    const auto frs = oracle::frames(oracle::Cls::K, 3, {"p"});
    for (const auto& f : fs) {
        const Formula s = simplify_formula(f);
        for (const auto& fr : frs)
            for (int w = 0; w < fr.n; ++w)
                ASSERT_EQ(oracle::eval(fr, w, f), oracle::eval(fr, w, s)) << to_string(f);
    }
}
