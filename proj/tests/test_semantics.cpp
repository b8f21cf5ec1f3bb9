#include <gtest/gtest.h>

#include "modui/bisimulation.hpp"
#include "modui/harness.hpp"
#include "modui/model.hpp"
#include "modui/parser.hpp"
#include "modui/surgery.hpp"
#include "oracle.hpp"

using namespace modui;

namespace {

Label L(const char* s) { return Label::parse(s); }

KripkeModel chain(int n, bool reflexive) {
    KripkeModel m(n);
    for (int w = 0; w + 1 < n; ++w) m.add_edge(w, w + 1);
    if (reflexive)
        for (int w = 0; w < n; ++w) m.add_edge(w, w);
    m.set_root(0);
    return m;
}

}  // namespace

TEST(Satisfies, Examples) {
    KripkeModel one(1);
    EXPECT_TRUE(satisfies(one, 0, Formula::top()));
    EXPECT_TRUE(satisfies(one, 0, parse_formula("[]false")));
    EXPECT_FALSE(satisfies(one, 0, parse_formula("<>true")));
    KripkeModel loop(1);
    loop.add_edge(0, 0);
    loop.set_val("p", 0, true);
    EXPECT_TRUE(satisfies(loop, 0, parse_formula("<>p")));
    EXPECT_THROW(satisfies(one, 3, Formula::top()), std::out_of_range);
}

TEST(Satisfies, AgreesWithOracle) {
    const auto fs = enumerate_formulas({"p", "q"}, 2);
    for (auto c : {oracle::Cls::K, oracle::Cls::T, oracle::Cls::S5}) {
        for (const auto& fr : oracle::frames(c, 3, {"p", "q"})) {
            const KripkeModel m = oracle::to_model(fr);
            for (const auto& f : fs) {
                const auto ext = extension(m, f);
                for (int w = 0; w < fr.n; ++w) {
                    const bool want = oracle::eval(fr, w, f);
                    ASSERT_EQ(satisfies(m, w, f), want) << to_string(f);
                    ASSERT_EQ(static_cast<bool>(ext[w]), want) << to_string(f);
                }
            }
        }
    }
}

TEST(ValidateClass, Examples) {
    KripkeModel one(1);
    EXPECT_TRUE(validate_class(one, ModelClass::K));
    EXPECT_FALSE(validate_class(one, ModelClass::D));
    EXPECT_FALSE(validate_class(one, ModelClass::T));
    KripkeModel two(2);
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) two.add_edge(u, v);
    EXPECT_TRUE(validate_class(two, ModelClass::S5));
    EXPECT_FALSE(validate_class(two, ModelClass::K));
    EXPECT_TRUE(validate_class(chain(3, true), ModelClass::T));
    KripkeModel d = chain(3, false);
    d.add_edge(2, 2);
    EXPECT_TRUE(validate_class(d, ModelClass::D));
    EXPECT_FALSE(validate_class(d, ModelClass::K));
    EXPECT_FALSE(validate_class(chain(3, true), ModelClass::D));
}

TEST(ValidateClass, OracleFramesBelongToTheirClass) {
    const std::pair<oracle::Cls, ModelClass> cs[] = {{oracle::Cls::K, ModelClass::K},
                                                     {oracle::Cls::D, ModelClass::D},
                                                     {oracle::Cls::T, ModelClass::T},
                                                     {oracle::Cls::S5, ModelClass::S5}};
    for (auto [oc, mc] : cs)
        for (const auto& fr : oracle::frames(oc, 4, {}))
            for (auto [oc2, mc2] : cs)
                // The reflexive singleton is a D-, T- and S5-model at once.
                EXPECT_EQ(validate_class(oracle::to_model(fr), mc2),
                          oc == oc2 || (fr.n == 1 && oc != oracle::Cls::K &&
                                        oc2 != oracle::Cls::K));
}

TEST(Enumerate, Counts) {
    EXPECT_EQ(enumerate_models(ModelClass::K, 1, {"p"}).size(), 2u);
    EXPECT_EQ(enumerate_models(ModelClass::T, 1, {}).size(), 1u);
    const auto s5 = enumerate_models(ModelClass::S5, 2, {}, 2);
    ASSERT_EQ(s5.size(), 1u);
    EXPECT_EQ(s5[0].edges().size(), 4u);
    // Unlabelled rooted trees with 1..4 nodes: 1 + 1 + 2 + 4.
    EXPECT_EQ(enumerate_models(ModelClass::K, 4, {}).size(), 8u);
}

// Every oracle frame has a same-size bisimilar counterpart in the
// enumeration, and every enumerated model is in its class.
TEST(Enumerate, CoversEveryShape) {
    const std::pair<oracle::Cls, ModelClass> cs[] = {{oracle::Cls::K, ModelClass::K},
                                                     {oracle::Cls::D, ModelClass::D},
                                                     {oracle::Cls::T, ModelClass::T},
                                                     {oracle::Cls::S5, ModelClass::S5}};
    for (auto [oc, mc] : cs) {
        const auto ms = enumerate_models(mc, 3, {"p"});
        for (const auto& m : ms) ASSERT_TRUE(validate_class(m, mc));
        for (const auto& fr : oracle::frames(oc, 3, {"p"})) {
            const KripkeModel m = oracle::to_model(fr);
            bool found = false;
            for (const auto& e : ms) {
                if (e.size() != m.size()) continue;
                for (int x = 0; x < e.size() && !found; ++x)
                    found = find_bisim(m, 0, e, x, "_none_").has_value();
                if (found) break;
            }
            ASSERT_TRUE(found) << model_to_json(m);
        }
    }
}

TEST(HoldsSequent, Examples) {
    KripkeModel m(1);
    const Interpretation i{{L("1"), 0}};
    EXPECT_TRUE(holds_sequent(m, i, parse_sequent("true")));
    EXPECT_FALSE(holds_sequent(m, i, parse_sequent("p")));
    m.set_val("p", 0, true);
    EXPECT_TRUE(holds_sequent(m, i, parse_sequent("p")));
    EXPECT_THROW(holds_sequent(m, {{L("1"), 0}, {L("1.1"), 0}}, parse_sequent("p, [q]")),
                 std::invalid_argument);
}

TEST(Interpretations, TreelikeEnumerationMatchesOracle) {
    const auto g = parse_sequent("p, [q, [p]], [ ]");
    for (const auto& fr : oracle::frames(oracle::Cls::T, 3, {})) {
        const KripkeModel m = oracle::to_model(fr);
        std::set<Interpretation> mine, theirs;
        for_each_interpretation(m, g, [&](const Interpretation& i) {
            EXPECT_TRUE(is_interpretation(m, g, i));
            mine.insert(i);
            return true;
        });
        oracle::for_each_interp(fr, labels(g), true,
                                [&](const oracle::Interp& i) { theirs.insert(i); });
        ASSERT_EQ(mine, theirs);
    }
}

TEST(Bisim, Examples) {
    const KripkeModel m = chain(3, false);
    EXPECT_TRUE(find_bisim(m, 0, m, 0, "p"));
    KripkeModel a(1), b(1), c(1);
    b.set_val("p", 0, true);
    c.set_val("q", 0, true);
    EXPECT_TRUE(find_bisim(a, 0, b, 0, "p"));
    EXPECT_FALSE(find_bisim(a, 0, c, 0, "p"));
    EXPECT_FALSE(find_bisim(a, 0, b, 0, "q"));
    // Chains of different length are told apart by □⊥ depth.
    EXPECT_FALSE(find_bisim(chain(2, false), 0, chain(3, false), 0, "p"));
    EXPECT_TRUE(find_bisim(chain(2, true), 0, chain(3, true), 0, "p"));
    const auto z = find_bisim(chain(2, true), 0, chain(3, true), 0, "p");
    EXPECT_TRUE(is_bisimulation(chain(2, true), chain(3, true), z->pairs, "p"));
    EXPECT_FALSE(is_bisimulation(chain(2, false), chain(3, false), {{0, 0}, {1, 1}}, "p"));
}

// Bisimilar pointed models agree on every p-free formula.
TEST(Bisim, PreservesPFreeFormulas) {
    std::vector<Formula> pfree;
    for (const auto& f : enumerate_formulas({"p", "q"}, 2))
        if (!vars(f).count("p")) pfree.push_back(f);
    const auto ms = enumerate_models(ModelClass::T, 3, {"p", "q"});
    for (std::size_t a = 0; a < ms.size(); a += 7)
        for (std::size_t b = 0; b < ms.size(); b += 5) {
            const auto eq = greatest_bisimulation(ms[a], ms[b], "p");
            for (int u = 0; u < ms[a].size(); ++u)
                for (int v = 0; v < ms[b].size(); ++v) {
                    if (!eq[u][v]) continue;
                    for (const auto& f : pfree)
                        ASSERT_EQ(satisfies(ms[a], u, f), satisfies(ms[b], v, f));
                }
        }
}

TEST(Surgery, DuplicateLeaf) {
    KripkeModel m(2);
    m.add_edge(0, 1);
    m.set_val("p", 1, true);
    m.set_root(0);
    const auto d = duplicate(m, 1);
    ASSERT_EQ(d.model.size(), 3);
    const World c2 = d.copy_of.at(1);
    EXPECT_TRUE(d.model.has_edge(0, 1));
    EXPECT_TRUE(d.model.has_edge(0, c2));
    EXPECT_TRUE(d.model.val("p", c2));
    EXPECT_TRUE(validate_class(d.model, ModelClass::K));
    EXPECT_TRUE(find_bisim(m, 0, d.model, 0, "p"));
    EXPECT_TRUE(find_bisim(m, 1, d.model, c2, "p"));
    EXPECT_THROW(duplicate(m, 0), std::invalid_argument);
}

TEST(Surgery, CloneReflexiveLeaf) {
    KripkeModel t = chain(2, true);
    t.set_val("q", 1, true);
    const auto c = clone_node(t, 1);
    EXPECT_TRUE(validate_class(c.model, ModelClass::T));
    EXPECT_TRUE(c.model.has_edge(1, c.copy_of.at(1)));
    EXPECT_TRUE(find_bisim(t, 0, c.model, 0, "p"));
    EXPECT_THROW(clone_node(chain(2, false), 1), std::invalid_argument);

    KripkeModel d = chain(2, false);
    d.add_edge(1, 1);
    ASSERT_TRUE(validate_class(d, ModelClass::D));
    const auto broken = clone_node(d, 1);
    EXPECT_FALSE(validate_class(broken.model, ModelClass::D));
    EXPECT_TRUE(find_bisim(d, 0, broken.model, 0, "p"));
}

TEST(Surgery, ReplaceByBisimilarSubtree) {
    KripkeModel m = chain(3, true);
    m.set_val("q", 2, true);
    m.set_val("q", 1, true);
    KripkeModel n(1);
    n.add_edge(0, 0);
    n.set_val("q", 0, true);
    n.set_val("p", 0, true);
    n.set_root(0);
    const auto r = replace_subtree(m, 1, n, 0);
    EXPECT_TRUE(validate_class(r.model, ModelClass::T));
    EXPECT_EQ(r.model.size(), 2);
    EXPECT_FALSE(r.from_m[1].has_value());
    EXPECT_FALSE(r.from_m[2].has_value());
    EXPECT_TRUE(find_bisim(m, 0, r.model, *r.from_m[0], "p"));
    EXPECT_TRUE(find_bisim(m, 1, r.model, r.from_n[0], "p"));
}

TEST(ModelText, JsonRoundTripAndDot) {
    KripkeModel m = chain(3, true);
    m.set_val("p", 1, true);
    m.set_val("q", 2, false);
    const std::string j = model_to_json(m);
    EXPECT_EQ(model_from_json(j), m);
    const auto parsed = Json::parse(j);
    EXPECT_EQ(parsed.at("worlds").size(), 3u);
    EXPECT_EQ(parsed.at("root"), 0);
    EXPECT_NE(model_to_dot(m).find("digraph"), std::string::npos);
    EXPECT_THROW(model_from_json("{\"worlds\":[0],\"rel\":[[0,5]]}"), std::invalid_argument);
}
