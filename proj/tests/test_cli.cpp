#include <gtest/gtest.h>

#include <sstream>

#include "modui/cli.hpp"
#include "modui/harness.hpp"

using namespace modui;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "modui");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ProveT) {
    const Outcome r = run({"prove", "--logic", "T", "[]p -> p"});
    EXPECT_EQ(r.code, kDerivable);
    EXPECT_EQ(r.out,
              "DERIVABLE\n"
              "or  <> ~p | p\n"
              "  t  <> ~p | p, <> ~p, p\n"
              "    id_P  <> ~p | p, <> ~p, p, ~p\n");
}

TEST(Cli, ProveRefutableWithJson) {
    const Outcome r = run({"prove", "--logic", "k", "--format", "json", "[]p -> p"});
    EXPECT_EQ(r.code, kRefutable);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j.at("result"), "REFUTABLE");
    EXPECT_EQ(j.at("countermodel").at("worlds").size(), 1u);
}

TEST(Cli, InterpolateExamples) {
    Outcome r = run({"interpolate", "--logic", "K", "--forall", "p", "([]p) | ([]~p)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "[] false\n");
    r = run({"interpolate", "--logic", "K", "--forall", "p", "q"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "q\n");
    r = run({"interpolate", "--logic", "K", "--exists", "p", "p & q"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "q\n");
    r = run({"interpolate", "--logic", "K", "--forall", "p", "~p, <>q & <>p, [q]"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("1.1: q"), std::string::npos);
    r = run({"interpolate", "--logic", "S5", "--forall", "p", "[]p | []~p"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "[] false\n");
}

TEST(Cli, InterpolateTraceAndJson) {
    Outcome r = run({"interpolate", "--logic", "K", "--forall", "p", "--trace", "~p, <>q & <>p, [q]"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("saturated"), std::string::npos);
    r = run({"interpolate", "--logic", "D", "--forall", "p", "--format", "json", "[]p"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NO_THROW(Json::parse(r.out));
}

TEST(Cli, ErrorsAndExitCodes) {
    EXPECT_EQ(run({"prove", "p &"}).code, kUsage);
    EXPECT_EQ(run({"prove", "--logic", "K4", "p"}).code, kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kUsage);
    EXPECT_EQ(run({"interpolate", "--logic", "K", "p"}).code, kUsage);
    EXPECT_EQ(run({"interpolate", "--forall", "p", "--exists", "p", "p"}).code, kUsage);
    const Outcome d = run({"interpolate", "--logic", "S5", "--forall", "p", "<>[]p"});
    EXPECT_EQ(d.code, kDepth);
    EXPECT_NE(d.err.find("<> [] p"), std::string::npos);
    const Outcome p = run({"prove", "p & & q"});
    EXPECT_NE(p.err.find("parse error"), std::string::npos);
}

TEST(Cli, CountermodelAndNormalize) {
    Outcome r = run({"countermodel", "--logic", "S5", "p -> []p"});
    EXPECT_EQ(r.code, kRefutable);
    EXPECT_EQ(Json::parse(r.out).at("countermodel").at("worlds").size(), 2u);
    r = run({"countermodel", "--logic", "T", "--format", "dot", "[]p -> p"});
    EXPECT_EQ(r.code, kDerivable);
    r = run({"normalize", "1: p || 1: q"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("scnf: 1: p | q"), std::string::npos);
    r = run({"normalize", "~([]p & q)"});
    EXPECT_EQ(r.out, "nnf: <> ~p | ~q\niota: <> ~p | ~q\n");
}

TEST(Cli, Verify) {
    Outcome r = run({"verify", "--suite", "lemma7", "--suite", "thm3", "--max-connectives", "1",
                 "--max-worlds", "2", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j.size(), 2u);
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, kUsage);
}
