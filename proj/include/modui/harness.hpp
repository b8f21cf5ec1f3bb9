#ifndef MODUI_HARNESS_HPP
#define MODUI_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "modui/formula.hpp"
#include "modui/model.hpp"
#include "modui/multiformula.hpp"
#include "modui/s5.hpp"
#include "modui/sequent.hpp"

namespace modui {

using Json = nlohmann::ordered_json;

struct Bounds {
    int max_connectives = 3;
    int max_atoms = 2;  // atoms are taken from p, q, r, s in order
    int max_worlds = 3;
    /// Random formulas with more connectives than the exhaustive part.
    int random_formulas = 0;
    /// Random nested sequents (≤3 nodes) and hypersequents (≤3 components).
    int random_sequents = 100;
    /// Exhaustive formulas up to this many connectives seed the saturated
    /// sequents (open proof-search branches).
    int witness_connectives = 2;
    int lemma14_cases = 200;
};

struct Corpus {
    std::uint64_t seed = 0;
    Bounds bounds;
    std::vector<std::string> atoms;
    std::vector<Formula> formulas;
    std::vector<NestedSequent> sequents;
    std::vector<Hypersequent> hypersequents;
    std::map<ModelClass, std::vector<KripkeModel>> models;
};

/// Every NNF formula over `atoms` with at most `max_connectives` of ∧ ∨ □ ◇
/// (leaves: literals, ⊥, ⊤), ordered by size. `max_depth` < 0 means no
/// modal depth limit.
std::vector<Formula> enumerate_formulas(const std::vector<std::string>& atoms, int max_connectives,
                                        int max_depth = -1);
Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                       int connectives, int max_depth = -1);

/// Throws std::invalid_argument unless all bounds are positive.
Corpus gen_corpus(std::uint64_t seed, const Bounds& bounds);

/// Truth tables of formulas over a fixed bank of pointed models, packed as
/// bits per world. Subformula tables are memoized.
class Bank {
public:
    explicit Bank(const std::vector<KripkeModel>& models);

    using Bits = std::vector<std::uint64_t>;
    const Bits& table(const Formula& f);
    /// No bank world satisfies a but not b.
    bool entails(const Formula& a, const Formula& b);
    /// Some bank world falsifies f.
    bool refutes(const Formula& f);
    /// First bank world satisfying a but not b.
    std::optional<int> counterexample(const Formula& a, const Formula& b);
    /// (model index, world) of a bank world.
    std::pair<std::size_t, World> locate(int world) const;
    std::size_t worlds() const { return static_cast<std::size_t>(world_count_); }

private:
    int world_count_ = 0;
    std::vector<int> offsets_;
    std::vector<std::vector<int>> succ_;
    std::map<std::string, Bits> atoms_;
    std::unordered_map<Formula, Bits, FormulaHash> memo_;
};

struct Report {
    std::string suite;
    std::size_t total = 0;
    std::size_t failures = 0;
    std::optional<Json> first_counterexample;
    double seconds = 0;

    bool ok() const { return failures == 0; }
    std::string text() const;
    Json json() const;
};

struct SuiteOptions {
    /// Applied to every interpolant before it is checked (mutation testing).
    std::function<Multiformula(const Multiformula&)> mutate;
    std::string mutation_name;
    /// Upper bound on model size for the semantic suites; 0 means the corpus bound.
    int max_worlds = 0;
};

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite.
Report run_suite(const std::string& name, const Corpus& corpus, const SuiteOptions& opt = {});

/// Drops the first conjunct of a top-level meta-conjunction.
Multiformula drop_first_conjunct(const Multiformula& m);
/// Replaces any interpolant by 1:⊥.
Multiformula constant_false(const Multiformula& m);

/// Re-runs the check recorded in a counterexample; true iff it fails again.
bool replay(const Json& counterexample);

}  // namespace modui

#endif
