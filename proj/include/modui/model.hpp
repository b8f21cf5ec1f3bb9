#ifndef MODUI_MODEL_HPP
#define MODUI_MODEL_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modui/formula.hpp"
#include "modui/label.hpp"
#include "modui/multiformula.hpp"
#include "modui/sequent.hpp"

namespace modui {

using World = int;
/// Multiworld interpretation: sequent (or hypersequent) labels to worlds.
using Interpretation = std::map<Label, World>;

enum class ModelClass { K, D, T, S5 };

const char* to_string(ModelClass c);
ModelClass parse_model_class(const std::string& s);
ModelClass model_class(Logic l);

/// Finite Kripke model with worlds 0..n-1.
class KripkeModel {
public:
    KripkeModel() = default;
    explicit KripkeModel(int worlds);

    int size() const { return static_cast<int>(succ_.size()); }
    bool has_world(World w) const { return w >= 0 && w < size(); }
    World add_world();

    void add_edge(World u, World v);
    void remove_edge(World u, World v);
    bool has_edge(World u, World v) const;
    /// Sorted successor list.
    const std::vector<World>& successors(World w) const { return succ_.at(w); }
    std::vector<std::pair<World, World>> edges() const;

    bool val(const std::string& atom, World w) const;
    void set_val(const std::string& atom, World w, bool value);
    /// Atoms with a valuation entry (possibly everywhere false).
    AtomSet atoms() const;
    const std::map<std::string, std::vector<bool>>& valuation() const { return val_; }

    std::optional<World> root() const { return root_; }
    void set_root(std::optional<World> r) { root_ = r; }

    friend bool operator==(const KripkeModel& a, const KripkeModel& b);

private:
    void check(World w) const;
    std::vector<std::vector<World>> succ_;
    std::map<std::string, std::vector<bool>> val_;
    std::optional<World> root_;
};

bool satisfies(const KripkeModel& m, World w, const Formula& f);
/// Truth value of f at every world (bottom-up over subformulas).
std::vector<char> extension(const KripkeModel& m, const Formula& f);
bool valid_in(const KripkeModel& m, const Formula& f);

/// Treelike: I(σ) R I(σ∗n) whenever both labels are in the domain, and the
/// domain covers labels(g).
bool is_interpretation(const KripkeModel& m, const NestedSequent& g, const Interpretation& i);
/// Calls fn on every treelike interpretation of g into m; fn returns false
/// to stop early. Returns false iff stopped.
bool for_each_interpretation(const KripkeModel& m, const NestedSequent& g,
                             const std::function<bool(const Interpretation&)>& fn);
/// Some σ:φ ∈ g with m, I(σ) ⊨ φ. Throws std::invalid_argument on an
/// invalid interpretation.
bool holds_sequent(const KripkeModel& m, const Interpretation& i, const NestedSequent& g);
/// Throws std::invalid_argument if a label of mf is not interpreted.
bool meval(const KripkeModel& m, const Interpretation& i, const Multiformula& mf);

/// Root of the tree underlying m (self-loops ignored): every world but the
/// root has exactly one non-self predecessor and is reachable from it. If m
/// carries a root it must be that world.
std::optional<World> tree_root(const KripkeModel& m);
/// Tree parent (the unique non-self predecessor), if any.
std::optional<World> tree_parent(const KripkeModel& m, World w);
/// Worlds reachable from w, w first, in breadth-first order.
std::vector<World> reachable(const KripkeModel& m, World w);
bool is_leaf(const KripkeModel& m, World w);

/// K: irreflexive tree; T: reflexive tree; D: tree whose leaves are
/// reflexive and whose other worlds are irreflexive; S5: total relation.
bool validate_class(const KripkeModel& m, ModelClass c);

/// The submodel generated by w, renumbered with w as world 0 and root.
/// `old_of_new`, if given, receives the original id of each new world.
KripkeModel generated_submodel(const KripkeModel& m, World w,
                               std::vector<World>* old_of_new = nullptr);

/// All class models with min_worlds..max_worlds worlds over `atoms`, up to
/// isomorphism. Tree classes are rooted at world 0.
std::vector<KripkeModel> enumerate_models(ModelClass c, int max_worlds, const AtomSet& atoms,
                                          int min_worlds = 1);

/// {"worlds":[...], "rel":[[u,v],...], "val":{"p":[...]}, "root":u}
std::string model_to_json(const KripkeModel& m);
KripkeModel model_from_json(const std::string& text);
std::string model_to_dot(const KripkeModel& m, const Interpretation* i = nullptr);
std::string to_string(const Interpretation& i);

}  // namespace modui

#endif
