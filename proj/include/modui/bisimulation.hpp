#ifndef MODUI_BISIMULATION_HPP
#define MODUI_BISIMULATION_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modui/model.hpp"

namespace modui {

/// A bisimulation up to `exempt` between two models; pairs are (world of
/// the first model, world of the second).
struct Bisimulation {
    std::string exempt;
    std::set<std::pair<World, World>> pairs;
};

/// Greatest bisimulation up to p between a and b, by partition refinement
/// over the disjoint union. Entry [u][v] is true iff u ∼_p v.
std::vector<std::vector<char>> greatest_bisimulation(const KripkeModel& a, const KripkeModel& b,
                                                     const std::string& p);

/// The greatest bisimulation up to p restricted to the worlds reachable from
/// w and w2, if it relates them.
std::optional<Bisimulation> find_bisim(const KripkeModel& a, World w, const KripkeModel& b,
                                       World w2, const std::string& p);

/// Checks the atoms_p, forth and back clauses for an explicit relation.
bool is_bisimulation(const KripkeModel& a, const KripkeModel& b,
                     const std::set<std::pair<World, World>>& z, const std::string& p);

/// (a, i) ∼_p (b, j): same domain and each label's images are p-bisimilar.
bool bisimilar_interpretations(const KripkeModel& a, const Interpretation& i,
                               const KripkeModel& b, const Interpretation& j,
                               const std::string& p);

}  // namespace modui

#endif
