#ifndef MODUI_SURGERY_HPP
#define MODUI_SURGERY_HPP

#include <map>
#include <optional>
#include <vector>

#include "modui/model.hpp"

namespace modui {

/// Result of duplicating or cloning M_w. Worlds of M keep their ids; the copy
/// u^c of each u ∈ W_w is appended and recorded in `copy_of`.
struct CopyResult {
    KripkeModel model;
    std::map<World, World> copy_of;
};

/// Result of replacing M_w by N. Worlds are renumbered: `from_m[u]` is the
/// new id of u ∉ W_w (nullopt for removed worlds), `from_n[x]` of x ∈ N.
struct ReplaceResult {
    KripkeModel model;
    std::vector<std::optional<World>> from_m;
    std::vector<World> from_n;
};

/// Worlds of the subtree M_w.
std::vector<World> subtree(const KripkeModel& m, World w);

/// Inserts a copy of M_w alongside it: each tree parent of w also sees w^c.
/// Requires a tree model and w not its root.
CopyResult duplicate(const KripkeModel& m, World w);
/// Inserts a copy of M_w as a child of w. Requires a tree model and w R w.
CopyResult clone_node(const KripkeModel& m, World w);
/// Replaces M_w with N (rooted at n_root); parents of w see n_root.
ReplaceResult replace_subtree(const KripkeModel& m, World w, const KripkeModel& n, World n_root);

}  // namespace modui

#endif
