#ifndef MODUI_LABEL_HPP
#define MODUI_LABEL_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace modui {

/// Address of a node in a nested sequent: the root is ⟨1⟩ and the n-th child
/// of σ is σ∗n. Hypersequent components use one-element labels ⟨k⟩.
class Label {
public:
    Label() : path_{1} {}
    explicit Label(std::vector<int> path);
    static Label root() { return Label(); }
    static Label component(int k) { return Label(std::vector<int>{k}); }
    /// Parses the dotted form "1.2.1".
    static Label parse(const std::string& text);

    Label child(int n) const;
    Label parent() const;
    bool is_root() const { return path_.size() == 1; }
    std::size_t depth() const { return path_.size() - 1; }
    int last() const { return path_.back(); }
    /// True iff this label equals `other` or is a descendant of it.
    bool extends(const Label& other) const;
    const std::vector<int>& path() const { return path_; }

    std::string to_string() const;

    friend bool operator==(const Label&, const Label&) = default;
    friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
        return a.path_ <=> b.path_;
    }

private:
    std::vector<int> path_;
};

struct LabelHash {
    std::size_t operator()(const Label& l) const {
        std::size_t h = 1469598103934665603ULL;
        for (int x : l.path()) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
        return h;
    }
};

}  // namespace modui

#endif
