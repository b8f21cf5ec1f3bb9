#include "modui/label.hpp"

#include <stdexcept>

namespace modui {

Label::Label(std::vector<int> path) : path_(std::move(path)) {
    if (path_.empty()) throw std::invalid_argument("empty label");
    for (int x : path_)
        if (x < 1) throw std::invalid_argument("label components must be positive");
}

Label Label::parse(const std::string& text) {
    std::vector<int> path;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find('.', i);
        if (j == std::string::npos) j = text.size();
        const std::string part = text.substr(i, j - i);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed label '" + text + "'");
        path.push_back(std::stoi(part));
        i = j + 1;
    }
    return Label(std::move(path));
}

Label Label::child(int n) const {
    Label out = *this;
    out.path_.push_back(n);
    return out;
}

Label Label::parent() const {
    if (is_root()) throw std::logic_error("root label has no parent");
    Label out = *this;
    out.path_.pop_back();
    return out;
}

bool Label::extends(const Label& other) const {
    if (other.path_.size() > path_.size()) return false;
    for (std::size_t i = 0; i < other.path_.size(); ++i)
        if (path_[i] != other.path_[i]) return false;
    return true;
}

std::string Label::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < path_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(path_[i]);
    }
    return out;
}

}  // namespace modui
