#ifndef MODUI_PARSER_HPP
#define MODUI_PARSER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include "modui/formula.hpp"

namespace modui {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at offset " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parses the full ASCII language (with ~ and ->) and returns its NNF.
///
///   f ::= false | true | atom | ~f | f & f | f | f | f -> f | [] f | <> f | (f)
///
/// Precedence: ~ [] <> bind tightest, then &, then |, then -> (right
/// associative). & and | associate to the left.
Formula parse_formula(const std::string& text);

}  // namespace modui

#endif
