// Internal tokenizer and formula sub-parser shared by all text formats.
#ifndef MODUI_SRC_LEXER_HPP
#define MODUI_SRC_LEXER_HPP

#include <string>
#include <vector>

#include "modui/formula.hpp"
#include "modui/parser.hpp"

namespace modui {
class NestedSequent;
}

namespace modui::detail {

enum class Tok {
    Ident,
    Number,  // dotted label path, e.g. 1.2.1
    False,
    True,
    Not,
    And,
    Or,
    Imp,
    Box,
    Dia,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Semi,
    Colon,
    MAnd,  // &&
    MOr,   // ||
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& text);
const char* describe(Tok t);

class TokenStream {
public:
    explicit TokenStream(const std::string& text) : toks_(tokenize(text)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = idx_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok t) const { return peek().kind == t; }
    Token next() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }
    bool accept(Tok t) {
        if (!at(t)) return false;
        next();
        return true;
    }
    Token expect(Tok t);
    [[noreturn]] void fail(const std::string& msg) const;

    /// Parses one formula (full surface language) and returns its NNF.
    Formula formula();

private:
    Formula implication();
    Formula disjunction();
    Formula conjunction();
    Formula unary();

    std::vector<Token> toks_;
    std::size_t idx_ = 0;
};

/// Parses comma-separated sequent items into `node` until a token that cannot
/// start an item (`]`, `;` or end of input).
void parse_sequent_items(TokenStream& ts, NestedSequent& g, std::size_t node);

}  // namespace modui::detail

#endif
