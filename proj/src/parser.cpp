#include "modui/parser.hpp"

#include <cctype>

#include "lexer.hpp"

namespace modui {
namespace detail {

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto push = [&](Tok k, std::size_t len) {
        out.push_back({k, text.substr(i, len), i});
        i += len;
    };
    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const char d = i + 1 < n ? text[i + 1] : '\0';
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i;
            while (j < n && (std::islower(static_cast<unsigned char>(text[j])) ||
                             std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string word = text.substr(i, j - i);
            Tok k = word == "false" ? Tok::False : word == "true" ? Tok::True : Tok::Ident;
            push(k, j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < n && (std::isdigit(static_cast<unsigned char>(text[j])) ||
                             (text[j] == '.' && j + 1 < n &&
                              std::isdigit(static_cast<unsigned char>(text[j + 1])))))
                ++j;
            push(Tok::Number, j - i);
        } else if (c == '&') {
            d == '&' ? push(Tok::MAnd, 2) : push(Tok::And, 1);
        } else if (c == '|') {
            d == '|' ? push(Tok::MOr, 2) : push(Tok::Or, 1);
        } else if (c == '-' && d == '>') {
            push(Tok::Imp, 2);
        } else if (c == '<' && d == '>') {
            push(Tok::Dia, 2);
        } else if (c == '[' && d == ']') {
            push(Tok::Box, 2);
        } else if (c == '~') {
            push(Tok::Not, 1);
        } else if (c == '(') {
            push(Tok::LParen, 1);
        } else if (c == ')') {
            push(Tok::RParen, 1);
        } else if (c == '[') {
            push(Tok::LBrack, 1);
        } else if (c == ']') {
            push(Tok::RBrack, 1);
        } else if (c == ',') {
            push(Tok::Comma, 1);
        } else if (c == ';') {
            push(Tok::Semi, 1);
        } else if (c == ':') {
            push(Tok::Colon, 1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
    }
    out.push_back({Tok::End, "", n});
    return out;
}

const char* describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "atom";
        case Tok::Number: return "label";
        case Tok::False: return "'false'";
        case Tok::True: return "'true'";
        case Tok::Not: return "'~'";
        case Tok::And: return "'&'";
        case Tok::Or: return "'|'";
        case Tok::Imp: return "'->'";
        case Tok::Box: return "'[]'";
        case Tok::Dia: return "'<>'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrack: return "'['";
        case Tok::RBrack: return "']'";
        case Tok::Comma: return "','";
        case Tok::Semi: return "';'";
        case Tok::Colon: return "':'";
        case Tok::MAnd: return "'&&'";
        case Tok::MOr: return "'||'";
        case Tok::End: return "end of input";
    }
    return "?";
}

Token TokenStream::expect(Tok t) {
    if (!at(t)) fail(std::string("expected ") + describe(t) + ", found " + describe(peek().kind));
    return next();
}

void TokenStream::fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

Formula TokenStream::formula() { return implication(); }

Formula TokenStream::implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Imp)) return Formula::disj(negate(lhs), implication());
    return lhs;
}

Formula TokenStream::disjunction() {
    Formula acc = conjunction();
    while (accept(Tok::Or)) acc = Formula::disj(acc, conjunction());
    return acc;
}

Formula TokenStream::conjunction() {
    Formula acc = unary();
    while (accept(Tok::And)) acc = Formula::conj(acc, unary());
    return acc;
}

Formula TokenStream::unary() {
    const Token t = peek();
    switch (t.kind) {
        case Tok::Not: next(); return negate(unary());
        case Tok::Box: next(); return Formula::box(unary());
        case Tok::Dia: next(); return Formula::dia(unary());
        case Tok::False: next(); return Formula::bot();
        case Tok::True: next(); return Formula::top();
        case Tok::Ident: next(); return Formula::atom(t.text);
        case Tok::LParen: {
            next();
            Formula f = implication();
            expect(Tok::RParen);
            return f;
        }
        default:
            fail(std::string("expected a formula, found ") + describe(t.kind));
    }
}

}  // namespace detail

Formula parse_formula(const std::string& text) {
    detail::TokenStream ts(text);
    Formula f = ts.formula();
    if (!ts.at(detail::Tok::End))
        ts.fail(std::string("unexpected ") + detail::describe(ts.peek().kind));
    return f;
}

}  // namespace modui
