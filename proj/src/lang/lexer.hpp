#pragma once

#include "flyfast/lang/diagnostic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace flyfast::lang::detail {

enum class Tok
{
    ident,
    number,
    define,    // :=
    prob_def,  // ::
    implies,   // =>
    less_eq,   // <=
    greater_eq, // >=
    less,
    greater,
    equals,
    plus,
    minus,
    star,
    slash,
    dot,
    semicolon,
    comma,
    lparen,
    rparen,
    lbracket,
    rbracket,
    bang,
    amp,
    pipe,
    end,
};

struct Token
{
    Tok kind;
    std::string text;
    SourceLoc loc;
    double number = 0.0;      // for Tok::number
    bool integral = false;    // number written without '.' or exponent
};

[[nodiscard]] std::string_view describe(Tok kind);

// Throws SpecError(lexical-error) at the first character that starts no token.
// `line_offset` shifts reported lines (used when lexing one line of a file).
[[nodiscard]] std::vector<Token> tokenize(std::string_view text, std::uint32_t line_offset = 0);

// Cursor over a token vector with the error helpers both parsers share.
class TokenStream
{
public:
    explicit TokenStream(std::vector<Token> tokens) : _tokens{ std::move(tokens) } {}

    [[nodiscard]] const Token& peek(std::size_t ahead = 0) const;
    [[nodiscard]] bool at(Tok kind) const { return peek().kind == kind; }
    [[nodiscard]] bool at_ident(std::string_view text) const;
    const Token& advance();
    bool accept(Tok kind);
    const Token& expect(Tok kind, std::string_view context);
    const Token& expect_ident(std::string_view context);

    [[noreturn]] void fail(std::string message) const;
    [[noreturn]] void fail_at(const Token& token, std::string message) const;

private:
    std::vector<Token> _tokens;
    std::size_t _pos = 0;
};

} // namespace flyfast::lang::detail
