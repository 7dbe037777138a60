#include "lexer.hpp"

#include <charconv>
#include <cstdio>

namespace flyfast::lang::detail {

namespace {

bool is_ident_start(char c)
{
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

std::string printable(char c)
{
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f)
        return std::string{ '\'', c, '\'' };
    char buf[8];
    std::snprintf(buf, sizeof buf, "0x%02x", u);
    return buf;
}

} // namespace

std::string_view describe(Tok kind)
{
    switch (kind) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::define: return "':='";
    case Tok::prob_def: return "'::'";
    case Tok::implies: return "'=>'";
    case Tok::less_eq: return "'<='";
    case Tok::greater_eq: return "'>='";
    case Tok::less: return "'<'";
    case Tok::greater: return "'>'";
    case Tok::equals: return "'='";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::dot: return "'.'";
    case Tok::semicolon: return "';'";
    case Tok::comma: return "','";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::bang: return "'!'";
    case Tok::amp: return "'&'";
    case Tok::pipe: return "'|'";
    case Tok::end: return "end of input";
    }
    return "token";
}

std::vector<Token> tokenize(std::string_view text, std::uint32_t line_offset)
{
    std::vector<Token> out;
    std::uint32_t line = 1 + line_offset;
    std::uint32_t col = 1;
    std::size_t i = 0;

    auto bump = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto emit = [&](Tok kind, std::size_t len) {
        Token t{ kind, std::string{ text.substr(i, len) }, { line, col } };
        out.push_back(std::move(t));
        bump(len);
    };

    while (i < text.size()) {
        const char c = text[i];
        const char n = i + 1 < text.size() ? text[i + 1] : '\0';

        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            bump(1);
            continue;
        }
        if (c == '/' && n == '/') {
            while (i < text.size() && text[i] != '\n')
                bump(1);
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t len = 1;
            while (i + len < text.size() && is_ident_char(text[i + len]))
                ++len;
            emit(Tok::ident, len);
            continue;
        }
        if (is_digit(c)) {
            std::size_t len = 0;
            bool integral = true;
            while (i + len < text.size() && is_digit(text[i + len]))
                ++len;
            if (i + len + 1 < text.size() && text[i + len] == '.' && is_digit(text[i + len + 1])) {
                integral = false;
                ++len;
                while (i + len < text.size() && is_digit(text[i + len]))
                    ++len;
            }
            if (i + len < text.size() && (text[i + len] == 'e' || text[i + len] == 'E')) {
                std::size_t k = len + 1;
                if (i + k < text.size() && (text[i + k] == '+' || text[i + k] == '-'))
                    ++k;
                if (i + k < text.size() && is_digit(text[i + k])) {
                    integral = false;
                    while (i + k < text.size() && is_digit(text[i + k]))
                        ++k;
                    len = k;
                }
            }
            const auto literal = text.substr(i, len);
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), value);
            if (ec != std::errc{} || ptr != literal.data() + literal.size())
                throw SpecError{ make_diagnostic(ErrorCode::lexical_error, { line, col },
                                                 "malformed number '" + std::string{ literal } + "'") };
            Token t{ Tok::number, std::string{ literal }, { line, col }, value, integral };
            out.push_back(std::move(t));
            bump(len);
            continue;
        }

        switch (c) {
        case ':':
            if (n == '=') { emit(Tok::define, 2); continue; }
            if (n == ':') { emit(Tok::prob_def, 2); continue; }
            break;
        case '=':
            if (n == '>') { emit(Tok::implies, 2); continue; }
            emit(Tok::equals, 1);
            continue;
        case '<':
            if (n == '=') { emit(Tok::less_eq, 2); continue; }
            emit(Tok::less, 1);
            continue;
        case '>':
            if (n == '=') { emit(Tok::greater_eq, 2); continue; }
            emit(Tok::greater, 1);
            continue;
        case '+': emit(Tok::plus, 1); continue;
        case '-': emit(Tok::minus, 1); continue;
        case '*': emit(Tok::star, 1); continue;
        case '/': emit(Tok::slash, 1); continue;
        case '.': emit(Tok::dot, 1); continue;
        case ';': emit(Tok::semicolon, 1); continue;
        case ',': emit(Tok::comma, 1); continue;
        case '(': emit(Tok::lparen, 1); continue;
        case ')': emit(Tok::rparen, 1); continue;
        case '[': emit(Tok::lbracket, 1); continue;
        case ']': emit(Tok::rbracket, 1); continue;
        case '!': emit(Tok::bang, 1); continue;
        case '&': emit(Tok::amp, 1); continue;
        case '|': emit(Tok::pipe, 1); continue;
        default: break;
        }
        throw SpecError{ make_diagnostic(ErrorCode::lexical_error, { line, col },
                                         "unexpected character " + printable(c)) };
    }
    out.push_back(Token{ Tok::end, "", { line, col } });
    return out;
}

const Token& TokenStream::peek(std::size_t ahead) const
{
    const auto idx = std::min(_pos + ahead, _tokens.size() - 1);
    return _tokens[idx];
}

bool TokenStream::at_ident(std::string_view text) const
{
    return peek().kind == Tok::ident && peek().text == text;
}

const Token& TokenStream::advance()
{
    const Token& t = _tokens[_pos];
    if (_pos + 1 < _tokens.size())
        ++_pos;
    return t;
}

bool TokenStream::accept(Tok kind)
{
    if (!at(kind))
        return false;
    advance();
    return true;
}

const Token& TokenStream::expect(Tok kind, std::string_view context)
{
    if (!at(kind))
        fail("expected " + std::string{ describe(kind) } + " " + std::string{ context });
    return advance();
}

const Token& TokenStream::expect_ident(std::string_view context)
{
    return expect(Tok::ident, context);
}

void TokenStream::fail(std::string message) const
{
    fail_at(peek(), std::move(message));
}

void TokenStream::fail_at(const Token& token, std::string message) const
{
    const auto found = token.kind == Tok::end ? std::string{ "end of input" } : "'" + token.text + "'";
    throw SpecError{ make_diagnostic(ErrorCode::syntax_error, token.loc, message + ", found " + found) };
}

} // namespace flyfast::lang::detail
