#include "flyfast/lang/parser.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace flyfast::lang {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

namespace {

constexpr std::array formula_keywords{ "true", "false", "P", "X", "U" };
constexpr int max_nesting = 512;

bool is_keyword(std::string_view word)
{
    return std::find(formula_keywords.begin(), formula_keywords.end(), word) != formula_keywords.end();
}

//   formula := disj [ '=>' formula ]
//   disj    := conj { '|' conj }
//   conj    := unary { '&' unary }
//   unary   := '!' unary | primary
//   primary := 'true' | 'false' | atom | '(' formula ')' | 'P' rel prob '[' path ']'
//   path    := 'X' formula | formula 'U' '<=' INT
class FormulaParser
{
public:
    explicit FormulaParser(std::vector<Token> tokens) : _ts{ std::move(tokens) } {}

    FormulaPtr parse()
    {
        auto f = formula();
        if (!_ts.at(Tok::end))
            _ts.fail("unexpected trailing input");
        return f;
    }

private:
    TokenStream _ts;
    int _depth = 0;

    struct DepthGuard
    {
        FormulaParser& p;
        explicit DepthGuard(FormulaParser& parser) : p{ parser }
        {
            if (++p._depth > max_nesting)
                p._ts.fail("formula nested too deeply");
        }
        ~DepthGuard() { --p._depth; }
    };

    FormulaPtr formula()
    {
        DepthGuard guard{ *this };
        auto lhs = disjunction();
        if (_ts.accept(Tok::implies))
            return make_implies(std::move(lhs), formula());
        return lhs;
    }

    FormulaPtr disjunction()
    {
        auto lhs = conjunction();
        while (_ts.accept(Tok::pipe))
            lhs = make_or(std::move(lhs), conjunction());
        return lhs;
    }

    FormulaPtr conjunction()
    {
        auto lhs = unary();
        while (_ts.accept(Tok::amp))
            lhs = make_and(std::move(lhs), unary());
        return lhs;
    }

    FormulaPtr unary()
    {
        DepthGuard guard{ *this };
        if (_ts.accept(Tok::bang))
            return make_not(unary());
        return primary();
    }

    FormulaPtr primary()
    {
        const Token& t = _ts.peek();
        if (t.kind == Tok::lparen) {
            _ts.advance();
            auto inner = formula();
            _ts.expect(Tok::rparen, "to close parenthesis");
            return inner;
        }
        if (t.kind != Tok::ident)
            _ts.fail("expected formula");
        if (t.text == "true") {
            _ts.advance();
            return make_true();
        }
        if (t.text == "false") {
            _ts.advance();
            return make_false();
        }
        if (t.text == "P") {
            _ts.advance();
            return probability();
        }
        if (is_keyword(t.text))
            _ts.fail("unexpected keyword");
        _ts.advance();
        return make_atom(t.text);
    }

    FormulaPtr probability()
    {
        Relation rel{};
        if (_ts.accept(Tok::greater_eq))
            rel = Relation::greater_equal;
        else if (_ts.accept(Tok::greater))
            rel = Relation::greater;
        else if (_ts.accept(Tok::less_eq))
            rel = Relation::less_equal;
        else if (_ts.accept(Tok::less))
            rel = Relation::less;
        else
            _ts.fail("expected one of '>=', '>', '<=', '<' after 'P'");

        const bool negative = _ts.at(Tok::minus);
        const Token& sign_or_number = _ts.peek();
        if (negative)
            _ts.advance();
        const Token& bound = _ts.expect(Tok::number, "as probability bound");
        const double p = negative ? -bound.number : bound.number;
        if (!(p >= 0.0 && p <= 1.0))
            throw SpecError{ make_diagnostic(ErrorCode::probability_out_of_range, sign_or_number.loc,
                                             "probability bound " + (negative ? "-" + bound.text : bound.text) +
                                                 " is outside [0,1]") };

        _ts.expect(Tok::lbracket, "to open path formula");
        auto path = path_formula();
        _ts.expect(Tok::rbracket, "to close path formula");
        return make_prob(rel, p, std::move(path));
    }

    PathFormulaPtr path_formula()
    {
        if (_ts.at_ident("X")) {
            _ts.advance();
            return make_next(formula());
        }
        auto lhs = formula();
        if (!_ts.at_ident("U"))
            _ts.fail("expected 'U' or 'X' in path formula");
        _ts.advance();
        _ts.expect(Tok::less_eq, "after 'U' (only step-bounded until is supported)");
        const bool negative = _ts.at(Tok::minus);
        const Token& start = _ts.peek();
        if (negative)
            _ts.advance();
        const Token& k = _ts.expect(Tok::number, "as until bound");
        if (!k.integral)
            _ts.fail_at(k, "until bound must be an integer");
        if (negative && k.number != 0.0)
            throw SpecError{ make_diagnostic(ErrorCode::negative_bound, start.loc,
                                             "until bound -" + k.text + " is negative") };
        if (k.number > 1e15)
            _ts.fail_at(k, "until bound too large");
        auto rhs = formula();
        return make_until(std::move(lhs), std::move(rhs), static_cast<std::uint64_t>(k.number));
    }
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

NamedFormula parse_named(std::string_view line, std::string default_id, std::uint32_t line_offset)
{
    line = trim(line);
    NamedFormula out{ std::move(default_id), {}, nullptr };

    // "name: formula" but not "name:=" / "name::"
    std::size_t i = 0;
    auto ident_char = [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    };
    while (i < line.size() && ident_char(line[i]))
        ++i;
    std::size_t j = i;
    while (j < line.size() && (line[j] == ' ' || line[j] == '\t'))
        ++j;
    const bool starts_ident = i > 0 && !(line[0] >= '0' && line[0] <= '9');
    if (starts_ident && j < line.size() && line[j] == ':' && (j + 1 == line.size() || (line[j + 1] != ':' && line[j + 1] != '='))) {
        out.id = std::string{ line.substr(0, i) };
        line = trim(line.substr(j + 1));
    }
    out.text = std::string{ line };
    out.formula = FormulaParser{ detail::tokenize(line, line_offset) }.parse();
    return out;
}

} // namespace

FormulaPtr parse_formula(std::string_view text)
{
    return FormulaParser{ detail::tokenize(text) }.parse();
}

NamedFormula parse_named_formula(std::string_view line, std::string default_id)
{
    return parse_named(line, std::move(default_id), 0);
}

std::vector<NamedFormula> parse_formula_file(std::string_view text)
{
    std::vector<NamedFormula> out;
    std::uint32_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        auto line = text.substr(start, end - start);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (!trim(line).empty())
            out.push_back(parse_named(line, "f" + std::to_string(out.size() + 1), line_no));
        if (nl == std::string_view::npos)
            break;
        start = nl + 1;
        ++line_no;
    }
    return out;
}

namespace {

void collect_atoms(const Formula& f, std::vector<std::string>& out)
{
    switch (f.kind) {
    case FormulaKind::atom:
        if (std::find(out.begin(), out.end(), f.atom) == out.end())
            out.push_back(f.atom);
        return;
    case FormulaKind::negation: collect_atoms(*f.lhs, out); return;
    case FormulaKind::disjunction:
        collect_atoms(*f.lhs, out);
        collect_atoms(*f.rhs, out);
        return;
    case FormulaKind::probability:
        collect_atoms(*f.path->lhs, out);
        if (f.path->rhs)
            collect_atoms(*f.path->rhs, out);
        return;
    }
}

} // namespace

std::vector<Diagnostic> check_atoms(const Formula& f, const SystemSpec& spec)
{
    std::vector<std::string> atoms;
    collect_atoms(f, atoms);
    std::vector<Diagnostic> out;
    for (const auto& a : atoms) {
        if (a == true_atom)
            continue;
        const bool local = std::any_of(spec.labels.local.begin(), spec.labels.local.end(),
                                       [&](const LocalLabel& l) { return l.atom == a; });
        const bool global = std::any_of(spec.labels.global.begin(), spec.labels.global.end(),
                                        [&](const GlobalLabel& l) { return l.atom == a; });
        if (!local && !global)
            out.push_back(make_diagnostic(ErrorCode::unknown_atom, {}, "unknown atom " + a));
    }
    return out;
}

} // namespace flyfast::lang
