#include "flyfast/lang/parser.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <array>

namespace flyfast::lang {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

namespace {

constexpr int max_nesting = 512;
constexpr std::array reserved_words{ "frc", "min", "max", "label", "local", "global", "init" };

bool is_reserved(std::string_view word)
{
    return std::find(reserved_words.begin(), reserved_words.end(), word) != reserved_words.end();
}

// Recursive-descent parser for .pop files.
//
//   expr    := term { ('+' | '-') term }
//   term    := unary { ('*' | '/') unary }
//   unary   := '-' unary | primary
//   primary := NUMBER | 'frc' name | 'frc' '(' name ')'
//            | ('min' | 'max') '(' expr ',' expr ')' | '(' expr ')'
class SpecParser
{
public:
    explicit SpecParser(std::string_view text) : _ts{ detail::tokenize(text) } {}

    SystemSpec parse()
    {
        while (!_ts.at(Tok::end)) {
            statement();
            if (_ts.at(Tok::end))
                break; // the last terminator may be omitted
            _ts.expect(Tok::semicolon, "after statement");
        }
        return std::move(_spec);
    }

private:
    TokenStream _ts;
    SystemSpec _spec;

    // Set while parsing a BExp function body.
    bool _bexp_mode = false;
    int _depth = 0;
    std::vector<std::string> _bexp_args;

    const Token& name(std::string_view context)
    {
        const Token& t = _ts.expect_ident(context);
        if (is_reserved(t.text))
            _ts.fail_at(t, "reserved word used as a name " + std::string{ context });
        return t;
    }

    void statement()
    {
        if (_ts.at_ident("label")) {
            label();
            return;
        }
        if (_ts.at_ident("init")) {
            init();
            return;
        }
        const Token& head = name("at start of statement");
        if (_ts.accept(Tok::define)) {
            state_def(head);
            return;
        }
        if (_ts.accept(Tok::prob_def)) {
            _spec.probs.push_back(ProbDef{ head.text, expr(), head.loc });
            return;
        }
        _ts.fail("expected ':=' or '::' after '" + head.text + "'");
    }

    void state_def(const Token& head)
    {
        StateDef def{ head.text, {}, head.loc };
        do {
            const Token& action = name("as action of a branch");
            _ts.expect(Tok::dot, "between action and target state");
            const Token& target = name("as branch target");
            def.branches.push_back(Branch{ action.text, target.text, action.loc });
        } while (_ts.accept(Tok::plus));
        _spec.objects.definitions.push_back(std::move(def));
    }

    void label()
    {
        const Token& kw = _ts.advance();
        if (_ts.at_ident("local")) {
            _ts.advance();
            const Token& atom = name("as label name");
            _ts.expect(Tok::equals, "after label name");
            LocalLabel lab{ atom.text, {}, kw.loc };
            do {
                lab.states.push_back(name("in local label state list").text);
            } while (_ts.accept(Tok::comma));
            _spec.labels.local.push_back(std::move(lab));
            return;
        }
        if (_ts.at_ident("global")) {
            _ts.advance();
            const Token& atom = name("as label name");
            _ts.expect(Tok::equals, "after label name");
            _spec.labels.global.push_back(GlobalLabel{ atom.text, bexp(), kw.loc });
            return;
        }
        _ts.fail("expected 'local' or 'global' after 'label'");
    }

    BExp bexp()
    {
        _bexp_mode = true;
        _bexp_args.clear();
        BExp b;
        b.func = expr();
        _bexp_mode = false;
        b.args = std::move(_bexp_args);
        if (_ts.accept(Tok::less))
            b.relation = Comparison::less;
        else if (_ts.accept(Tok::greater))
            b.relation = Comparison::greater;
        else
            _ts.fail("expected '<' or '>' in global label");
        const bool negative = _ts.accept(Tok::minus);
        const Token& r = _ts.expect(Tok::number, "as label threshold");
        b.threshold = negative ? -r.number : r.number;
        return b;
    }

    void init()
    {
        const Token& kw = _ts.advance();
        if (_spec.init_loc)
            throw SpecError{ make_diagnostic(ErrorCode::duplicate_init, kw.loc, "more than one init statement") };
        _spec.init_loc = kw.loc;
        _ts.expect(Tok::less, "after 'init'");
        do {
            const Token& state = name("in initial population");
            _ts.expect(Tok::lbracket, "after state in initial population");
            const bool negative = _ts.accept(Tok::minus);
            const Token& count = _ts.expect(Tok::number, "as object count");
            if (!count.integral || count.number > 1e15)
                _ts.fail_at(count, "object count must be an integer");
            const auto value = static_cast<std::int64_t>(count.number);
            _spec.initial.push_back(InitEntry{ state.text, negative ? -value : value, state.loc });
            _ts.expect(Tok::rbracket, "after object count");
        } while (_ts.accept(Tok::comma));
        _ts.expect(Tok::greater, "to close initial population");
    }

    ExprPtr expr()
    {
        auto lhs = term();
        while (_ts.at(Tok::plus) || _ts.at(Tok::minus)) {
            const Token& op = _ts.advance();
            const auto kind = op.kind == Tok::plus ? ExprKind::add : ExprKind::subtract;
            lhs = Expr::binary(kind, std::move(lhs), term(), op.loc);
        }
        return lhs;
    }

    ExprPtr term()
    {
        auto lhs = unary();
        while (_ts.at(Tok::star) || _ts.at(Tok::slash)) {
            const Token& op = _ts.advance();
            if (op.kind == Tok::slash && _bexp_mode)
                throw SpecError{ make_diagnostic(ErrorCode::bexp_division, op.loc,
                                                 "division is not allowed in global label functions") };
            const auto kind = op.kind == Tok::star ? ExprKind::multiply : ExprKind::divide;
            lhs = Expr::binary(kind, std::move(lhs), unary(), op.loc);
        }
        return lhs;
    }

    ExprPtr unary()
    {
        if (++_depth > max_nesting)
            _ts.fail("expression nested too deeply");
        struct Leave
        {
            int& depth;
            ~Leave() { --depth; }
        } leave{ _depth };

        if (_ts.at(Tok::minus)) {
            const Token& op = _ts.advance();
            return Expr::unary(ExprKind::negate, unary(), op.loc);
        }
        return primary();
    }

    ExprPtr primary()
    {
        const Token& t = _ts.peek();
        if (t.kind == Tok::number) {
            _ts.advance();
            return Expr::constant(t.number, t.loc);
        }
        if (t.kind == Tok::lparen) {
            _ts.advance();
            auto inner = expr();
            _ts.expect(Tok::rparen, "to close parenthesis");
            return Expr::unary(ExprKind::paren, std::move(inner), t.loc);
        }
        if (t.kind == Tok::ident && t.text == "frc") {
            _ts.advance();
            const bool wrapped = _ts.accept(Tok::lparen);
            const Token& state = name("after 'frc'");
            if (wrapped)
                _ts.expect(Tok::rparen, "after 'frc(' state");
            return frc(state);
        }
        if (t.kind == Tok::ident && (t.text == "min" || t.text == "max")) {
            _ts.advance();
            const auto kind = t.text == "min" ? ExprKind::min : ExprKind::max;
            _ts.expect(Tok::lparen, "after '" + t.text + "'");
            auto a = expr();
            _ts.expect(Tok::comma, "between arguments of '" + t.text + "'");
            auto b = expr();
            _ts.expect(Tok::rparen, "after arguments of '" + t.text + "'");
            return Expr::binary(kind, std::move(a), std::move(b), t.loc);
        }
        _ts.fail("expected expression");
    }

    ExprPtr frc(const Token& state)
    {
        if (!_bexp_mode)
            return Expr::frc(state.text, state.loc);
        auto it = std::find(_bexp_args.begin(), _bexp_args.end(), state.text);
        const auto index = static_cast<std::size_t>(it - _bexp_args.begin());
        if (it == _bexp_args.end())
            _bexp_args.push_back(state.text);
        return Expr::placeholder(index, state.loc);
    }
};

} // namespace

SystemSpec parse_system_spec_unchecked(std::string_view text)
{
    return SpecParser{ text }.parse();
}

SystemSpec parse_system_spec(std::string_view text)
{
    auto spec = parse_system_spec_unchecked(text);
    auto diagnostics = validate(spec);
    std::erase_if(diagnostics, [](const Diagnostic& d) { return d.severity != Severity::error; });
    if (!diagnostics.empty())
        throw SpecError{ std::move(diagnostics) };
    return spec;
}

} // namespace flyfast::lang
