#include "flyfast/lang/ast.hpp"

#include <algorithm>

namespace flyfast::lang {

ExprPtr Expr::constant(double v, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::constant;
    e->value = v;
    e->loc = loc;
    return e;
}

ExprPtr Expr::frc(std::string state, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::frc;
    e->state = std::move(state);
    e->loc = loc;
    return e;
}

ExprPtr Expr::placeholder(std::size_t index, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::arg;
    e->arg = index;
    e->loc = loc;
    return e;
}

ExprPtr Expr::unary(ExprKind kind, ExprPtr operand, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(operand);
    e->loc = loc;
    return e;
}

ExprPtr Expr::binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, SourceLoc loc)
{
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    e->loc = loc;
    return e;
}

bool Expr::is_binary() const
{
    switch (kind) {
    case ExprKind::add:
    case ExprKind::subtract:
    case ExprKind::multiply:
    case ExprKind::divide:
    case ExprKind::min:
    case ExprKind::max:
        return true;
    default:
        return false;
    }
}

bool Expr::uses_division() const
{
    if (kind == ExprKind::divide)
        return true;
    return (lhs && lhs->uses_division()) || (rhs && rhs->uses_division());
}

bool equivalent(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case ExprKind::constant: return a.value == b.value;
    case ExprKind::frc: return a.state == b.state;
    case ExprKind::arg: return a.arg == b.arg;
    case ExprKind::negate:
    case ExprKind::paren: return equivalent(*a.lhs, *b.lhs);
    default: return equivalent(*a.lhs, *b.lhs) && equivalent(*a.rhs, *b.rhs);
    }
}

const StateDef* ObjectSpec::find(std::string_view state) const
{
    for (const auto& def : definitions)
        if (def.state == state)
            return &def;
    return nullptr;
}

std::vector<std::string> ObjectSpec::actions() const
{
    std::vector<std::string> out;
    for (const auto& def : definitions)
        for (const auto& br : def.branches)
            if (std::find(out.begin(), out.end(), br.action) == out.end())
                out.push_back(br.action);
    return out;
}

const ProbDef* SystemSpec::find_prob(std::string_view action) const
{
    for (const auto& p : probs)
        if (p.action == action)
            return &p;
    return nullptr;
}

std::int64_t SystemSpec::population() const
{
    std::int64_t n = 0;
    for (const auto& e : initial)
        n += e.count;
    return n;
}

namespace {

bool equivalent(const BExp& a, const BExp& b)
{
    return a.args == b.args && a.relation == b.relation && a.threshold == b.threshold &&
           lang::equivalent(*a.func, *b.func);
}

} // namespace

bool equivalent(const SystemSpec& a, const SystemSpec& b)
{
    const auto& da = a.objects.definitions;
    const auto& db = b.objects.definitions;
    if (da.size() != db.size() || a.probs.size() != b.probs.size() ||
        a.labels.local.size() != b.labels.local.size() || a.labels.global.size() != b.labels.global.size() ||
        a.initial.size() != b.initial.size() || a.init_loc.has_value() != b.init_loc.has_value())
        return false;

    for (std::size_t i = 0; i < da.size(); ++i) {
        if (da[i].state != db[i].state || da[i].branches.size() != db[i].branches.size())
            return false;
        for (std::size_t j = 0; j < da[i].branches.size(); ++j)
            if (da[i].branches[j].action != db[i].branches[j].action ||
                da[i].branches[j].target != db[i].branches[j].target)
                return false;
    }
    for (std::size_t i = 0; i < a.probs.size(); ++i)
        if (a.probs[i].action != b.probs[i].action || !equivalent(*a.probs[i].expr, *b.probs[i].expr))
            return false;
    for (std::size_t i = 0; i < a.labels.local.size(); ++i)
        if (a.labels.local[i].atom != b.labels.local[i].atom || a.labels.local[i].states != b.labels.local[i].states)
            return false;
    for (std::size_t i = 0; i < a.labels.global.size(); ++i)
        if (a.labels.global[i].atom != b.labels.global[i].atom ||
            !equivalent(a.labels.global[i].bexp, b.labels.global[i].bexp))
            return false;
    for (std::size_t i = 0; i < a.initial.size(); ++i)
        if (a.initial[i].state != b.initial[i].state || a.initial[i].count != b.initial[i].count)
            return false;
    return true;
}

} // namespace flyfast::lang
