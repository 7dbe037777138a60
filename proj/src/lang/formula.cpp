#include "flyfast/lang/formula.hpp"

#include <stdexcept>

namespace flyfast::lang {

bool compare(double value, Relation relation, double bound)
{
    switch (relation) {
    case Relation::greater_equal: return value >= bound;
    case Relation::greater: return value > bound;
    case Relation::less_equal: return value <= bound;
    case Relation::less: return value < bound;
    }
    return false;
}

std::string_view relation_symbol(Relation relation)
{
    switch (relation) {
    case Relation::greater_equal: return ">=";
    case Relation::greater: return ">";
    case Relation::less_equal: return "<=";
    case Relation::less: return "<";
    }
    return "?";
}

FormulaPtr make_atom(std::string name)
{
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::atom;
    f->atom = std::move(name);
    return f;
}

FormulaPtr make_true() { return make_atom(std::string{ true_atom }); }

FormulaPtr make_false() { return make_not(make_true()); }

FormulaPtr make_not(FormulaPtr operand)
{
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::negation;
    f->lhs = std::move(operand);
    return f;
}

FormulaPtr make_or(FormulaPtr a, FormulaPtr b)
{
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::disjunction;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}

FormulaPtr make_and(FormulaPtr a, FormulaPtr b)
{
    return make_not(make_or(make_not(std::move(a)), make_not(std::move(b))));
}

FormulaPtr make_implies(FormulaPtr a, FormulaPtr b)
{
    return make_or(make_not(std::move(a)), std::move(b));
}

FormulaPtr make_prob(Relation relation, double bound, PathFormulaPtr path)
{
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::probability;
    f->relation = relation;
    f->bound = bound;
    f->path = std::move(path);
    return f;
}

PathFormulaPtr make_next(FormulaPtr operand)
{
    auto p = std::make_shared<PathFormula>();
    p->kind = PathKind::next;
    p->lhs = std::move(operand);
    return p;
}

PathFormulaPtr make_until(FormulaPtr lhs, FormulaPtr rhs, std::uint64_t horizon)
{
    auto p = std::make_shared<PathFormula>();
    p->kind = PathKind::until;
    p->lhs = std::move(lhs);
    p->rhs = std::move(rhs);
    p->horizon = horizon;
    return p;
}

bool equivalent(const Formula& a, const Formula& b)
{
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case FormulaKind::atom: return a.atom == b.atom;
    case FormulaKind::negation: return equivalent(*a.lhs, *b.lhs);
    case FormulaKind::disjunction: return equivalent(*a.lhs, *b.lhs) && equivalent(*a.rhs, *b.rhs);
    case FormulaKind::probability:
        return a.relation == b.relation && a.bound == b.bound && equivalent(*a.path, *b.path);
    }
    return false;
}

bool equivalent(const PathFormula& a, const PathFormula& b)
{
    if (a.kind != b.kind)
        return false;
    if (a.kind == PathKind::next)
        return equivalent(*a.lhs, *b.lhs);
    return a.horizon == b.horizon && equivalent(*a.lhs, *b.lhs) && equivalent(*a.rhs, *b.rhs);
}

FormulaPtr with_horizon(const Formula& f, std::uint64_t horizon)
{
    if (f.kind != FormulaKind::probability || f.path->kind != PathKind::until)
        throw std::invalid_argument{ "formula is not a probability bound over a bounded until" };
    return make_prob(f.relation, f.bound, make_until(f.path->lhs, f.path->rhs, horizon));
}

} // namespace flyfast::lang
