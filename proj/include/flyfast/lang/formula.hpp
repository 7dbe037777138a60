#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace flyfast::lang {

// Atom name reserved for the always-true proposition.
inline constexpr std::string_view true_atom = "true";

enum class Relation
{
    greater_equal,
    greater,
    less_equal,
    less,
};

[[nodiscard]] bool compare(double value, Relation relation, double bound);
[[nodiscard]] std::string_view relation_symbol(Relation relation);

enum class FormulaKind
{
    atom,
    negation,
    disjunction,
    probability,
};

enum class PathKind
{
    next,
    until,
};

struct Formula;
struct PathFormula;
using FormulaPtr = std::shared_ptr<const Formula>;
using PathFormulaPtr = std::shared_ptr<const PathFormula>;

// Core bounded-PCTL state formula: a | !F | F | F | P~p [ path ].
// Conjunction, implication, true and false are desugared by the builders below.
struct Formula
{
    FormulaKind kind = FormulaKind::atom;
    std::string atom;
    FormulaPtr lhs;
    FormulaPtr rhs;
    Relation relation = Relation::greater_equal;
    double bound = 0.0;
    PathFormulaPtr path;
};

// X F (lhs only) or F1 U<=horizon F2.
struct PathFormula
{
    PathKind kind = PathKind::next;
    FormulaPtr lhs;
    FormulaPtr rhs;
    std::uint64_t horizon = 0;
};

[[nodiscard]] FormulaPtr make_atom(std::string name);
[[nodiscard]] FormulaPtr make_true();
[[nodiscard]] FormulaPtr make_false();
[[nodiscard]] FormulaPtr make_not(FormulaPtr f);
[[nodiscard]] FormulaPtr make_or(FormulaPtr a, FormulaPtr b);
[[nodiscard]] FormulaPtr make_and(FormulaPtr a, FormulaPtr b);
[[nodiscard]] FormulaPtr make_implies(FormulaPtr a, FormulaPtr b);
[[nodiscard]] FormulaPtr make_prob(Relation relation, double bound, PathFormulaPtr path);
[[nodiscard]] PathFormulaPtr make_next(FormulaPtr f);
[[nodiscard]] PathFormulaPtr make_until(FormulaPtr lhs, FormulaPtr rhs, std::uint64_t horizon);

[[nodiscard]] bool equivalent(const Formula& a, const Formula& b);
[[nodiscard]] bool equivalent(const PathFormula& a, const PathFormula& b);

// Copy of a top-level P formula whose until has a different bound. Throws
// std::invalid_argument when f is not of the form P~p [ F1 U<=k F2 ].
[[nodiscard]] FormulaPtr with_horizon(const Formula& f, std::uint64_t horizon);

} // namespace flyfast::lang
