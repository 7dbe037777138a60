#pragma once

#include "flyfast/lang/diagnostic.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flyfast::lang {

enum class ExprKind
{
    constant,
    frc,
    arg, // placeholder for the i-th argument of a BExp function
    negate,
    add,
    subtract,
    multiply,
    divide,
    min,
    max,
    paren,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Arithmetic expression. Unary nodes (negate, paren) keep their operand in lhs.
struct Expr
{
    ExprKind kind = ExprKind::constant;
    double value = 0.0;
    std::string state;
    std::size_t arg = 0;
    ExprPtr lhs;
    ExprPtr rhs;
    SourceLoc loc;

    static ExprPtr constant(double v, SourceLoc loc = {});
    static ExprPtr frc(std::string state, SourceLoc loc = {});
    static ExprPtr placeholder(std::size_t index, SourceLoc loc = {});
    static ExprPtr unary(ExprKind kind, ExprPtr operand, SourceLoc loc = {});
    static ExprPtr binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});

    [[nodiscard]] bool is_binary() const;
    [[nodiscard]] bool uses_division() const;
};

// Structural equality; source locations are ignored.
[[nodiscard]] bool equivalent(const Expr& a, const Expr& b);

struct Branch
{
    std::string action;
    std::string target;
    SourceLoc loc;
};

struct StateDef
{
    std::string state;
    std::vector<Branch> branches;
    SourceLoc loc;
};

struct ObjectSpec
{
    // Definition order is the total order on states.
    std::vector<StateDef> definitions;

    [[nodiscard]] const StateDef* find(std::string_view state) const;
    // Distinct action names in order of first occurrence.
    [[nodiscard]] std::vector<std::string> actions() const;
};

struct ProbDef
{
    std::string action;
    ExprPtr expr;
    SourceLoc loc;
};

enum class Comparison
{
    less,
    greater,
};

// F(frc C_1, ..., frc C_q) < r  or  > r. The function body refers to its
// arguments through ExprKind::arg placeholders.
struct BExp
{
    ExprPtr func;
    std::vector<std::string> args;
    Comparison relation = Comparison::less;
    double threshold = 0.0;
};

struct LocalLabel
{
    std::string atom;
    std::vector<std::string> states;
    SourceLoc loc;
};

struct GlobalLabel
{
    std::string atom;
    BExp bexp;
    SourceLoc loc;
};

struct LabelDefs
{
    std::vector<LocalLabel> local;
    std::vector<GlobalLabel> global;
};

struct InitEntry
{
    std::string state;
    std::int64_t count = 0;
    SourceLoc loc;
};

struct SystemSpec
{
    ObjectSpec objects;
    std::vector<ProbDef> probs;
    LabelDefs labels;
    std::vector<InitEntry> initial;
    std::optional<SourceLoc> init_loc; // set iff an init statement was present

    [[nodiscard]] const ProbDef* find_prob(std::string_view action) const;
    // Sum of the initial counts (the population size N).
    [[nodiscard]] std::int64_t population() const;
};

[[nodiscard]] bool equivalent(const SystemSpec& a, const SystemSpec& b);

} // namespace flyfast::lang
