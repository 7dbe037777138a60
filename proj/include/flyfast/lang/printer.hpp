#pragma once

#include "flyfast/lang/ast.hpp"
#include "flyfast/lang/formula.hpp"

#include <string>

namespace flyfast::lang {

// Canonical concrete syntax. Parsing the output yields an equivalent tree.
[[nodiscard]] std::string to_text(const Expr& e);
[[nodiscard]] std::string to_text(const BExp& b);
[[nodiscard]] std::string to_text(const SystemSpec& spec);
[[nodiscard]] std::string to_text(const Formula& f);
[[nodiscard]] std::string to_text(const PathFormula& f);

// Shortest decimal form that reads back to the same double.
[[nodiscard]] std::string format_real(double v);

} // namespace flyfast::lang
