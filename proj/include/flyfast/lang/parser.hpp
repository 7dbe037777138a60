#pragma once

#include "flyfast/lang/ast.hpp"
#include "flyfast/lang/diagnostic.hpp"
#include "flyfast/lang/formula.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace flyfast::lang {

// Parses and validates a .pop system specification. Throws SpecError with
// every validation error when the text is not a well-formed system; warnings
// alone do not throw.
[[nodiscard]] SystemSpec parse_system_spec(std::string_view text);

// Syntax only. The result may violate the well-formedness rules that
// validate() checks.
[[nodiscard]] SystemSpec parse_system_spec_unchecked(std::string_view text);

// All well-formedness errors and warnings, in a deterministic order.
[[nodiscard]] std::vector<Diagnostic> validate(const SystemSpec& spec);

[[nodiscard]] FormulaPtr parse_formula(std::string_view text);

struct NamedFormula
{
    std::string id;
    std::string text;
    FormulaPtr formula;
};

// One formula per line, '#' starts a comment, blank lines are skipped. A line
// may start with "name:" to give the formula an id; otherwise ids are f1, f2,
// ... by position. Errors are reported with the file line.
[[nodiscard]] std::vector<NamedFormula> parse_formula_file(std::string_view text);

// Splits an optional "name:" prefix off a single formula line.
[[nodiscard]] NamedFormula parse_named_formula(std::string_view line, std::string default_id);

// unknown-atom diagnostics for atoms of f that the spec does not declare.
[[nodiscard]] std::vector<Diagnostic> check_atoms(const Formula& f, const SystemSpec& spec);

} // namespace flyfast::lang
