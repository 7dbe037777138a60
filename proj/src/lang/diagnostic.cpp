#include "flyfast/lang/diagnostic.hpp"

#include <algorithm>

namespace flyfast::lang {

std::string_view code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::lexical_error: return "lexical-error";
    case ErrorCode::syntax_error: return "syntax-error";
    case ErrorCode::duplicate_state: return "duplicate-state";
    case ErrorCode::duplicate_action: return "duplicate-action";
    case ErrorCode::undefined_state: return "undefined-state";
    case ErrorCode::missing_prob_def: return "missing-prob-def";
    case ErrorCode::duplicate_prob_def: return "duplicate-prob-def";
    case ErrorCode::unknown_action: return "unknown-action";
    case ErrorCode::literal_out_of_range: return "literal-out-of-range";
    case ErrorCode::continuity_warning: return "continuity-warning";
    case ErrorCode::bexp_division: return "bexp-division";
    case ErrorCode::duplicate_label: return "duplicate-label";
    case ErrorCode::label_clash: return "label-clash";
    case ErrorCode::reserved_atom: return "reserved-atom";
    case ErrorCode::unknown_atom: return "unknown-atom";
    case ErrorCode::missing_init: return "missing-init";
    case ErrorCode::duplicate_init: return "duplicate-init";
    case ErrorCode::negative_count: return "negative-count";
    case ErrorCode::empty_population: return "empty-population";
    case ErrorCode::probability_out_of_range: return "probability-out-of-range";
    case ErrorCode::negative_bound: return "negative-bound";
    }
    return "unknown";
}

Severity default_severity(ErrorCode code)
{
    return code == ErrorCode::continuity_warning ? Severity::warning : Severity::error;
}

std::string Diagnostic::to_string() const
{
    std::string out;
    if (loc.line != 0)
        out += std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": ";
    out += severity == Severity::error ? "error" : "warning";
    out += " [";
    out += code_name(code);
    out += "]: ";
    out += message;
    return out;
}

Diagnostic make_diagnostic(ErrorCode code, SourceLoc loc, std::string message)
{
    return Diagnostic{ code, default_severity(code), loc, std::move(message) };
}

bool has_errors(const std::vector<Diagnostic>& diagnostics)
{
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

SpecError::SpecError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error{ diagnostics.empty() ? std::string{ "invalid input" } : diagnostics.front().to_string() },
      _diagnostics{ std::move(diagnostics) }
{
    if (_diagnostics.empty())
        _diagnostics.push_back(make_diagnostic(ErrorCode::syntax_error, {}, "invalid input"));
}

SpecError::SpecError(Diagnostic diagnostic) : SpecError{ std::vector<Diagnostic>{ std::move(diagnostic) } } {}

} // namespace flyfast::lang
