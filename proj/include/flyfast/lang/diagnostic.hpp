#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flyfast::lang {

struct SourceLoc
{
    std::uint32_t line = 0;
    std::uint32_t column = 0;

    friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

// Every diagnostic carries exactly one code; the textual names are stable and
// used by the invalid-input corpus.
enum class ErrorCode
{
    lexical_error,
    syntax_error,
    duplicate_state,
    duplicate_action,
    undefined_state,
    missing_prob_def,
    duplicate_prob_def,
    unknown_action,
    literal_out_of_range,
    continuity_warning,
    bexp_division,
    duplicate_label,
    label_clash,
    reserved_atom,
    unknown_atom,
    missing_init,
    duplicate_init,
    negative_count,
    empty_population,
    probability_out_of_range,
    negative_bound,
};

enum class Severity
{
    error,
    warning,
};

[[nodiscard]] std::string_view code_name(ErrorCode code);
[[nodiscard]] Severity default_severity(ErrorCode code);

struct Diagnostic
{
    ErrorCode code;
    Severity severity;
    SourceLoc loc;
    std::string message;

    // "line:col: error [code]: message"
    [[nodiscard]] std::string to_string() const;
};

[[nodiscard]] Diagnostic make_diagnostic(ErrorCode code, SourceLoc loc, std::string message);
[[nodiscard]] bool has_errors(const std::vector<Diagnostic>& diagnostics);

// Raised by the parsers. Holds every error found; the first one is the
// primary diagnostic and determines what() and code().
class SpecError : public std::runtime_error
{
public:
    explicit SpecError(std::vector<Diagnostic> diagnostics);
    explicit SpecError(Diagnostic diagnostic);

    [[nodiscard]] ErrorCode code() const { return _diagnostics.front().code; }
    [[nodiscard]] const Diagnostic& primary() const { return _diagnostics.front(); }
    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const { return _diagnostics; }

private:
    std::vector<Diagnostic> _diagnostics;
};

} // namespace flyfast::lang
