#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flyfast::cli {

enum ExitCode : int
{
    exit_ok = 0,
    exit_model_error = 1,
    exit_safety = 2,
    exit_internal = 3,
};

// Bad flag values and combinations; reported with exit code 1.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Sweep
{
    enum class Variable
    {
        k,
        t0,
    };
    Variable variable = Variable::k;
    std::uint64_t from = 0;
    std::uint64_t to = 0;
};

// "k=0..70" or "t0=0..10"; throws ConfigError.
[[nodiscard]] Sweep parse_sweep(std::string_view text);

struct RunConfig
{
    enum class Command
    {
        check,
        trajectory,
        simulate,
    };
    enum class Mode
    {
        exact,
        meanfield,
    };

    Command command = Command::check;
    std::string spec_path;
    std::vector<std::string> formulas; // inline, may carry a "name:" prefix
    std::string formula_file;
    Mode mode = Mode::meanfield;
    std::optional<std::int64_t> population; // --N
    std::uint64_t t0 = 0;
    std::optional<Sweep> sweep;
    double safety_epsilon = 1e-6;
    bool strict_safety = false;
    std::vector<double> mu0; // empty: the spec's initial occupancy
    std::string output;      // empty: standard output
    bool memoize = true;
    bool verbose = false;
    std::size_t horizon = 0; // trajectory / simulate
    std::size_t runs = 1;
    std::uint64_t seed = 0;
};

// Executes one command. CSV goes to config.output or `out`, diagnostics to `err`.
[[nodiscard]] int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs; the body of the flyfast executable.
[[nodiscard]] int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace flyfast::cli
