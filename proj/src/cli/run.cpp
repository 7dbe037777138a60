#include "flyfast/cli/run.hpp"

#include "flyfast/checker/checker.hpp"
#include "flyfast/cli/csv.hpp"
#include "flyfast/exact/exact_model.hpp"
#include "flyfast/exact/simulate.hpp"
#include "flyfast/lang/parser.hpp"
#include "flyfast/meanfield/meanfield.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>

namespace flyfast::cli {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in{ path, std::ios::binary };
    if (!in)
        throw ConfigError{ "cannot read " + path };
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t parse_uint(std::string_view text, std::string_view what)
{
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError{ "invalid " + std::string{ what } + ": '" + std::string{ text } + "'" };
    return v;
}

struct Loaded
{
    std::shared_ptr<const PopulationModel> model;
    InitialPopulation init;
};

Loaded load(const RunConfig& config, std::ostream& err)
{
    if (config.spec_path.empty())
        throw ConfigError{ "--spec is required" };
    const auto text = read_file(config.spec_path);
    auto spec = lang::parse_system_spec(text);
    for (const auto& d : lang::validate(spec))
        if (d.severity == lang::Severity::warning)
            err << config.spec_path << ":" << d.to_string() << '\n';
    auto model = std::make_shared<const PopulationModel>(std::move(spec));
    auto init = initial_population(*model);
    if (config.population) {
        if (*config.population < 1)
            throw ModelError{ "population must be >= 1" };
        init = scale_population(init, static_cast<std::uint64_t>(*config.population));
    }
    return { std::move(model), std::move(init) };
}

OccupancyVector initial_occupancy(const RunConfig& config, const Loaded& loaded)
{
    if (config.mu0.empty())
        return loaded.init.occupancy();
    if (config.mu0.size() != loaded.model->state_count())
        throw ConfigError{ "--mu0 needs " + std::to_string(loaded.model->state_count()) + " values" };
    return OccupancyVector{ config.mu0 };
}

std::vector<lang::NamedFormula> load_formulas(const RunConfig& config, const lang::SystemSpec& spec)
{
    std::vector<lang::NamedFormula> formulas;
    if (!config.formula_file.empty())
        formulas = lang::parse_formula_file(read_file(config.formula_file));
    for (const auto& text : config.formulas)
        formulas.push_back(lang::parse_named_formula(text, "f" + std::to_string(formulas.size() + 1)));
    if (formulas.empty())
        throw ConfigError{ "no formula given (use --formula or --formulas)" };
    std::vector<lang::Diagnostic> unknown;
    for (const auto& f : formulas)
        for (auto& d : lang::check_atoms(*f.formula, spec))
            unknown.push_back(std::move(d));
    if (!unknown.empty())
        throw lang::SpecError{ std::move(unknown) };
    return formulas;
}

struct Row
{
    std::uint64_t point;
    std::string id;
    checker::CheckResult result;
};

template <class Model>
std::vector<Row> check_all(const Model& model, const RunConfig& config,
                           const std::vector<lang::NamedFormula>& formulas, auto&& initial_state)
{
    checker::CheckOptions options;
    options.memoize = config.memoize;
    options.safety_epsilon = config.safety_epsilon;

    std::vector<std::uint64_t> points;
    if (config.sweep) {
        for (auto v = config.sweep->from; v <= config.sweep->to; ++v)
            points.push_back(v);
    } else {
        points.push_back(config.t0);
    }

    std::vector<Row> rows;
    for (const auto point : points) {
        const bool sweep_k = config.sweep && config.sweep->variable == Sweep::Variable::k;
        const auto t0 = config.sweep && !sweep_k ? point : config.t0;
        const auto s = initial_state(t0);
        for (const auto& f : formulas) {
            lang::FormulaPtr phi = f.formula;
            if (sweep_k) {
                try {
                    phi = lang::with_horizon(*f.formula, point);
                } catch (const std::invalid_argument&) {
                    throw ConfigError{ "formula " + f.id + " is not of the form P~p [ F U<=k F ]; cannot sweep k" };
                }
            }
            checker::Checker<Model> c{ model, options };
            rows.push_back(Row{ point, f.id, c.check(s, *phi) });
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.point < b.point; });
    return rows;
}

int run_check(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    auto loaded = load(config, err);
    const auto formulas = load_formulas(config, loaded.model->spec());

    std::vector<Row> rows;
    if (config.mode == RunConfig::Mode::exact) {
        if (config.t0 != 0 || (config.sweep && config.sweep->variable == Sweep::Variable::t0))
            throw ConfigError{ "the exact backend starts at time 0; t0 applies to meanfield mode only" };
        if (!config.mu0.empty())
            throw ConfigError{ "--mu0 applies to meanfield mode only" };
        const ExactModel model{ loaded.model };
        const auto g = lumped_initial_state(loaded.init);
        rows = check_all(model, config, formulas, [&](std::uint64_t) { return g; });
    } else {
        const MeanFieldModel model{ loaded.model, initial_occupancy(config, loaded) };
        const auto c0 = loaded.init.tagged;
        rows = check_all(model, config, formulas, [&](std::uint64_t t0) { return model.init(c0, t0); });
    }

    std::ofstream file;
    if (!config.output.empty()) {
        file.open(config.output, std::ios::binary);
        if (!file)
            throw ConfigError{ "cannot write " + config.output };
    }
    std::ostream& csv = config.output.empty() ? out : file;

    const bool sweep_k = config.sweep && config.sweep->variable == Sweep::Variable::k;
    csv << (sweep_k ? "k" : "t0") << ",formula,probability,verdict,safety_incidents\n";
    std::size_t incidents = 0;
    for (const auto& r : rows) {
        csv << r.point << ',' << csv_field(r.id) << ','
            << (r.result.probability ? format_number(*r.result.probability) : std::string{}) << ','
            << (r.result.value ? "true" : "false") << ',' << r.result.safety.size() << '\n';
        for (const auto& inc : r.result.safety)
            err << "safety: " << r.id << " at " << inc.state << ": Pr[" << inc.path_formula
                << "] = " << format_number(inc.probability) << " vs bound " << format_number(inc.threshold)
                << " (gap " << format_number(inc.gap) << ")\n";
        if (config.verbose)
            err << r.id << " @" << r.point << ": " << r.result.stats.states_expanded << " expansions, "
                << r.result.stats.cache_hits << " cache hits, " << format_number(r.result.stats.wall_seconds)
                << " s\n";
        incidents += r.result.safety.size();
    }
    csv.flush();
    if (!csv)
        throw ConfigError{ "write failed" };
    return config.strict_safety && incidents > 0 ? exit_safety : exit_ok;
}

int run_series(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    auto loaded = load(config, err);
    std::vector<OccupancyVector> rows;
    if (config.command == RunConfig::Command::trajectory) {
        rows = mf_trajectory(*loaded.model, initial_occupancy(config, loaded), config.horizon);
    } else {
        if (!config.mu0.empty())
            throw ConfigError{ "--mu0 does not apply to simulate" };
        if (config.runs == 0)
            throw ConfigError{ "--runs must be >= 1" };
        rows = simulate(*loaded.model, loaded.init, SimulationConfig{ config.horizon, config.runs, config.seed });
    }
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < loaded.model->state_count(); ++i)
        names.push_back(loaded.model->state_name(StateId{ i }));

    if (config.output.empty()) {
        write_occupancy_csv(out, names, rows);
        return exit_ok;
    }
    std::ofstream file{ config.output, std::ios::binary };
    if (!file)
        throw ConfigError{ "cannot write " + config.output };
    write_occupancy_csv(file, names, rows);
    return exit_ok;
}

} // namespace

Sweep parse_sweep(std::string_view text)
{
    const auto eq = text.find('=');
    const auto dots = text.find("..");
    if (eq == std::string_view::npos || dots == std::string_view::npos || dots < eq)
        throw ConfigError{ "sweep must look like k=A..B or t0=A..B" };
    Sweep s;
    const auto var = text.substr(0, eq);
    if (var == "k")
        s.variable = Sweep::Variable::k;
    else if (var == "t0")
        s.variable = Sweep::Variable::t0;
    else
        throw ConfigError{ "unknown sweep variable '" + std::string{ var } + "'" };
    s.from = parse_uint(text.substr(eq + 1, dots - eq - 1), "sweep start");
    s.to = parse_uint(text.substr(dots + 2), "sweep end");
    if (s.to < s.from)
        throw ConfigError{ "empty sweep range" };
    return s;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        if (config.command == RunConfig::Command::check)
            return run_check(config, out, err);
        return run_series(config, out, err);
    } catch (const lang::SpecError& e) {
        for (const auto& d : e.diagnostics())
            err << "error: " << d.to_string() << '\n';
        return exit_model_error;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << '\n';
        return exit_model_error;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_model_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{ "Bounded PCTL model checking of population models, exact or by mean-field approximation",
                  "flyfast" };
    app.require_subcommand(1);

    RunConfig config;
    std::string mode = "meanfield";
    std::string sweep;
    std::int64_t population = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--spec", config.spec_path, "system specification (.pop)")->required();
        sub->add_option("--N", population, "rescale the initial population to N objects");
        sub->add_option("-o,--output", config.output, "CSV output file (default: standard output)");
    };

    auto* check = app.add_subcommand("check", "check formulas from the tagged object's initial state");
    common(check);
    check->add_option("--formula", config.formulas, "formula, optionally prefixed by 'name:' (repeatable)");
    check->add_option("--formulas", config.formula_file, "formula file (.pctl)");
    check->add_option("--mode", mode, "exact or meanfield")->check(CLI::IsMember({ "exact", "meanfield" }));
    check->add_option("--t0", config.t0, "initial time (meanfield)");
    check->add_option("--sweep", sweep, "k=A..B or t0=A..B");
    check->add_option("--safety-epsilon", config.safety_epsilon, "safety monitor tolerance")
        ->envname("FLYFAST_SAFETY_EPS")
        ->check(CLI::NonNegativeNumber);
    check->add_flag("--strict-safety", config.strict_safety, "exit with 2 when a safety incident is recorded");
    check->add_option("--mu0", config.mu0, "initial occupancy override, comma separated")->delimiter(',');
    check->add_flag("--no-memo", "disable memoization");
    check->add_flag("-v,--verbose", config.verbose, "print checker statistics");

    auto* trajectory = app.add_subcommand("trajectory", "mean-field occupancy trajectory");
    common(trajectory);
    trajectory->add_option("--T", config.horizon, "horizon")->required();
    trajectory->add_option("--mu0", config.mu0, "initial occupancy override, comma separated")->delimiter(',');

    auto* sim = app.add_subcommand("simulate", "mean occupancy of simulated runs of the N-object system");
    common(sim);
    sim->add_option("--T", config.horizon, "horizon")->required();
    sim->add_option("--runs", config.runs, "number of runs");
    sim->add_option("--seed", config.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_model_error;
    }

    try {
        if (check->parsed()) {
            config.command = RunConfig::Command::check;
            config.mode = mode == "exact" ? RunConfig::Mode::exact : RunConfig::Mode::meanfield;
            config.memoize = check->count("--no-memo") == 0;
            if (!sweep.empty())
                config.sweep = parse_sweep(sweep);
        } else if (trajectory->parsed()) {
            config.command = RunConfig::Command::trajectory;
        } else {
            config.command = RunConfig::Command::simulate;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_model_error;
    }
    for (auto* sub : { check, trajectory, sim })
        if (sub->parsed() && sub->count("--N") > 0)
            config.population = population;
    if (check->parsed() && check->count("--safety-epsilon") == 0)
        config.safety_epsilon = checker::safety_epsilon_from_env();
    return run(config, out, err);
}

} // namespace flyfast::cli
