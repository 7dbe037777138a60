#include "fixtures.hpp"

#include "flyfast/cli/csv.hpp"
#include "flyfast/cli/run.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

using namespace flyfast;

namespace {

struct Outcome
{
    int code = -1;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "flyfast");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

const std::string epidemic_spec = (fixtures::models_dir / "epidemic.pop").string();
const std::string epidemic_formulas = (fixtures::models_dir / "epidemic.pctl").string();

std::vector<std::vector<std::string>> split_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in{ text };
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::istringstream cells{ line };
        std::string cell;
        while (std::getline(cells, cell, ','))
            row.push_back(cell);
        if (!line.empty() && line.back() == ',')
            row.emplace_back();
        rows.push_back(std::move(row));
    }
    return rows;
}

// Runs the real executable through the shell. Returns the exit status.
int shell(const std::string& command, std::string* err_text = nullptr)
{
    const auto err_path = std::filesystem::temp_directory_path() / ("flyfast_cli_err_" + std::to_string(::getpid()));
    const int status = std::system((command + " > /dev/null 2> " + err_path.string()).c_str());
    if (err_text)
        *err_text = fixtures::read_text(err_path);
    std::filesystem::remove(err_path);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(Csv, FieldQuoting)
{
    EXPECT_EQ(cli::csv_field("P1"), "P1");
    EXPECT_EQ(cli::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(cli::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(cli::csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(Csv, NumberFormat)
{
    EXPECT_EQ(cli::format_number(0.0), "0");
    EXPECT_EQ(cli::format_number(-0.0), "0");
    EXPECT_EQ(cli::format_number(0.9), "0.9");
    EXPECT_EQ(cli::format_number(0.72252), "0.72252");
    EXPECT_EQ(cli::format_number(1.0 / 3.0), "0.333333333333");
}

TEST(Sweep, Parse)
{
    const auto k = cli::parse_sweep("k=0..70");
    EXPECT_EQ(k.variable, cli::Sweep::Variable::k);
    EXPECT_EQ(k.from, 0u);
    EXPECT_EQ(k.to, 70u);
    const auto t = cli::parse_sweep("t0=3..5");
    EXPECT_EQ(t.variable, cli::Sweep::Variable::t0);
    EXPECT_EQ(t.from, 3u);
    for (const char* bad : { "k=5..2", "x=0..1", "k=0-3", "k=..3", "k=a..b", "" })
        EXPECT_THROW((void)cli::parse_sweep(bad), cli::ConfigError) << bad;
}

TEST(Trajectory, FirstSteps)
{
    const auto o = invoke({ "trajectory", "--spec", epidemic_spec, "--T", "2" });
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out, "t,S,E,I,R\n0,1,0,0,0\n1,0.9,0.1,0,0\n2,0.81,0.15,0.04,0\n");
}

TEST(Trajectory, PopulationDoesNotMatterForTheAllSusceptibleStart)
{
    const auto a = invoke({ "trajectory", "--spec", epidemic_spec, "--T", "30", "--N", "1000" });
    const auto b = invoke({ "trajectory", "--spec", epidemic_spec, "--T", "30", "--N", "1000000" });
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Trajectory, WritesFile)
{
    const auto path = std::filesystem::temp_directory_path() / "flyfast_traj_test.csv";
    const auto o = invoke({ "trajectory", "--spec", epidemic_spec, "--T", "70", "-o", path.string() });
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_TRUE(o.out.empty());
    EXPECT_EQ(fixtures::read_text(path), fixtures::read_text(fixtures::tests_dir / "golden/trajectory_T70.csv"));
    std::filesystem::remove(path);
}

TEST(Check, CsvLayout)
{
    const auto o = invoke({ "check", "--spec", epidemic_spec, "--mode", "exact", "--N", "2", "--formula", "e | LowInf",
                            "--formula", "P>0 [ X e ]" });
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out, "t0,formula,probability,verdict,safety_incidents\n"
                     "0,f1,,true,0\n"
                     "0,f2,0.1,true,0\n");
}

TEST(Check, NamedFormulasFromFile)
{
    const auto o = invoke({ "check", "--spec", epidemic_spec, "--formulas", epidemic_formulas });
    ASSERT_EQ(o.code, 0) << o.err;
    const auto rows = split_csv(o.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[1][1], "P1");
    EXPECT_EQ(rows[1][2], "0.999963640203");
    EXPECT_EQ(rows[2][2], "0.592063178404");
    EXPECT_EQ(rows[3][2], "0.999210542044");
}

TEST(Check, MeanFieldSweepMatchesGolden)
{
    const auto o = invoke({ "check", "--spec", epidemic_spec, "--formulas", epidemic_formulas, "--sweep", "k=0..70" });
    ASSERT_EQ(o.code, 0) << o.err;
    const auto got = split_csv(o.out);
    const auto want = split_csv(fixtures::read_text(fixtures::tests_dir / "golden/meanfield_k_sweep.csv"));
    ASSERT_EQ(got.size(), want.size());
    EXPECT_EQ(got[0], want[0]);
    for (std::size_t i = 1; i < want.size(); ++i) {
        ASSERT_EQ(got[i].size(), 5u);
        EXPECT_EQ(got[i][0], want[i][0]);
        EXPECT_EQ(got[i][1], want[i][1]);
        EXPECT_NEAR(std::stod(got[i][2]), std::stod(want[i][2]), 1e-10) << "row " << i;
        EXPECT_EQ(got[i][3], want[i][3]) << "row " << i;
    }
}

TEST(Check, ExactSweepHandValues)
{
    const auto o = invoke({ "check", "--spec", epidemic_spec, "--mode", "exact", "--N", "8", "--formula",
                            "P<=0.5 [ true U<=1 i ]", "--sweep", "k=0..3" });
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out, "k,formula,probability,verdict,safety_incidents\n"
                     "0,f1,0,true,0\n1,f1,0,true,0\n2,f1,0.04,true,0\n3,f1,0.1,true,0\n");
}

TEST(Check, StartTimeSweep)
{
    const auto o = invoke({ "check", "--spec", epidemic_spec, "--formula", "P<=0.5 [ true U<=3 i ]", "--sweep", "t0=0..2" });
    ASSERT_EQ(o.code, 0) << o.err;
    const auto rows = split_csv(o.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0][0], "t0");
    EXPECT_EQ(rows[1][2], "0.1");
    // from S at t0 = 1: S E I, S E E I, S S E I with I(2) = 0.04
    EXPECT_NEAR(std::stod(rows[2][2]), 0.1 * 0.4 + 0.1 * 0.6 * 0.4 + 0.9 * (0.1 + 0.2 * 0.04) * 0.4, 1e-12);
}

TEST(Check, InitialOccupancyOverride)
{
    // Half the population infected: the tagged susceptible is exposed at once with 0.1 + 0.2 * 0.5
    const auto o = invoke({ "check", "--spec", epidemic_spec, "--formula", "P>0 [ X e ]", "--mu0", "0.5,0,0.5,0" });
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NEAR(std::stod(split_csv(o.out)[1][2]), 0.2, 1e-15);
    EXPECT_EQ(invoke({ "check", "--spec", epidemic_spec, "--formula", "P>0 [ X e ]", "--mu0", "0.5,0.2" }).code,
              cli::exit_model_error);
}

TEST(Check, SafetyIncidentReporting)
{
    const std::vector<std::string> base = { "check", "--spec", epidemic_spec, "--N", "1", "--formula",
                                            "P<0.19 [ true U<=2 e ]" };
    const auto lenient = invoke(base);
    EXPECT_EQ(lenient.code, cli::exit_ok);
    EXPECT_NE(lenient.out.find(",0.19,false,1\n"), std::string::npos) << lenient.out;
    EXPECT_NE(lenient.err.find("safety: f1"), std::string::npos);

    auto strict = base;
    strict.push_back("--strict-safety");
    EXPECT_EQ(invoke(strict).code, cli::exit_safety);

    auto tight = strict;
    tight.insert(tight.end(), { "--safety-epsilon", "0" });
    // 0.19 is still computed as exactly the bound
    EXPECT_EQ(invoke(tight).code, cli::exit_safety);
}

TEST(Check, ErrorsExitWithModelErrorCode)
{
    auto o = invoke({ "check", "--spec", epidemic_spec, "--N", "0", "--formula", "P>0 [ X e ]" });
    EXPECT_EQ(o.code, cli::exit_model_error);
    EXPECT_NE(o.err.find("population must be"), std::string::npos);

    o = invoke({ "check", "--spec", epidemic_spec, "--formula", "P>0 [ X e" });
    EXPECT_EQ(o.code, cli::exit_model_error);
    EXPECT_NE(o.err.find("syntax-error"), std::string::npos);

    o = invoke({ "check", "--spec", epidemic_spec, "--formula", "P>0 [ X zombie ]" });
    EXPECT_EQ(o.code, cli::exit_model_error);
    EXPECT_NE(o.err.find("unknown-atom"), std::string::npos);

    o = invoke({ "check", "--spec", (fixtures::tests_dir / "corpus/invalid/undefined_state.pop").string(), "--formula",
                 "P>0 [ X e ]" });
    EXPECT_EQ(o.code, cli::exit_model_error);
    EXPECT_NE(o.err.find("undefined-state"), std::string::npos);

    EXPECT_EQ(invoke({ "check", "--spec", "/nonexistent.pop", "--formula", "true" }).code, cli::exit_model_error);
    EXPECT_EQ(invoke({ "check", "--spec", epidemic_spec, "--mode", "exact", "--t0", "3", "--formula", "true" }).code,
              cli::exit_model_error);
    EXPECT_EQ(invoke({ "check", "--spec", epidemic_spec }).code, cli::exit_model_error);
    EXPECT_EQ(invoke({ "check", "--formula", "true" }).code, cli::exit_model_error);
    EXPECT_EQ(invoke({ "frobnicate" }).code, cli::exit_model_error);
    EXPECT_EQ(invoke({ "--help" }).code, cli::exit_ok);
}

TEST(Simulate, SeedDeterminesOutput)
{
    const std::vector<std::string> args = { "simulate", "--spec", epidemic_spec, "--N", "100", "--T", "10", "--runs", "5" };
    auto with_seed = [&](const char* seed) {
        auto a = args;
        a.insert(a.end(), { "--seed", seed });
        return invoke(a);
    };
    const auto a = with_seed("11");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, with_seed("11").out);
    EXPECT_NE(a.out, with_seed("12").out);
    const auto rows = split_csv(a.out);
    ASSERT_EQ(rows.size(), 12u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{ "t", "S", "E", "I", "R" }));
    EXPECT_EQ(rows[1], (std::vector<std::string>{ "0", "1", "0", "0", "0" }));
}

TEST(Binary, ExitStatusAndEnvironment)
{
    const std::string bin = FLYFAST_BINARY;
    const std::string base = bin + " check --spec " + epidemic_spec + " --N 1 --strict-safety --formula '";
    EXPECT_EQ(shell(base + "P<0.19 [ true U<=2 e ]'"), cli::exit_safety);
    EXPECT_EQ(shell(base + "P<0.15 [ true U<=2 e ]'"), cli::exit_ok);
    // the environment widens the monitor's band
    EXPECT_EQ(shell("FLYFAST_SAFETY_EPS=0.05 " + base + "P<0.15 [ true U<=2 e ]'"), cli::exit_safety);
    std::string err;
    EXPECT_EQ(shell(bin + " check --spec " + epidemic_spec + " --N 0 --formula true", &err), cli::exit_model_error);
    EXPECT_NE(err.find("population must be"), std::string::npos) << err;
}
