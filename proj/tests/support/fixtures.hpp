#pragma once

#include "flyfast/exact/population_model.hpp"
#include "flyfast/lang/parser.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace flyfast::fixtures {

inline const std::filesystem::path models_dir{ FLYFAST_MODELS_DIR };
inline const std::filesystem::path tests_dir{ FLYFAST_TESTS_DIR };

inline std::string read_text(const std::filesystem::path& p)
{
    std::ifstream in{ p, std::ios::binary };
    if (!in)
        throw std::runtime_error{ "cannot open " + p.string() };
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The worm epidemic with the example parameters and N objects all in S.
inline std::string epidemic_text(int n = 8)
{
    return "S := inf_ext.E + inf_sus.E;\n"
           "E := activate.I;\n"
           "I := patch.R;\n"
           "R := loss.S;\n"
           "inf_ext :: 0.1;\n"
           "inf_sus :: 0.2 * frc I;\n"
           "activate :: 0.4;\n"
           "patch :: 0.2;\n"
           "loss :: 0.1;\n"
           "label local e = E;\n"
           "label local i = I;\n"
           "label local r = R;\n"
           "label global LowInf = frc I < 0.25;\n"
           "init <S[" +
           std::to_string(n) + "]>;\n";
}

inline std::shared_ptr<const PopulationModel> epidemic(int n = 8)
{
    return std::make_shared<const PopulationModel>(lang::parse_system_spec(epidemic_text(n)));
}

inline std::shared_ptr<const PopulationModel> load_model(const std::filesystem::path& p)
{
    return std::make_shared<const PopulationModel>(lang::parse_system_spec(read_text(p)));
}

// K(m) of the epidemic written out by hand, rows and columns S, E, I, R.
inline std::array<std::array<double, 4>, 4> epidemic_k(const std::array<double, 4>& m)
{
    const double ae = 0.1, ai = 0.2, aa = 0.4, ar = 0.2, as = 0.1;
    const double infect = ae + ai * m[2];
    return { { { 1 - infect, infect, 0, 0 }, { 0, 1 - aa, aa, 0 }, { 0, 0, 1 - ar, ar }, { as, 0, 0, 1 - as } } };
}

} // namespace flyfast::fixtures
