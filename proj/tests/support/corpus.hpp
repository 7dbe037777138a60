#pragma once

#include "fixtures.hpp"

#include "flyfast/lang/printer.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

namespace flyfast::fixtures {

inline std::vector<std::filesystem::path> corpus_files(const std::string& sub)
{
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator{ tests_dir / "corpus" / sub })
        if (entry.path().extension() == ".pop" || entry.path().extension() == ".pctl")
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

// "// expect: code" or "# expect: code" on the first line.
inline std::string expected_code(const std::string& text)
{
    const auto pos = text.find("expect:");
    if (pos == std::string::npos)
        return {};
    auto code = text.substr(pos + 7, text.find('\n') - pos - 7);
    code.erase(0, code.find_first_not_of(' '));
    code.erase(code.find_last_not_of(" \r") + 1);
    return code;
}

// Code of the first error an invalid corpus file produces; nullopt if it is
// accepted. Formula files are also checked against the epidemic labels.
inline std::optional<std::string> first_error(const std::filesystem::path& p)
{
    const auto text = read_text(p);
    try {
        if (p.extension() == ".pop") {
            (void)lang::parse_system_spec(text);
        } else {
            const auto spec = lang::parse_system_spec(epidemic_text());
            for (const auto& f : lang::parse_formula_file(text)) {
                const auto d = lang::check_atoms(*f.formula, spec);
                if (!d.empty())
                    return std::string{ lang::code_name(d.front().code) };
            }
        }
    } catch (const lang::SpecError& e) {
        return std::string{ lang::code_name(e.code()) };
    }
    return std::nullopt;
}

// Whether a valid corpus file parses and its printed form reparses to an
// equal structure.
inline bool round_trips(const std::filesystem::path& p, std::string* why = nullptr)
{
    const auto text = read_text(p);
    try {
        if (p.extension() == ".pop") {
            const auto spec = lang::parse_system_spec(text);
            const auto again = lang::parse_system_spec(lang::to_text(spec));
            if (!lang::equivalent(spec, again)) {
                if (why)
                    *why = "reparsed spec differs:\n" + lang::to_text(spec);
                return false;
            }
            return true;
        }
        for (const auto& f : lang::parse_formula_file(text)) {
            const auto printed = lang::to_text(*f.formula);
            if (!lang::equivalent(*f.formula, *lang::parse_formula(printed))) {
                if (why)
                    *why = "formula " + f.id + " reprinted as " + printed;
                return false;
            }
        }
        return true;
    } catch (const std::exception& e) {
        if (why)
            *why = e.what();
        return false;
    }
}

// Random bytes, biased towards the characters the lexers know.
inline std::string random_bytes(std::mt19937_64& rng)
{
    static constexpr std::string_view alphabet = "SEIR.+:=;<>[]()!&|PXU0123456789 \n\tfrcminaxlbeoglt-*/,#";
    const auto len = std::uniform_int_distribution<int>{ 0, 64 }(rng);
    std::string out;
    for (int i = 0; i < len; ++i) {
        if (std::uniform_int_distribution<int>{ 0, 3 }(rng) == 0)
            out += static_cast<char>(std::uniform_int_distribution<int>{ 0, 255 }(rng));
        else
            out += alphabet[std::uniform_int_distribution<std::size_t>{ 0, alphabet.size() - 1 }(rng)];
    }
    return out;
}

} // namespace flyfast::fixtures
