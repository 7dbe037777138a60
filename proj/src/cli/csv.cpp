#include "flyfast/cli/csv.hpp"

#include <cstdio>

namespace flyfast::cli {

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string{ text };
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_number(double v)
{
    if (v == 0.0)
        v = 0.0; // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_occupancy_csv(std::ostream& out, const std::vector<std::string>& states,
                         const std::vector<OccupancyVector>& rows)
{
    out << "t";
    for (const auto& s : states)
        out << ',' << csv_field(s);
    out << '\n';
    for (std::size_t t = 0; t < rows.size(); ++t) {
        out << t;
        for (std::size_t i = 0; i < rows[t].size(); ++i)
            out << ',' << format_number(rows[t][i]);
        out << '\n';
    }
}

} // namespace flyfast::cli
