#pragma once

#include "flyfast/exact/types.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace flyfast::cli {

// RFC 4180 field: quoted only when it contains a comma, quote or line break.
[[nodiscard]] std::string csv_field(std::string_view text);

// %.12g
[[nodiscard]] std::string format_number(double v);

// t,<state names> then one row per time point.
void write_occupancy_csv(std::ostream& out, const std::vector<std::string>& states,
                         const std::vector<OccupancyVector>& rows);

} // namespace flyfast::cli
