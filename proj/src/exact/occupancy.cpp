#include "flyfast/exact/types.hpp"

#include "flyfast/lang/printer.hpp"

#include <cmath>
#include <numeric>

namespace flyfast {

bool on_simplex(std::span<const double> values, double tolerance)
{
    double sum = 0.0;
    for (const double v : values) {
        if (!(v >= -tolerance && v <= 1.0 + tolerance))
            return false;
        sum += v;
    }
    return !values.empty() && std::abs(sum - 1.0) <= tolerance;
}

OccupancyVector::OccupancyVector(std::vector<double> values) : _values{ std::move(values) }
{
    if (!on_simplex(_values))
        throw ModelError{ "occupancy vector " + to_string() + " is not on the unit simplex" };
}

OccupancyVector OccupancyVector::from_counts(std::span<const std::uint64_t> counts)
{
    const auto total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{ 0 });
    if (total == 0)
        throw ModelError{ "population must be >= 1" };
    std::vector<double> v(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        v[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return OccupancyVector{ std::move(v) };
}

double OccupancyVector::distance_inf(const OccupancyVector& other) const
{
    if (other.size() != size())
        throw ModelError{ "occupancy vectors of different dimension" };
    double d = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        d = std::max(d, std::abs(_values[i] - other._values[i]));
    return d;
}

std::string OccupancyVector::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < _values.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += lang::format_real(_values[i]);
    }
    return out + ")";
}

} // namespace flyfast
