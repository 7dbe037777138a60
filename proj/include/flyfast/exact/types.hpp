#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flyfast {

// Row-sum and simplex tolerance.
inline constexpr double simplex_tolerance = 1e-9;
// Successor probabilities below this are dropped after aggregation.
inline constexpr double negligible_probability = 1e-15;

// Index of a local state in the total order of the object specification.
struct StateId
{
    std::uint32_t index = 0;
    friend auto operator<=>(const StateId&, const StateId&) = default;
};

struct ActionId
{
    std::uint32_t index = 0;
    friend auto operator<=>(const ActionId&, const ActionId&) = default;
};

// Atomic proposition; resolved once against the label definitions.
struct AtomId
{
    std::uint32_t index = 0;
    friend auto operator<=>(const AtomId&, const AtomId&) = default;
};

// Raised when the model is not a DTMC at some occupancy (a state is not
// probabilistic, an action probability leaves [0,1], division by zero), or on
// inconsistent inputs to the semantic functions.
class ModelError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

template <class State>
struct Successor
{
    State state;
    double probability;
};

// A point of the unit simplex: the fraction of objects in each local state.
class OccupancyVector
{
public:
    OccupancyVector() = default;
    // Throws ModelError unless every entry is in [0,1] and the sum is 1 within
    // simplex_tolerance.
    explicit OccupancyVector(std::vector<double> values);

    [[nodiscard]] static OccupancyVector from_counts(std::span<const std::uint64_t> counts);

    [[nodiscard]] std::size_t size() const { return _values.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return _values[i]; }
    [[nodiscard]] double operator[](StateId s) const { return _values[s.index]; }
    [[nodiscard]] std::span<const double> values() const { return _values; }

    [[nodiscard]] double distance_inf(const OccupancyVector& other) const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const OccupancyVector&, const OccupancyVector&) = default;

private:
    std::vector<double> _values;
};

[[nodiscard]] bool on_simplex(std::span<const double> values, double tolerance = simplex_tolerance);

// Dense S x S matrix, row-major.
class ObjectMatrix
{
public:
    explicit ObjectMatrix(std::size_t states) : _n{ states }, _data(states * states, 0.0) {}

    [[nodiscard]] std::size_t size() const { return _n; }
    [[nodiscard]] double& operator()(std::size_t r, std::size_t c) { return _data[r * _n + c]; }
    [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return _data[r * _n + c]; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const { return { _data.data() + r * _n, _n }; }

private:
    std::size_t _n;
    std::vector<double> _data;
};

} // namespace flyfast

template <>
struct std::hash<flyfast::StateId>
{
    std::size_t operator()(flyfast::StateId s) const noexcept { return std::hash<std::uint32_t>{}(s.index); }
};
