#include "flyfast/exact/exact_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numeric>

namespace flyfast {

namespace {

using Counts = std::vector<std::uint32_t>;
using Distribution = std::map<Counts, double>;

double binomial(std::uint32_t n, std::uint32_t k)
{
    k = std::min(k, n - k);
    double r = 1.0;
    for (std::uint32_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Every way of sending `left` objects along the positive entries of row. Each
// outcome is added on top of `current` and accumulated into `out`, scaled by
// `weight`.
void spread(std::span<const double> row, const std::vector<std::size_t>& support, std::size_t pos,
            std::uint32_t left, double coef, double weight, Counts& current, Distribution& out)
{
    const auto j = support[pos];
    if (pos + 1 == support.size()) {
        const double p = coef * std::pow(row[j], left) * weight;
        current[j] += left;
        out[current] += p;
        current[j] -= left;
        return;
    }
    for (std::uint32_t y = 0; y <= left; ++y) {
        current[j] += y;
        spread(row, support, pos + 1, left - y, coef * binomial(left, y) * std::pow(row[j], y), weight, current,
               out);
        current[j] -= y;
    }
}

} // namespace

std::uint64_t population_of(const LumpedGlobalState& g)
{
    return 1 + std::accumulate(g.rest.begin(), g.rest.end(), std::uint64_t{ 0 });
}

OccupancyVector occupancy_measure(const LumpedGlobalState& g, std::uint64_t n)
{
    if (population_of(g) != n)
        throw ModelError{ "lumped state holds " + std::to_string(population_of(g)) + " objects, expected " +
                          std::to_string(n) };
    if (g.first.index >= g.rest.size())
        throw ModelError{ "tagged state out of range" };
    std::vector<std::uint64_t> counts(g.rest.begin(), g.rest.end());
    ++counts[g.first.index];
    return OccupancyVector::from_counts(counts);
}

std::vector<Successor<LumpedGlobalState>> next_exact(const PopulationModel& model, const LumpedGlobalState& g)
{
    const auto s = model.state_count();
    if (g.rest.size() != s)
        throw ModelError{ "lumped state has the wrong dimension" };
    const auto m = occupancy_measure(g, population_of(g));
    const auto k = model.object_matrix(m);

    // Distribution of the untagged counts after one step, class by class.
    Distribution acc{ { Counts(s, 0), 1.0 } };
    for (std::size_t c = 0; c < s; ++c) {
        if (g.rest[c] == 0)
            continue;
        const auto row = k.row(c);
        std::vector<std::size_t> support;
        for (std::size_t j = 0; j < s; ++j)
            if (row[j] > 0.0)
                support.push_back(j);
        Distribution next;
        for (const auto& [base, w] : acc) {
            Counts current = base;
            spread(row, support, 0, g.rest[c], 1.0, w, current, next);
        }
        acc = std::move(next);
    }

    std::vector<Successor<LumpedGlobalState>> out;
    const auto tagged_row = k.row(g.first.index);
    for (std::uint32_t c = 0; c < s; ++c) {
        if (tagged_row[c] <= 0.0)
            continue;
        for (const auto& [counts, p] : acc) {
            const double q = tagged_row[c] * p;
            if (q >= negligible_probability)
                out.push_back({ LumpedGlobalState{ StateId{ c }, counts }, q });
        }
    }
    return out;
}

bool lab_eval_exact(const PopulationModel& model, const LumpedGlobalState& g, AtomId atom)
{
    if (!model.is_global(atom))
        return model.lab_eval(g.first, OccupancyVector{}, atom);
    return model.lab_eval(g.first, occupancy_measure(g, population_of(g)), atom);
}

LumpedGlobalState lumped_initial_state(const InitialPopulation& init)
{
    if (init.size() == 0 || init.counts.at(init.tagged.index) == 0)
        throw ModelError{ "population must be >= 1" };
    LumpedGlobalState g{ init.tagged, {} };
    for (const auto c : init.counts) {
        if (c > std::numeric_limits<std::uint32_t>::max())
            throw ModelError{ "population too large for the exact backend" };
        g.rest.push_back(static_cast<std::uint32_t>(c));
    }
    --g.rest[init.tagged.index];
    return g;
}

ExactModel::ExactModel(std::shared_ptr<const PopulationModel> model) : _model{ std::move(model) } {}

std::vector<Successor<LumpedGlobalState>> ExactModel::next(const State& s) const
{
    {
        std::lock_guard lock{ _mutex };
        if (auto it = _cache.find(s); it != _cache.end())
            return it->second;
    }
    auto succ = next_exact(*_model, s);
    std::lock_guard lock{ _mutex };
    return _cache.emplace(s, std::move(succ)).first->second;
}

std::string ExactModel::describe(const State& s) const
{
    std::string out = "<" + _model->state_name(s.first) + " | ";
    for (std::size_t i = 0; i < s.rest.size(); ++i) {
        if (i > 0)
            out += ",";
        out += _model->state_name(StateId{ static_cast<std::uint32_t>(i) }) + "[" + std::to_string(s.rest[i]) + "]";
    }
    return out + ">";
}

std::size_t ExactModel::cached_states() const
{
    std::lock_guard lock{ _mutex };
    return _cache.size();
}

} // namespace flyfast
