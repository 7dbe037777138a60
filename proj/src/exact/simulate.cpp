#include "flyfast/exact/simulate.hpp"

#include <algorithm>

namespace flyfast {

namespace {

// Adds a multinomial(n, row) draw to out, by sequential binomials.
void multinomial(std::uint64_t n, std::span<const double> row, std::mt19937_64& rng, std::vector<std::uint64_t>& out)
{
    double mass = 1.0;
    for (std::size_t j = 0; j < row.size() && n > 0; ++j) {
        if (j + 1 == row.size() || mass <= row[j]) {
            out[j] += n;
            return;
        }
        const double p = std::clamp(row[j] / mass, 0.0, 1.0);
        const auto y = std::binomial_distribution<std::uint64_t>{ n, p }(rng);
        out[j] += y;
        n -= y;
        mass -= row[j];
    }
}

StateId pick(std::span<const double> row, std::mt19937_64& rng)
{
    const double u = std::uniform_real_distribution<double>{ 0.0, 1.0 }(rng);
    double acc = 0.0;
    std::uint32_t last = 0;
    for (std::uint32_t j = 0; j < row.size(); ++j) {
        if (row[j] <= 0.0)
            continue;
        last = j;
        acc += row[j];
        if (u < acc)
            return StateId{ j };
    }
    return StateId{ last };
}

std::vector<std::uint64_t> step_counts(const ObjectMatrix& k, const std::vector<std::uint64_t>& counts,
                                       std::mt19937_64& rng)
{
    std::vector<std::uint64_t> next(counts.size(), 0);
    for (std::size_t c = 0; c < counts.size(); ++c)
        if (counts[c] > 0)
            multinomial(counts[c], k.row(c), rng, next);
    return next;
}

} // namespace

std::vector<OccupancyVector> simulate(const PopulationModel& model, const InitialPopulation& init,
                                      const SimulationConfig& config)
{
    if (config.runs == 0)
        throw ModelError{ "number of runs must be >= 1" };
    if (init.size() == 0)
        throw ModelError{ "population must be >= 1" };

    const auto s = model.state_count();
    std::vector<std::vector<double>> sums(config.horizon + 1, std::vector<double>(s, 0.0));
    for (std::size_t r = 0; r < config.runs; ++r) {
        std::seed_seq seq{ static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                           static_cast<std::uint32_t>(r) };
        std::mt19937_64 rng{ seq };
        auto counts = init.counts;
        for (std::size_t t = 0;; ++t) {
            const auto m = OccupancyVector::from_counts(counts);
            for (std::size_t i = 0; i < s; ++i)
                sums[t][i] += m[i];
            if (t == config.horizon)
                break;
            counts = step_counts(model.object_matrix(m), counts, rng);
        }
    }

    std::vector<OccupancyVector> out;
    out.reserve(sums.size());
    for (auto& row : sums) {
        for (auto& v : row)
            v /= static_cast<double>(config.runs);
        // renormalize away accumulated rounding
        double total = 0.0;
        for (const double v : row)
            total += v;
        for (auto& v : row)
            v /= total;
        out.emplace_back(std::move(row));
    }
    return out;
}

std::vector<LumpedGlobalState> sample_tagged_path(const PopulationModel& model, const InitialPopulation& init,
                                                  std::size_t horizon, std::mt19937_64& rng)
{
    auto g = lumped_initial_state(init);
    const auto n = population_of(g);
    std::vector<LumpedGlobalState> path{ g };
    for (std::size_t t = 0; t < horizon; ++t) {
        const auto k = model.object_matrix(occupancy_measure(g, n));
        const auto first = pick(k.row(g.first.index), rng);
        std::vector<std::uint64_t> rest(g.rest.begin(), g.rest.end());
        rest = step_counts(k, rest, rng);
        g = LumpedGlobalState{ first, std::vector<std::uint32_t>(rest.begin(), rest.end()) };
        path.push_back(g);
    }
    return path;
}

} // namespace flyfast
