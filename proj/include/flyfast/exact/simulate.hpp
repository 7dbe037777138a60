#pragma once

#include "flyfast/exact/exact_model.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace flyfast {

struct SimulationConfig
{
    std::size_t horizon = 0; // T
    std::size_t runs = 1;    // R
    std::uint64_t seed = 0;
};

// Mean occupancy over R independent runs of the full N-object chain, for
// t = 0..T. Run r draws from its own generator seeded with (seed, r), so the
// result depends on the seed only.
[[nodiscard]] std::vector<OccupancyVector> simulate(const PopulationModel& model, const InitialPopulation& init,
                                                    const SimulationConfig& config);

// One sampled trajectory g(0..T) of the lumped chain.
[[nodiscard]] std::vector<LumpedGlobalState> sample_tagged_path(const PopulationModel& model,
                                                                const InitialPopulation& init, std::size_t horizon,
                                                                std::mt19937_64& rng);

} // namespace flyfast
