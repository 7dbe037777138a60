#pragma once

#include "flyfast/exact/population_model.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace flyfast {

// Global state of the N-object system up to permutation of the untagged
// objects: the tagged object's local state and how many of the other N-1
// objects are in each local state.
struct LumpedGlobalState
{
    StateId first;
    std::vector<std::uint32_t> rest;

    friend auto operator<=>(const LumpedGlobalState&, const LumpedGlobalState&) = default;
    friend bool operator==(const LumpedGlobalState&, const LumpedGlobalState&) = default;
};

[[nodiscard]] std::uint64_t population_of(const LumpedGlobalState& g);

// (indicator(first) + rest) / N. Throws ModelError if N does not match.
[[nodiscard]] OccupancyVector occupancy_measure(const LumpedGlobalState& g, std::uint64_t n);

// Successor distribution of g: the tagged object moves by its row of K(m),
// the others by independent per-class multinomials. Sorted by state, strictly
// positive probabilities only.
[[nodiscard]] std::vector<Successor<LumpedGlobalState>> next_exact(const PopulationModel& model,
                                                                   const LumpedGlobalState& g);

[[nodiscard]] bool lab_eval_exact(const PopulationModel& model, const LumpedGlobalState& g, AtomId atom);

[[nodiscard]] LumpedGlobalState lumped_initial_state(const InitialPopulation& init);

} // namespace flyfast

template <>
struct std::hash<flyfast::LumpedGlobalState>
{
    std::size_t operator()(const flyfast::LumpedGlobalState& g) const noexcept
    {
        std::size_t h = g.first.index;
        for (const auto c : g.rest)
            h = h * 1000003u ^ (c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
        return h;
    }
};

namespace flyfast {

// Checker adapter for the exact finite-N semantics. Successor lists are
// cached; the cache is internally synchronized.
class ExactModel
{
public:
    using State = LumpedGlobalState;
    using Key = LumpedGlobalState;

    explicit ExactModel(std::shared_ptr<const PopulationModel> model);

    [[nodiscard]] const PopulationModel& population_model() const { return *_model; }

    [[nodiscard]] std::vector<Successor<State>> next(const State& s) const;
    [[nodiscard]] bool lab_eval(const State& s, AtomId atom) const { return lab_eval_exact(*_model, s, atom); }
    [[nodiscard]] AtomId resolve_atom(std::string_view name) const { return _model->resolve_atom(name); }
    [[nodiscard]] const Key& memo_key(const State& s) const { return s; }
    [[nodiscard]] std::string describe(const State& s) const;

    [[nodiscard]] std::size_t cached_states() const;

private:
    std::shared_ptr<const PopulationModel> _model;
    mutable std::mutex _mutex;
    mutable std::unordered_map<State, std::vector<Successor<State>>> _cache;
};

} // namespace flyfast
