#pragma once

// Reference implementations used only by the tests. They share the model
// (K(m) and labels) with the library but none of the checking or lumping code.

#include "flyfast/exact/exact_model.hpp"
#include "flyfast/lang/formula.hpp"

#include <map>
#include <utility>
#include <vector>

namespace flyfast::oracle {

// The unlumped global chain over S^N vectors <c_1, ..., c_N>. Object 1 is
// the tagged one.
class UnlumpedChain
{
public:
    UnlumpedChain(const PopulationModel& model, std::uint32_t n);

    [[nodiscard]] std::size_t size() const { return _size; }
    [[nodiscard]] std::uint32_t population() const { return _n; }
    [[nodiscard]] std::vector<std::uint32_t> decode(std::size_t index) const;
    [[nodiscard]] std::size_t encode(const std::vector<std::uint32_t>& objects) const;

    [[nodiscard]] OccupancyVector occupancy(std::size_t index) const;
    // Global matrix row: product of the objects' K rows.
    [[nodiscard]] const std::vector<std::pair<std::size_t, double>>& row(std::size_t index) const;
    [[nodiscard]] bool label(std::size_t index, AtomId atom) const;
    [[nodiscard]] LumpedGlobalState lump(std::size_t index) const;

    // The global state matching an initial population, objects in init order
    // with the tagged one first.
    [[nodiscard]] std::size_t initial_index(const InitialPopulation& init) const;

    [[nodiscard]] const PopulationModel& model() const { return _model; }

private:
    const PopulationModel& _model;
    std::uint32_t _n;
    std::size_t _s;
    std::size_t _size;
    mutable std::vector<std::vector<std::pair<std::size_t, double>>> _rows;
    mutable std::vector<bool> _built;
};

// Satisfaction set of phi over all global states, computed bottom-up with
// the usual backward iteration for bounded until.
[[nodiscard]] std::vector<bool> satisfaction(const UnlumpedChain& chain, const lang::Formula& phi);
[[nodiscard]] std::vector<double> path_probability(const UnlumpedChain& chain, const lang::PathFormula& phi);

// Distribution over lumped states at time T from global state `start`.
[[nodiscard]] std::map<LumpedGlobalState, double> projected_distribution(const UnlumpedChain& chain,
                                                                         std::size_t start, std::size_t horizon);

// Same, but stepping the lumped chain through next_exact.
[[nodiscard]] std::map<LumpedGlobalState, double> lumped_distribution(const PopulationModel& model,
                                                                      const LumpedGlobalState& start,
                                                                      std::size_t horizon);

// Mean-field process: mu by plain vector-matrix products, path formulas by
// enumerating every path of the tagged object explicitly.
class MeanFieldPaths
{
public:
    MeanFieldPaths(const PopulationModel& model, OccupancyVector mu0);

    [[nodiscard]] const OccupancyVector& mu(std::size_t t);
    [[nodiscard]] bool holds(StateId c, std::size_t t, const lang::Formula& phi);
    [[nodiscard]] double probability(StateId c, std::size_t t, const lang::PathFormula& phi);

private:
    const PopulationModel& _model;
    std::vector<OccupancyVector> _mu;

    void enumerate(StateId c, std::size_t t, std::size_t steps_left, double weight, const lang::PathFormula& phi,
                   double& total);
};

} // namespace flyfast::oracle
