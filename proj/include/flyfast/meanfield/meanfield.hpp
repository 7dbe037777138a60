#pragma once

#include "flyfast/exact/population_model.hpp"

#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

// Nothing in this module takes a population size: the limit semantics only
// sees occupancy vectors.
namespace flyfast {

// mu' = m * K(m), renormalized when the drift of the sum is within
// simplex_tolerance. Throws ModelError otherwise.
[[nodiscard]] OccupancyVector mf_step(const PopulationModel& model, const OccupancyVector& m);

// [mu(0), ..., mu(T)]
[[nodiscard]] std::vector<OccupancyVector> mf_trajectory(const PopulationModel& model, const OccupancyVector& mu0,
                                                         std::size_t horizon);

// mu(t) and K(mu(t)), computed on demand and kept. Append-only; safe to share
// between threads. References returned by at() and matrix() stay valid for
// the lifetime of the cache.
class TrajectoryCache
{
public:
    TrajectoryCache(std::shared_ptr<const PopulationModel> model, OccupancyVector mu0);

    [[nodiscard]] const OccupancyVector& at(std::size_t t) const;
    [[nodiscard]] const ObjectMatrix& matrix(std::size_t t) const;
    [[nodiscard]] std::size_t computed() const;

private:
    std::shared_ptr<const PopulationModel> _model;
    mutable std::mutex _mutex;
    mutable std::deque<OccupancyVector> _mu;
    mutable std::deque<ObjectMatrix> _k;

    void extend_to(std::size_t t) const;
};

// <c, t> with m = mu(t). Only MeanFieldModel creates these, so m is always a
// trajectory point.
class HState
{
public:
    [[nodiscard]] StateId c() const { return _c; }
    [[nodiscard]] std::size_t t() const { return _t; }
    [[nodiscard]] const OccupancyVector& m() const { return *_m; }

private:
    friend class MeanFieldModel;
    HState(StateId c, std::size_t t, const OccupancyVector* m) : _c{ c }, _t{ t }, _m{ m } {}

    StateId _c;
    std::size_t _t;
    const OccupancyVector* _m;
};

struct HKey
{
    StateId c;
    std::size_t t;
    friend bool operator==(const HKey&, const HKey&) = default;
};

} // namespace flyfast

template <>
struct std::hash<flyfast::HKey>
{
    std::size_t operator()(const flyfast::HKey& k) const noexcept
    {
        return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(k.t) << 20) ^ k.c.index);
    }
};

namespace flyfast {

// Checker adapter for the limit process: next_hd / lab_eval_hd.
class MeanFieldModel
{
public:
    using State = HState;
    using Key = HKey;

    MeanFieldModel(std::shared_ptr<const PopulationModel> model, OccupancyVector mu0);

    [[nodiscard]] const PopulationModel& population_model() const { return *_model; }
    [[nodiscard]] const TrajectoryCache& trajectory() const { return _trajectory; }

    [[nodiscard]] State init(StateId c0, std::size_t t0 = 0) const;

    // Row c of K(mu(t)), landing at time t+1.
    [[nodiscard]] std::vector<Successor<State>> next(const State& s) const;
    [[nodiscard]] bool lab_eval(const State& s, AtomId atom) const;
    [[nodiscard]] AtomId resolve_atom(std::string_view name) const { return _model->resolve_atom(name); }
    [[nodiscard]] Key memo_key(const State& s) const { return Key{ s.c(), s.t() }; }
    [[nodiscard]] std::string describe(const State& s) const;

private:
    std::shared_ptr<const PopulationModel> _model;
    TrajectoryCache _trajectory;
};

} // namespace flyfast
