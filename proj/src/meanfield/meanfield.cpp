#include "flyfast/meanfield/meanfield.hpp"

#include <cmath>

namespace flyfast {

namespace {

OccupancyVector apply(const ObjectMatrix& k, const OccupancyVector& m)
{
    const auto s = m.size();
    std::vector<double> out(s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
        if (m[i] == 0.0)
            continue;
        for (std::size_t j = 0; j < s; ++j)
            out[j] += m[i] * k(i, j);
    }
    double total = 0.0;
    for (const double v : out)
        total += v;
    if (std::abs(total - 1.0) > simplex_tolerance)
        throw ModelError{ "mean-field step left the simplex at m = " + m.to_string() + " (sum " +
                          std::to_string(total) + ")" };
    for (auto& v : out)
        v /= total;
    return OccupancyVector{ std::move(out) };
}

} // namespace

OccupancyVector mf_step(const PopulationModel& model, const OccupancyVector& m)
{
    return apply(model.object_matrix(m), m);
}

std::vector<OccupancyVector> mf_trajectory(const PopulationModel& model, const OccupancyVector& mu0,
                                           std::size_t horizon)
{
    std::vector<OccupancyVector> mu{ mu0 };
    mu.reserve(horizon + 1);
    for (std::size_t t = 0; t < horizon; ++t)
        mu.push_back(mf_step(model, mu.back()));
    return mu;
}

TrajectoryCache::TrajectoryCache(std::shared_ptr<const PopulationModel> model, OccupancyVector mu0)
    : _model{ std::move(model) }
{
    if (mu0.size() != _model->state_count())
        throw ModelError{ "initial occupancy has dimension " + std::to_string(mu0.size()) + ", expected " +
                          std::to_string(_model->state_count()) };
    _mu.push_back(std::move(mu0));
}

void TrajectoryCache::extend_to(std::size_t t) const
{
    while (_k.size() <= t) {
        _k.push_back(_model->object_matrix(_mu[_k.size()]));
        _mu.push_back(apply(_k.back(), _mu[_k.size() - 1]));
    }
}

const OccupancyVector& TrajectoryCache::at(std::size_t t) const
{
    std::lock_guard lock{ _mutex };
    if (t >= _mu.size())
        extend_to(t - 1);
    return _mu[t];
}

const ObjectMatrix& TrajectoryCache::matrix(std::size_t t) const
{
    std::lock_guard lock{ _mutex };
    extend_to(t);
    return _k[t];
}

std::size_t TrajectoryCache::computed() const
{
    std::lock_guard lock{ _mutex };
    return _mu.size();
}

MeanFieldModel::MeanFieldModel(std::shared_ptr<const PopulationModel> model, OccupancyVector mu0)
    : _model{ model }, _trajectory{ std::move(model), std::move(mu0) }
{
}

HState MeanFieldModel::init(StateId c0, std::size_t t0) const
{
    if (c0.index >= _model->state_count())
        throw ModelError{ "initial local state out of range" };
    return HState{ c0, t0, &_trajectory.at(t0) };
}

std::vector<Successor<HState>> MeanFieldModel::next(const HState& s) const
{
    const auto& k = _trajectory.matrix(s.t());
    const auto* m = &_trajectory.at(s.t() + 1);
    std::vector<Successor<HState>> out;
    const auto row = k.row(s.c().index);
    for (std::uint32_t j = 0; j < row.size(); ++j)
        if (row[j] > 0.0)
            out.push_back({ HState{ StateId{ j }, s.t() + 1, m }, row[j] });
    return out;
}

bool MeanFieldModel::lab_eval(const HState& s, AtomId atom) const
{
    return _model->lab_eval(s.c(), s.m(), atom);
}

std::string MeanFieldModel::describe(const HState& s) const
{
    return "<" + _model->state_name(s.c()) + ", t=" + std::to_string(s.t()) + ", m=" + s.m().to_string() + ">";
}

} // namespace flyfast
