#include "flyfast/exact/population_model.hpp"

#include "flyfast/lang/parser.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flyfast {

PopulationModel::PopulationModel(lang::SystemSpec spec) : _spec{ std::move(spec) }
{
    auto diagnostics = lang::validate(_spec);
    std::erase_if(diagnostics, [](const lang::Diagnostic& d) { return d.severity != lang::Severity::error; });
    if (!diagnostics.empty())
        throw lang::SpecError{ std::move(diagnostics) };

    for (const auto& def : _spec.objects.definitions) {
        _state_index.emplace(def.state, StateId{ static_cast<std::uint32_t>(_states.size()) });
        _states.push_back(StateInfo{ def.state, {}, {} });
    }
    for (const auto& name : _spec.objects.actions()) {
        _action_index.emplace(name, ActionId{ static_cast<std::uint32_t>(_actions.size()) });
        _actions.push_back(ActionInfo{ name, _spec.find_prob(name)->expr });
    }
    for (const auto& def : _spec.objects.definitions) {
        auto& info = _states[_state_index.at(def.state).index];
        for (const auto& br : def.branches) {
            const auto a = _action_index.at(br.action);
            const auto target = _state_index.at(br.target);
            if (br.target == def.state)
                info.self_loops.push_back(a);
            else
                info.leaving.push_back(Move{ a, target });
        }
    }
    for (const auto& lab : _spec.labels.local) {
        AtomInfo atom{ lab.atom, std::vector<bool>(_states.size(), false), nullptr };
        for (const auto& s : lab.states)
            atom.holds_in[_state_index.at(s).index] = true;
        _atom_index.emplace(lab.atom, AtomId{ static_cast<std::uint32_t>(_atoms.size()) });
        _atoms.push_back(std::move(atom));
    }
    for (const auto& lab : _spec.labels.global) {
        _atom_index.emplace(lab.atom, AtomId{ static_cast<std::uint32_t>(_atoms.size()) });
        _atoms.push_back(AtomInfo{ lab.atom, {}, &lab.bexp });
    }
}

std::optional<StateId> PopulationModel::find_state(std::string_view name) const
{
    if (auto it = _state_index.find(std::string{ name }); it != _state_index.end())
        return it->second;
    return std::nullopt;
}

StateId PopulationModel::state(std::string_view name) const
{
    if (auto s = find_state(name))
        return *s;
    throw ModelError{ "undefined state " + std::string{ name } };
}

ActionId PopulationModel::action(std::string_view name) const
{
    if (auto it = _action_index.find(std::string{ name }); it != _action_index.end())
        return it->second;
    throw ModelError{ "unknown action " + std::string{ name } };
}

double PopulationModel::eval_expr(const lang::Expr& e, const OccupancyVector& m) const
{
    if (m.size() != _states.size())
        throw ModelError{ "occupancy vector has dimension " + std::to_string(m.size()) + ", expected " +
                          std::to_string(_states.size()) };
    return eval_node(e, m, {});
}

double PopulationModel::eval_node(const lang::Expr& e, const OccupancyVector& m, std::span<const double> args) const
{
    using lang::ExprKind;
    switch (e.kind) {
    case ExprKind::constant: return e.value;
    case ExprKind::frc: return m[state(e.state)];
    case ExprKind::arg:
        if (e.arg >= args.size())
            throw ModelError{ "function argument out of range" };
        return args[e.arg];
    case ExprKind::negate: return -eval_node(*e.lhs, m, args);
    case ExprKind::paren: return eval_node(*e.lhs, m, args);
    default: break;
    }
    const double a = eval_node(*e.lhs, m, args);
    const double b = eval_node(*e.rhs, m, args);
    double r = 0.0;
    switch (e.kind) {
    case ExprKind::add: r = a + b; break;
    case ExprKind::subtract: r = a - b; break;
    case ExprKind::multiply: r = a * b; break;
    case ExprKind::divide:
        if (b == 0.0)
            throw ModelError{ "division by zero at " + std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column) +
                              " with m = " + m.to_string() };
        r = a / b;
        break;
    case ExprKind::min: r = std::min(a, b); break;
    case ExprKind::max: r = std::max(a, b); break;
    default: throw ModelError{ "malformed expression" };
    }
    if (!std::isfinite(r))
        throw ModelError{ "non-finite expression value with m = " + m.to_string() };
    return r;
}

double PopulationModel::action_prob(const OccupancyVector& m, ActionId a) const
{
    const auto& info = _actions.at(a.index);
    const double p = eval_expr(*info.expr, m);
    if (p < -simplex_tolerance || p > 1.0 + simplex_tolerance)
        throw ModelError{ "action probability out of range at m = " + m.to_string() + ": pi(m, " + info.name +
                          ") = " + std::to_string(p) };
    return std::clamp(p, 0.0, 1.0);
}

ObjectMatrix PopulationModel::object_matrix(const OccupancyVector& m) const
{
    const auto n = _states.size();
    std::vector<double> pi(_actions.size());
    for (std::uint32_t a = 0; a < _actions.size(); ++a)
        pi[a] = action_prob(m, ActionId{ a });

    ObjectMatrix k{ n };
    for (std::size_t c = 0; c < n; ++c) {
        const auto& info = _states[c];
        double leaving = 0.0;
        for (const auto& mv : info.leaving) {
            k(c, mv.target.index) += pi[mv.action.index];
            leaving += pi[mv.action.index];
        }
        double all = leaving;
        for (const auto a : info.self_loops)
            all += pi[a.index];
        if (all < -simplex_tolerance || all > 1.0 + simplex_tolerance)
            throw ModelError{ "state " + info.name + " is not probabilistic in m = " + m.to_string() +
                              " (outgoing probability " + std::to_string(all) + ")" };
        k(c, c) = std::clamp(1.0 - leaving, 0.0, 1.0);
    }
    return k;
}

AtomId PopulationModel::resolve_atom(std::string_view name) const
{
    if (auto it = _atom_index.find(std::string{ name }); it != _atom_index.end())
        return it->second;
    throw lang::SpecError{ lang::make_diagnostic(lang::ErrorCode::unknown_atom, {}, "unknown atom " + std::string{ name }) };
}

bool PopulationModel::eval_bexp(const lang::BExp& b, const OccupancyVector& m) const
{
    std::vector<double> args;
    args.reserve(b.args.size());
    for (const auto& s : b.args)
        args.push_back(m[state(s)]);
    const double v = eval_node(*b.func, m, args);
    return b.relation == lang::Comparison::less ? v < b.threshold : v > b.threshold;
}

bool PopulationModel::lab_eval(StateId c, const OccupancyVector& m, AtomId a) const
{
    const auto& atom = _atoms.at(a.index);
    if (atom.global)
        return eval_bexp(*atom.global, m);
    return atom.holds_in.at(c.index);
}

std::uint64_t InitialPopulation::size() const
{
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{ 0 });
}

OccupancyVector InitialPopulation::occupancy() const
{
    return OccupancyVector::from_counts(counts);
}

InitialPopulation initial_population(const PopulationModel& model)
{
    InitialPopulation init{ std::vector<std::uint64_t>(model.state_count(), 0), StateId{} };
    bool tagged = false;
    for (const auto& e : model.spec().initial) {
        const auto s = model.state(e.state);
        init.counts[s.index] += static_cast<std::uint64_t>(e.count);
        if (!tagged && e.count > 0) {
            init.tagged = s;
            tagged = true;
        }
    }
    if (!tagged)
        throw ModelError{ "population must be >= 1" };
    return init;
}

InitialPopulation scale_population(const InitialPopulation& init, std::uint64_t n)
{
    if (n == 0)
        throw ModelError{ "population must be >= 1" };
    const auto total = init.size();
    if (total == 0)
        throw ModelError{ "population must be >= 1" };

    const auto s = init.counts.size();
    InitialPopulation out{ std::vector<std::uint64_t>(s, 0), init.tagged };
    std::vector<std::pair<double, std::size_t>> remainders;
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < s; ++i) {
        const long double exact = static_cast<long double>(init.counts[i]) * n / total;
        const auto whole = static_cast<std::uint64_t>(std::floor(exact));
        out.counts[i] = whole;
        assigned += whole;
        remainders.emplace_back(static_cast<double>(exact - whole), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned)
        ++out.counts[remainders[i % s].second];

    if (out.counts[init.tagged.index] == 0) {
        const auto donor = static_cast<std::size_t>(
            std::max_element(out.counts.begin(), out.counts.end()) - out.counts.begin());
        --out.counts[donor];
        ++out.counts[init.tagged.index];
    }
    return out;
}

} // namespace flyfast
