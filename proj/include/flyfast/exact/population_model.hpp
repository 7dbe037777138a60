#pragma once

#include "flyfast/exact/types.hpp"
#include "flyfast/lang/ast.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flyfast {

// The object-level semantics of a validated system specification: the state
// order, the transition relation, the probability function pi(m, a), the
// object transition matrix K(m) and the labelling. Deliberately holds no
// population size; see InitialPopulation for that.
class PopulationModel
{
public:
    // Throws lang::SpecError if the spec has validation errors.
    explicit PopulationModel(lang::SystemSpec spec);

    [[nodiscard]] const lang::SystemSpec& spec() const { return _spec; }

    [[nodiscard]] std::size_t state_count() const { return _states.size(); }
    [[nodiscard]] const std::string& state_name(StateId s) const { return _states[s.index].name; }
    [[nodiscard]] std::optional<StateId> find_state(std::string_view name) const;
    // Throws ModelError for an unknown name.
    [[nodiscard]] StateId state(std::string_view name) const;

    [[nodiscard]] std::size_t action_count() const { return _actions.size(); }
    [[nodiscard]] const std::string& action_name(ActionId a) const { return _actions[a.index].name; }
    [[nodiscard]] ActionId action(std::string_view name) const;

    // Interpretation of an expression at occupancy m. Throws ModelError on
    // division by zero, a non-finite result or an undefined state.
    [[nodiscard]] double eval_expr(const lang::Expr& e, const OccupancyVector& m) const;

    // pi(m, a); throws ModelError when the value leaves [0,1].
    [[nodiscard]] double action_prob(const OccupancyVector& m, ActionId a) const;

    // K(m). Off-diagonal entries sum pi(m, a) over the actions moving c to c';
    // the diagonal is 1 minus the probabilities of the actions that leave c.
    // Explicit self-loop actions count towards the probabilistic check only.
    // Throws ModelError naming the state when some state is not probabilistic
    // in m.
    [[nodiscard]] ObjectMatrix object_matrix(const OccupancyVector& m) const;

    [[nodiscard]] std::size_t atom_count() const { return _atoms.size(); }
    [[nodiscard]] const std::string& atom_name(AtomId a) const { return _atoms[a.index].name; }
    [[nodiscard]] bool is_global(AtomId a) const { return _atoms[a.index].global != nullptr; }
    // Throws lang::SpecError(unknown-atom).
    [[nodiscard]] AtomId resolve_atom(std::string_view name) const;

    // Local atoms look at the tagged object's state c only, global atoms at m only.
    [[nodiscard]] bool lab_eval(StateId c, const OccupancyVector& m, AtomId a) const;
    [[nodiscard]] bool eval_bexp(const lang::BExp& b, const OccupancyVector& m) const;

private:
    struct Move
    {
        ActionId action;
        StateId target;
    };
    struct StateInfo
    {
        std::string name;
        std::vector<Move> leaving;      // target differs from the state: I(c)
        std::vector<ActionId> self_loops;
    };
    struct ActionInfo
    {
        std::string name;
        lang::ExprPtr expr;
    };
    struct AtomInfo
    {
        std::string name;
        std::vector<bool> holds_in;           // local atoms, indexed by state
        const lang::BExp* global = nullptr;   // global atoms
    };

    lang::SystemSpec _spec;
    std::vector<StateInfo> _states;
    std::vector<ActionInfo> _actions;
    std::vector<AtomInfo> _atoms;
    std::unordered_map<std::string, StateId> _state_index;
    std::unordered_map<std::string, ActionId> _action_index;
    std::unordered_map<std::string, AtomId> _atom_index;

    [[nodiscard]] double eval_node(const lang::Expr& e, const OccupancyVector& m,
                                   std::span<const double> args) const;
};

// The initial configuration: how many objects start in each local state and
// which local state the tagged (first) object starts in.
struct InitialPopulation
{
    std::vector<std::uint64_t> counts; // includes the tagged object
    StateId tagged;

    [[nodiscard]] std::uint64_t size() const;
    [[nodiscard]] OccupancyVector occupancy() const;
};

// Objects are numbered in the order the init statement lists them, so the
// tagged object is in the first listed state with a positive count.
[[nodiscard]] InitialPopulation initial_population(const PopulationModel& model);

// Rescales the counts to total n with largest-remainder rounding, preserving
// the occupancy as closely as integers allow. The tagged state keeps at least
// one object. Throws ModelError when n == 0.
[[nodiscard]] InitialPopulation scale_population(const InitialPopulation& init, std::uint64_t n);

} // namespace flyfast
