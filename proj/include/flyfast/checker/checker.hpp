#pragma once

#include "flyfast/checker/compiled_formula.hpp"
#include "flyfast/lang/formula.hpp"

#include <algorithm>
#include <chrono>
#include <concepts>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace flyfast::checker {

// What the checker needs from a semantics: successor distributions, the
// labelling, and a hashable identity for memoization.
template <class M>
concept ModelInterface = requires(const M& m, const typename M::State& s, AtomId a, std::string_view name) {
    typename M::State;
    typename M::Key;
    { m.next(s) } -> std::same_as<std::vector<Successor<typename M::State>>>;
    { m.lab_eval(s, a) } -> std::convertible_to<bool>;
    { m.memo_key(s) } -> std::convertible_to<typename M::Key>;
    { m.resolve_atom(name) } -> std::same_as<AtomId>;
    { m.describe(s) } -> std::convertible_to<std::string>;
    { std::hash<typename M::Key>{}(m.memo_key(s)) } -> std::convertible_to<std::size_t>;
};

inline constexpr double default_safety_epsilon = 1e-6;

// FLYFAST_SAFETY_EPS if set and numeric, otherwise the default.
[[nodiscard]] inline double safety_epsilon_from_env()
{
    if (const char* v = std::getenv("FLYFAST_SAFETY_EPS")) {
        char* end = nullptr;
        const double eps = std::strtod(v, &end);
        if (end != v && *end == '\0' && eps >= 0.0)
            return eps;
    }
    return default_safety_epsilon;
}

struct CheckOptions
{
    bool memoize = true;
    bool track_safety = true;
    double safety_epsilon = default_safety_epsilon;
};

// A computed path probability that lies within safety_epsilon of its bound.
struct SafetyIncident
{
    std::string state;
    std::string path_formula;
    double probability = 0.0;
    double threshold = 0.0;
    double gap = 0.0;
};

struct CheckStats
{
    std::uint64_t states_expanded = 0;
    std::uint64_t cache_hits = 0;
    double wall_seconds = 0.0;
};

struct CheckResult
{
    bool value = false;
    // Path probability of the top-level operator, when the formula is P~p [..].
    std::optional<double> probability;
    std::vector<SafetyIncident> safety;
    CheckStats stats;

    [[nodiscard]] bool safe() const { return safety.empty(); }
};

// On-the-fly bounded-PCTL checking over any ModelInterface. Evaluation uses
// an explicit frame stack, so the horizon is limited by memory only. Memo
// tables live for a single call; check() and check_path() are reentrant.
template <ModelInterface M>
class Checker
{
public:
    using State = typename M::State;
    using Key = typename M::Key;

    explicit Checker(const M& model, CheckOptions options = {}) : _model{ model }, _options{ options } {}

    [[nodiscard]] CheckResult check(const State& s, const lang::Formula& phi) const
    {
        Run run{ _model, _options };
        const auto root = run.table.add(phi);
        CheckResult r;
        const auto start = std::chrono::steady_clock::now();
        r.value = run.eval_state(s, root) != 0.0;
        r.stats = run.stats;
        r.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.probability = run.root_probability;
        r.safety = std::move(run.incidents);
        return r;
    }

    [[nodiscard]] double check_path(const State& s, const lang::PathFormula& phi) const
    {
        Run run{ _model, _options };
        std::uint64_t k = 0;
        const auto path = run.table.add_path(phi, &k);
        return run.eval_path(s, path, k);
    }

private:
    const M& _model;
    CheckOptions _options;

    struct StateKey
    {
        Key key;
        NodeId node;
        bool operator==(const StateKey&) const = default;
    };
    struct PathKey
    {
        Key key;
        NodeId path;
        std::uint64_t k;
        bool operator==(const PathKey&) const = default;
    };
    struct KeyHash
    {
        std::size_t operator()(const StateKey& k) const noexcept
        {
            return std::hash<Key>{}(k.key) * 31 + k.node;
        }
        std::size_t operator()(const PathKey& k) const noexcept
        {
            return (std::hash<Key>{}(k.key) * 31 + k.path) * 1000003u + k.k;
        }
    };

    struct StateFrame
    {
        State s;
        NodeId node;
        int stage = 0;
    };
    struct PathFrame
    {
        PathFrame(State s_, NodeId path_, std::uint64_t k_) : s{ std::move(s_) }, path{ path_ }, k{ k_ } {}

        State s;
        NodeId path;
        std::uint64_t k;
        int stage = 0;
        std::vector<Successor<State>> succ;
        std::size_t index = 0;
        AccurateSum sum;
    };
    using Frame = std::variant<StateFrame, PathFrame>;

    // State of one top-level call.
    struct Run
    {
        const M& model;
        CheckOptions options;
        FormulaTable table;
        std::unordered_map<StateKey, bool, KeyHash> state_memo;
        std::unordered_map<PathKey, double, KeyHash> path_memo;
        std::unordered_set<StateKey, KeyHash> reported;
        std::vector<SafetyIncident> incidents;
        std::optional<double> root_probability;
        CheckStats stats;
        std::vector<Frame> stack;
        double ret = 0.0; // result of the frame popped last; booleans as 0/1

        Run(const M& m, CheckOptions o)
            : model{ m }, options{ o }, table{ [&m](std::string_view name) { return m.resolve_atom(name); } }
        {
        }

        double eval_state(const State& s, NodeId node)
        {
            stack.push_back(StateFrame{ s, node });
            drive();
            return ret;
        }

        double eval_path(const State& s, NodeId path, std::uint64_t k)
        {
            stack.push_back(PathFrame(s, path, k));
            drive();
            return ret;
        }

        void drive()
        {
            while (!stack.empty()) {
                // step() may push, so never hold a reference across it
                if (std::holds_alternative<StateFrame>(stack.back()))
                    step_state();
                else
                    step_path();
            }
        }

        void finish(double value)
        {
            ret = value;
            stack.pop_back();
        }

        void step_state()
        {
            auto& f = std::get<StateFrame>(stack.back());
            const auto& n = table.node(f.node);
            if (f.stage == 0) {
                if (options.memoize) {
                    if (auto it = state_memo.find(StateKey{ model.memo_key(f.s), f.node }); it != state_memo.end()) {
                        ++stats.cache_hits;
                        return finish(it->second ? 1.0 : 0.0);
                    }
                }
                switch (n.kind) {
                case NodeKind::truth: return done_state(1.0);
                case NodeKind::atom: return done_state(model.lab_eval(f.s, n.atom) ? 1.0 : 0.0);
                case NodeKind::negation:
                case NodeKind::disjunction:
                    f.stage = 1;
                    stack.push_back(StateFrame{ f.s, n.lhs });
                    return;
                case NodeKind::probability:
                    f.stage = 1;
                    stack.push_back(PathFrame(f.s, n.path, n.horizon));
                    return;
                }
            }
            switch (n.kind) {
            case NodeKind::negation: return done_state(ret != 0.0 ? 0.0 : 1.0);
            case NodeKind::disjunction:
                if (f.stage == 1 && ret == 0.0) {
                    f.stage = 2;
                    stack.push_back(StateFrame{ f.s, n.rhs });
                    return;
                }
                return done_state(ret);
            case NodeKind::probability: {
                const double p = ret;
                if (options.track_safety) {
                    const double gap = std::abs(p - n.bound);
                    if (gap <= options.safety_epsilon && reported.insert(StateKey{ model.memo_key(f.s), f.node }).second)
                        incidents.push_back(SafetyIncident{ model.describe(f.s), n.path_text, p, n.bound, gap });
                }
                if (stack.size() == 1)
                    root_probability = p;
                return done_state(lang::compare(p, n.relation, n.bound) ? 1.0 : 0.0);
            }
            default: throw std::logic_error{ "bad checker frame" };
            }
        }

        void done_state(double value)
        {
            auto& f = std::get<StateFrame>(stack.back());
            if (options.memoize)
                state_memo.insert_or_assign(StateKey{ model.memo_key(f.s), f.node }, value != 0.0);
            finish(value);
        }

        void step_path()
        {
            auto& f = std::get<PathFrame>(stack.back());
            const auto& pn = table.path(f.path);
            if (f.stage == 0) {
                if (options.memoize) {
                    if (auto it = path_memo.find(PathKey{ model.memo_key(f.s), f.path, f.k }); it != path_memo.end()) {
                        ++stats.cache_hits;
                        return finish(it->second);
                    }
                }
                if (pn.kind == lang::PathKind::next) {
                    expand(f);
                    if (f.succ.empty())
                        return done_path(0.0);
                    f.stage = 3;
                    f.index = 1;
                    stack.push_back(StateFrame{ f.succ[0].state, pn.lhs });
                    return;
                }
                // until: Phi2 first, then Phi1, then recurse with k-1
                f.stage = 1;
                stack.push_back(StateFrame{ f.s, pn.rhs });
                return;
            }
            if (f.stage == 1) {
                if (ret != 0.0)
                    return done_path(1.0);
                f.stage = 2;
                stack.push_back(StateFrame{ f.s, pn.lhs });
                return;
            }
            if (f.stage == 2) {
                if (ret == 0.0 || f.k == 0)
                    return done_path(0.0);
                expand(f);
                if (f.succ.empty())
                    return done_path(0.0);
                f.stage = 3;
                f.index = 1;
                const auto child = f.succ[0].state;
                const auto k = f.k - 1;
                stack.push_back(PathFrame(child, f.path, k));
                return;
            }
            // stage 3: a successor's value is in ret
            f.sum.add(f.succ[f.index - 1].probability * ret);
            if (f.index < f.succ.size()) {
                const auto i = f.index++;
                if (pn.kind == lang::PathKind::next) {
                    stack.push_back(StateFrame{ f.succ[i].state, pn.lhs });
                } else {
                    const auto child = f.succ[i].state;
                    const auto k = f.k - 1;
                    stack.push_back(PathFrame(child, f.path, k));
                }
                return;
            }
            done_path(std::clamp(f.sum.value(), 0.0, 1.0));
        }

        void expand(PathFrame& f)
        {
            ++stats.states_expanded;
            f.succ = model.next(f.s);
        }

        void done_path(double value)
        {
            auto& f = std::get<PathFrame>(stack.back());
            if (options.memoize)
                path_memo.insert_or_assign(PathKey{ model.memo_key(f.s), f.path, f.k }, value);
            finish(value);
        }
    };
};

} // namespace flyfast::checker
