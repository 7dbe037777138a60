#include "flyfast/lang/parser.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace flyfast::lang {

namespace {

constexpr std::string_view formula_keywords[] = { "true", "false", "P", "X", "U" };

class Validator
{
public:
    explicit Validator(const SystemSpec& spec) : _spec{ spec }
    {
        for (const auto& def : spec.objects.definitions)
            _states.insert(def.state);
    }

    std::vector<Diagnostic> run()
    {
        states();
        probabilities();
        labels();
        initial();
        return std::move(_out);
    }

private:
    const SystemSpec& _spec;
    std::unordered_set<std::string> _states;
    std::vector<Diagnostic> _out;

    void report(ErrorCode code, SourceLoc loc, std::string message)
    {
        _out.push_back(make_diagnostic(code, loc, std::move(message)));
    }

    bool defined(const std::string& state) const { return _states.contains(state); }

    void states()
    {
        std::set<std::string> seen;
        for (const auto& def : _spec.objects.definitions) {
            if (!seen.insert(def.state).second)
                report(ErrorCode::duplicate_state, def.loc, "state " + def.state + " is defined more than once");

            std::set<std::string> actions;
            for (const auto& br : def.branches) {
                if (!actions.insert(br.action).second)
                    report(ErrorCode::duplicate_action, br.loc,
                           "action " + br.action + " occurs more than once in the definition of " + def.state);
                if (!defined(br.target))
                    report(ErrorCode::undefined_state, br.loc, "undefined state " + br.target);
            }
        }
    }

    SourceLoc first_use(const std::string& action) const
    {
        for (const auto& def : _spec.objects.definitions)
            for (const auto& br : def.branches)
                if (br.action == action)
                    return br.loc;
        return {};
    }

    void probabilities()
    {
        const auto actions = _spec.objects.actions();
        std::set<std::string> seen;
        for (const auto& p : _spec.probs) {
            if (!seen.insert(p.action).second)
                report(ErrorCode::duplicate_prob_def, p.loc, "duplicate probability definition for action " + p.action);
            else if (std::find(actions.begin(), actions.end(), p.action) == actions.end())
                report(ErrorCode::unknown_action, p.loc,
                       "probability definition for action " + p.action + " which no state uses");
            expression(*p.expr);
            if (p.expr->uses_division())
                report(ErrorCode::continuity_warning, p.loc,
                       "probability of " + p.action + " uses division and may be discontinuous in the occupancy");
        }
        for (const auto& a : actions)
            if (!seen.contains(a))
                report(ErrorCode::missing_prob_def, first_use(a), "missing probability definition for action " + a);
    }

    void expression(const Expr& e)
    {
        switch (e.kind) {
        case ExprKind::constant:
            if (!(e.value >= 0.0 && e.value <= 1.0))
                report(ErrorCode::literal_out_of_range, e.loc, "constant " + std::to_string(e.value) + " is outside [0,1]");
            return;
        case ExprKind::frc:
            if (!defined(e.state))
                report(ErrorCode::undefined_state, e.loc, "undefined state " + e.state);
            return;
        case ExprKind::arg: return;
        default:
            if (e.lhs)
                expression(*e.lhs);
            if (e.rhs)
                expression(*e.rhs);
        }
    }

    void atom_name(const std::string& atom, SourceLoc loc, std::set<std::string>& seen_kind,
                   const std::set<std::string>& other_kind)
    {
        if (std::find(std::begin(formula_keywords), std::end(formula_keywords), atom) != std::end(formula_keywords))
            report(ErrorCode::reserved_atom, loc, "label name " + atom + " is reserved in formulas");
        else if (other_kind.contains(atom))
            report(ErrorCode::label_clash, loc, "atom " + atom + " is declared both local and global");
        else if (!seen_kind.insert(atom).second)
            report(ErrorCode::duplicate_label, loc, "atom " + atom + " is declared more than once");
    }

    void labels()
    {
        std::set<std::string> local_atoms;
        std::set<std::string> global_atoms;
        for (const auto& lab : _spec.labels.local) {
            atom_name(lab.atom, lab.loc, local_atoms, global_atoms);
            for (const auto& s : lab.states)
                if (!defined(s))
                    report(ErrorCode::undefined_state, lab.loc, "undefined state " + s + " in label " + lab.atom);
        }
        for (const auto& lab : _spec.labels.global) {
            atom_name(lab.atom, lab.loc, global_atoms, local_atoms);
            for (const auto& s : lab.bexp.args)
                if (!defined(s))
                    report(ErrorCode::undefined_state, lab.loc, "undefined state " + s + " in label " + lab.atom);
        }
    }

    void initial()
    {
        if (!_spec.init_loc) {
            report(ErrorCode::missing_init, {}, "missing init statement");
            return;
        }
        std::set<std::string> seen;
        for (const auto& e : _spec.initial) {
            if (!defined(e.state))
                report(ErrorCode::undefined_state, e.loc, "undefined state " + e.state + " in init");
            if (!seen.insert(e.state).second)
                report(ErrorCode::duplicate_init, e.loc, "state " + e.state + " appears more than once in init");
            if (e.count < 0)
                report(ErrorCode::negative_count, e.loc, "negative object count for " + e.state);
        }
        if (_spec.population() < 1)
            report(ErrorCode::empty_population, *_spec.init_loc, "population must be >= 1");
    }
};

} // namespace

std::vector<Diagnostic> validate(const SystemSpec& spec)
{
    return Validator{ spec }.run();
}

} // namespace flyfast::lang
