#include "flyfast/checker/compiled_formula.hpp"

#include "flyfast/lang/printer.hpp"

#include <cmath>

namespace flyfast::checker {

NodeId FormulaTable::intern(std::string signature, StateNode node)
{
    if (auto it = _node_index.find(signature); it != _node_index.end())
        return it->second;
    const auto id = static_cast<NodeId>(_nodes.size());
    _nodes.push_back(std::move(node));
    _node_index.emplace(std::move(signature), id);
    return id;
}

NodeId FormulaTable::add(const lang::Formula& f)
{
    using lang::FormulaKind;
    StateNode n;
    switch (f.kind) {
    case FormulaKind::atom:
        if (f.atom == lang::true_atom) {
            n.kind = NodeKind::truth;
            return intern("T", std::move(n));
        }
        n.kind = NodeKind::atom;
        n.atom = _resolve(f.atom);
        return intern("A" + std::to_string(n.atom.index), std::move(n));
    case FormulaKind::negation:
        n.kind = NodeKind::negation;
        n.lhs = add(*f.lhs);
        return intern("N" + std::to_string(n.lhs), std::move(n));
    case FormulaKind::disjunction:
        n.kind = NodeKind::disjunction;
        n.lhs = add(*f.lhs);
        n.rhs = add(*f.rhs);
        return intern("O" + std::to_string(n.lhs) + "," + std::to_string(n.rhs), std::move(n));
    case FormulaKind::probability: {
        n.kind = NodeKind::probability;
        n.relation = f.relation;
        n.bound = f.bound;
        n.path = add_path(*f.path, &n.horizon);
        n.path_text = lang::to_text(*f.path);
        auto sig = "P" + std::to_string(static_cast<int>(n.relation)) + "," + lang::format_real(n.bound) + "," +
                   std::to_string(n.path) + "," + std::to_string(n.horizon);
        return intern(std::move(sig), std::move(n));
    }
    }
    throw std::logic_error{ "unknown formula kind" };
}

NodeId FormulaTable::add_path(const lang::PathFormula& p, std::uint64_t* horizon)
{
    PathNode n{ p.kind, add(*p.lhs), 0 };
    std::string sig;
    if (p.kind == lang::PathKind::until) {
        n.rhs = add(*p.rhs);
        sig = "U" + std::to_string(n.lhs) + "," + std::to_string(n.rhs);
    } else {
        sig = "X" + std::to_string(n.lhs);
    }
    if (horizon)
        *horizon = p.kind == lang::PathKind::until ? p.horizon : 0;
    if (auto it = _path_index.find(sig); it != _path_index.end())
        return it->second;
    const auto id = static_cast<NodeId>(_paths.size());
    _paths.push_back(n);
    _path_index.emplace(std::move(sig), id);
    return id;
}

void AccurateSum::add(double x)
{
    const double t = _sum + x;
    if (std::abs(_sum) >= std::abs(x))
        _compensation += (_sum - t) + x;
    else
        _compensation += (x - t) + _sum;
    _sum = t;
}

} // namespace flyfast::checker
