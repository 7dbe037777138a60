#pragma once

#include "flyfast/exact/types.hpp"
#include "flyfast/lang/formula.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace flyfast::checker {

using NodeId = std::uint32_t;

enum class NodeKind
{
    truth,
    atom,
    negation,
    disjunction,
    probability,
};

struct StateNode
{
    NodeKind kind = NodeKind::truth;
    AtomId atom;
    NodeId lhs = 0;
    NodeId rhs = 0;
    // probability nodes
    lang::Relation relation = lang::Relation::greater_equal;
    double bound = 0.0;
    NodeId path = 0;
    std::uint64_t horizon = 0;
    std::string path_text;
};

// A path formula without its step bound, so that F1 U<=k F2 for every k
// shares one node and memo entries are keyed by the remaining bound.
struct PathNode
{
    lang::PathKind kind = lang::PathKind::next;
    NodeId lhs = 0;
    NodeId rhs = 0;
};

// Hash-consed formula DAG with atoms resolved against one model.
class FormulaTable
{
public:
    using AtomResolver = std::function<AtomId(std::string_view)>;

    explicit FormulaTable(AtomResolver resolve) : _resolve{ std::move(resolve) } {}

    NodeId add(const lang::Formula& f);
    // Adds the path formula; *horizon receives its bound (0 for next).
    NodeId add_path(const lang::PathFormula& p, std::uint64_t* horizon = nullptr);

    [[nodiscard]] const StateNode& node(NodeId id) const { return _nodes[id]; }
    [[nodiscard]] const PathNode& path(NodeId id) const { return _paths[id]; }
    [[nodiscard]] std::size_t size() const { return _nodes.size(); }

private:
    AtomResolver _resolve;
    std::vector<StateNode> _nodes;
    std::vector<PathNode> _paths;
    std::unordered_map<std::string, NodeId> _node_index;
    std::unordered_map<std::string, NodeId> _path_index;

    NodeId intern(std::string signature, StateNode node);
};

// Compensated (Neumaier) summation.
class AccurateSum
{
public:
    void add(double x);
    [[nodiscard]] double value() const { return _sum + _compensation; }

private:
    double _sum = 0.0;
    double _compensation = 0.0;
};

} // namespace flyfast::checker
