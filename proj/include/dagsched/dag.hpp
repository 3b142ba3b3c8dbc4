#pragma once

#include "dagsched/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dagsched {

using NodeId = std::uint32_t;

struct DagNode {
    NodeId id;
    Rational load;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable DAG of kernels with per-node computation loads. Construction
// validates the full invariant set (acyclic, single source, single sink,
// loads at or above the minimum); every query afterwards is pure, so a
// task can be shared freely across threads.
//
// Ancestor sets are precomputed as bitsets at construction: the division
// and scheduling passes query them heavily.
class DagTask {
  public:
    // min_load is the platform time floor the loads are validated against
    // (one basic time unit by default).
    static DagTask make(std::vector<DagNode> nodes,
                        std::vector<std::pair<NodeId, NodeId>> edges,
                        std::optional<Rational> period = std::nullopt,
                        const Rational& min_load = Rational(1));

    std::size_t size() const { return nodes_.size(); }
    // Nodes sorted by id.
    const std::vector<DagNode>& nodes() const { return nodes_; }
    // Edges sorted lexicographically, deduplicated.
    const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
    const std::optional<Rational>& period() const { return period_; }
    // Implicit deadline: equal to the period when one is given.
    const std::optional<Rational>& deadline() const { return period_; }

    bool contains(NodeId id) const;
    const Rational& load(NodeId id) const;
    Rational total_load() const;

    NodeId source() const { return nodes_[source_].id; }
    NodeId sink() const { return nodes_[sink_].id; }

    std::vector<NodeId> predecessors(NodeId id) const;
    std::vector<NodeId> successors(NodeId id) const;

    // Transitive predecessors of id, excluding id itself. Sorted by id.
    std::vector<NodeId> ancestors(NodeId id) const;
    std::vector<NodeId> descendants(NodeId id) const;
    // Nodes with no transitive dependency on id in either direction.
    std::vector<NodeId> concurrent_set(NodeId id) const;
    bool is_ancestor(NodeId a, NodeId b) const;

    // Total load of id plus all of its ancestors.
    Rational cumulative_ancestor_workload(NodeId id) const;

    // Nodes with two or more predecessors, ordered by ascending cumulative
    // ancestor workload (ties by id). With positive loads this order is
    // consistent with the DAG's topological order.
    std::vector<NodeId> join_nodes() const;

    std::vector<NodeId> topological_order() const;

  private:
    DagTask() = default;

    std::size_t index_of(NodeId id) const;  // throws on unknown id

    std::vector<DagNode> nodes_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::optional<Rational> period_;
    std::vector<std::vector<std::uint32_t>> preds_;
    std::vector<std::vector<std::uint32_t>> succs_;
    std::vector<boost::dynamic_bitset<>> anc_;
    std::vector<boost::dynamic_bitset<>> desc_;
    std::vector<Rational> wanc_;
    std::vector<std::uint32_t> topo_;
    std::size_t source_ = 0;
    std::size_t sink_ = 0;
};

}  // namespace dagsched
