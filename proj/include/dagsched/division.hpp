#pragma once

#include "dagsched/dag.hpp"
#include "dagsched/exec_model.hpp"

#include <optional>
#include <vector>

namespace dagsched {

// One block of the division: the not-yet-assigned ancestors of a join
// node, or the residual block (join == nullopt) of leftover nodes.
// Every member has at most one predecessor inside the same block, so the
// block's induced subgraph is a forest of out-trees.
struct Block {
    std::optional<NodeId> join;
    std::vector<NodeId> members;  // sorted by id
};

// Maximal source-to-sink paths within one block's induced subgraph.
struct LocalPathSet {
    std::vector<std::vector<NodeId>> paths;
};

// Ordered list of disjoint node groups; the unit of scheduling and
// analysis. Groups partition the node set and respect the DAG topology.
struct BalancedGroupList {
    std::vector<std::vector<NodeId>> groups;  // each sorted by id
};

// Partition the DAG into blocks: one per join node (in ascending
// cumulative-ancestor-workload order) plus a residual block.
std::vector<Block> build_blocks(const DagTask& task);

// All local complete paths of a block, ordered by local-sink id. Within a
// block each node has a unique in-block predecessor chain, so there is
// exactly one path per local sink and every member lies on at least one.
LocalPathSet local_paths(const DagTask& task, const Block& block);

// Decompose each block into balanced groups by repeatedly extracting up
// to M distinct path heads ranked by descending cumulative ancestor
// workload. A head big enough to saturate the device runs alone.
BalancedGroupList build_groups(const DagTask& task, const Platform& platform);

}  // namespace dagsched
