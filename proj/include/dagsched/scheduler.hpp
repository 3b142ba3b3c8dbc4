#pragma once

#include "dagsched/dag.hpp"
#include "dagsched/division.hpp"
#include "dagsched/exec_model.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace dagsched {

// A schedulable unit: either a whole kernel or one segment of a split
// kernel. A kernel can be split more than once (each residual may be
// split again later), so segments carry a generation counter.
struct EntityId {
    enum class Part : std::uint8_t { whole = 0, parallel = 1, residual = 2 };

    NodeId origin = 0;
    std::uint16_t generation = 0;  // 0 for whole kernels, k >= 1 for segments
    Part part = Part::whole;

    auto operator<=>(const EntityId&) const = default;
};

std::string to_string(const EntityId& id);  // "7", "7:p1", "7:r1"

struct EntityRecord {
    EntityId id;
    Rational load;
    int parallelism = 0;     // SMs held while running
    Rational exec;           // worst-case duration at that parallelism
    std::size_t group = 0;   // executed-group index it runs with
    bool launched = false;   // true: opportunistic launch into spare SMs
    std::vector<EntityId> preds;  // augmented-graph predecessors, sorted
};

struct LaunchRecord {
    EntityId entity;
    int parallelism = 0;
    Rational duration;  // runs [0, duration) relative to the group start
};

struct MemberPlan {
    EntityId entity;
    Rational load;
    int parallelism = 0;
    Rational exec;
};

// One executed balanced group: members run concurrently on disjoint SM
// shares; launches fill the leftover SMs and finish within the group.
struct GroupPlan {
    std::size_t index = 0;
    std::vector<MemberPlan> members;
    int spare_sms = 0;        // S_j = M - sum of member parallelism
    Rational spare_capacity;  // WS_j = response * S_j
    Rational response;        // max member execution time
    EntityId bottleneck;      // member attaining the response time
    std::vector<LaunchRecord> launches;
};

struct SegmentationRecord {
    EntityId source;    // entity that was split
    EntityId parallel;  // segment launched with the group
    EntityId residual;  // segment returned to the pending pool
    Rational parallel_load;
    Rational residual_load;
    std::size_t group = 0;  // executed-group index the split happened in
};

// Complete schedule: per-entity parallelism, segmentations, the extra
// dependency edges that pin the group execution order, and the executed
// group plans in order. `entities` holds the full augmented dependency
// graph; it is acyclic by construction.
struct ScheduleScheme {
    Platform platform;
    std::vector<GroupPlan> groups;
    std::vector<SegmentationRecord> segmentations;
    std::vector<std::pair<EntityId, EntityId>> extra_deps;  // sorted, deduped
    std::vector<EntityRecord> entities;                     // sorted by id

    const EntityRecord& entity(const EntityId& id) const;
};

// Proportional SM assignment within one balanced group: quotas
// load_i / W(group) * M, rounded to integers by largest-remainder
// apportionment with per-node caps at the maximum useful parallelism.
// Leftover units go to the member with the largest current execution
// time. The result satisfies 1 <= m_i <= min(m_i^max, M) and
// sum m_i <= M.
std::map<NodeId, int> scale_parallelism(const std::vector<NodeId>& group,
                                        const DagTask& task,
                                        const Platform& platform);

// Nodes eligible to launch into a group's spare SMs: sources of the union
// of the members' concurrent sets (minus the group), restricted to
// released nodes, ordered by descending cumulative ancestor workload.
std::vector<NodeId> parallel_candidates(const std::vector<NodeId>& group,
                                        const DagTask& task,
                                        const std::set<NodeId>& released);

// Run the full pipeline: division, then per-group parallelism scaling,
// opportunistic launches with at most one segmentation per group, and
// extra dependency insertion.
ScheduleScheme schedule(const DagTask& task, const Platform& platform);

}  // namespace dagsched
