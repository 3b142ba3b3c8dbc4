#pragma once

#include "dagsched/dag.hpp"
#include "dagsched/exec_model.hpp"
#include "dagsched/scheduler.hpp"

#include <map>
#include <string>
#include <vector>

namespace dagsched {

// Worst-case makespan bounds for one task on one platform, plus
// per-method ratios against the reference (greedy_unaware).
struct MakespanReport {
    std::vector<Rational> per_group_response;
    Rational proposed;
    Rational greedy;
    Rational greedy_unaware;
    Rational graham_para;
    Rational lower;
    std::map<std::string, Rational> normalized;
};

// Response time of one planned group: the largest member execution time.
Rational group_response_time(const GroupPlan& plan);

// Sum of group response times over the executed schedule.
Rational dag_makespan_bound(const ScheduleScheme& scheme);

// Every kernel at min(m_max, M), executed sequentially.
Rational greedy_bound(const DagTask& task, const Platform& platform);

// Every kernel at m_max regardless of the platform, executed
// sequentially; oversubscription beyond M stretches the kernel.
Rational greedy_unaware_bound(const DagTask& task, const Platform& platform);

// Priority-free list-scheduling bound on the unit-node transformation of
// the DAG: each kernel becomes ceil(load / t_min) parallel unit kernels,
// then L + (W - L) / M with W the transformed work and L the longest
// chain (one unit per kernel on the longest hop path).
Rational graham_para_bound(const DagTask& task, const Platform& platform);

// Sanity floor for all bounds: max of the work bound (total load / M)
// and the best achievable critical path (each kernel at min(m_max, M)).
Rational lower_bound(const DagTask& task, const Platform& platform);

// Runs the scheduler and computes all bounds and normalizations.
MakespanReport analyze(const DagTask& task, const Platform& platform);

}  // namespace dagsched
