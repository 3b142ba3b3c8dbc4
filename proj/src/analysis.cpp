#include "dagsched/analysis.hpp"

#include <algorithm>

namespace dagsched {

namespace {

// Longest weighted path over all source-to-sink paths, by one pass in
// topological order.
Rational critical_path(const DagTask& task,
                       const std::map<NodeId, Rational>& weight) {
    std::map<NodeId, Rational> best;
    Rational result = 0;
    for (NodeId v : task.topological_order()) {
        Rational incoming = 0;
        for (NodeId p : task.predecessors(v)) {
            incoming = std::max(incoming, best.at(p));
        }
        best[v] = incoming + weight.at(v);
        result = std::max(result, best[v]);
    }
    return result;
}

}  // namespace

Rational group_response_time(const GroupPlan& plan) {
    Rational r = 0;
    for (const MemberPlan& m : plan.members) r = std::max(r, m.exec);
    return r;
}

Rational dag_makespan_bound(const ScheduleScheme& scheme) {
    Rational total = 0;
    for (const GroupPlan& g : scheme.groups) total += g.response;
    return total;
}

Rational greedy_bound(const DagTask& task, const Platform& platform) {
    platform.check();
    Rational total = 0;
    for (const DagNode& n : task.nodes()) {
        int m = std::min(max_parallelism(n.load, platform), platform.sm_count);
        total += exec_time(n.load, m, platform);
    }
    return total;
}

Rational greedy_unaware_bound(const DagTask& task, const Platform& platform) {
    platform.check();
    Rational total = 0;
    for (const DagNode& n : task.nodes()) {
        total += exec_time(n.load, max_parallelism(n.load, platform), platform);
    }
    return total;
}

Rational graham_para_bound(const DagTask& task, const Platform& platform) {
    platform.check();
    Rational work = 0;
    for (const DagNode& n : task.nodes()) {
        // unit count rounds up: pessimistic, bound-safe
        work += Rational(ceil_to_int(n.load / platform.t_min), 1) * platform.t_min;
    }
    std::map<NodeId, Rational> unit_weight;
    for (const DagNode& n : task.nodes()) unit_weight[n.id] = platform.t_min;
    Rational chain = critical_path(task, unit_weight);
    return chain + (work - chain) / Rational(platform.sm_count, 1);
}

Rational lower_bound(const DagTask& task, const Platform& platform) {
    platform.check();
    Rational work_floor = task.total_load() / Rational(platform.sm_count, 1);
    std::map<NodeId, Rational> weight;
    for (const DagNode& n : task.nodes()) {
        int m = std::min(max_parallelism(n.load, platform), platform.sm_count);
        weight[n.id] = exec_time(n.load, m, platform);
    }
    return std::max(work_floor, critical_path(task, weight));
}

MakespanReport analyze(const DagTask& task, const Platform& platform) {
    MakespanReport report;
    ScheduleScheme scheme = schedule(task, platform);
    for (const GroupPlan& g : scheme.groups) {
        report.per_group_response.push_back(g.response);
    }
    report.proposed = dag_makespan_bound(scheme);
    report.greedy = greedy_bound(task, platform);
    report.greedy_unaware = greedy_unaware_bound(task, platform);
    report.graham_para = graham_para_bound(task, platform);
    report.lower = lower_bound(task, platform);
    report.normalized["proposed"] = report.proposed / report.greedy_unaware;
    report.normalized["greedy"] = report.greedy / report.greedy_unaware;
    report.normalized["greedy_unaware"] = Rational(1);
    report.normalized["graham_para"] = report.graham_para / report.greedy_unaware;
    return report;
}

}  // namespace dagsched
