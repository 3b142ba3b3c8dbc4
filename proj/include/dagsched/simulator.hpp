#pragma once

#include "dagsched/dag.hpp"
#include "dagsched/exec_model.hpp"
#include "dagsched/scheduler.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dagsched {

enum class SimMode { scheme, greedy };
enum class DispatchPolicy { fifo, random };

// Actual kernel durations: either the analytic worst case, or the worst
// case scaled by a per-kernel factor drawn uniformly from
// [scale_min, scale_max] within (0, 1], modeling early completion.
struct TimeModel {
    enum class Kind { worst_case, scaled } kind = Kind::worst_case;
    std::uint64_t seed = 0;
    Rational scale_min = Rational(1);
    Rational scale_max = Rational(1);
};

struct SimConfig {
    Platform platform;
    SimMode mode = SimMode::scheme;
    DispatchPolicy policy = DispatchPolicy::fifo;
    std::uint64_t policy_seed = 0;
    TimeModel time_model;
};

struct SimEvent {
    std::string entity;
    Rational start;
    Rational finish;
    int sms_held = 0;
};

struct SimTrace {
    std::vector<SimEvent> events;  // ordered by start time, then entity
    Rational makespan;
};

// Executes a schedule: groups run in their planned order, members on
// their assigned SM shares, launches concurrently on the spare SMs; the
// next group starts when everything belonging to the previous one has
// finished, which is exactly the order the extra dependencies pin down.
SimTrace simulate_scheme(const DagTask& task, const ScheduleScheme& scheme,
                         const SimConfig& config);

// Unconstrained hardware-style dispatch: every kernel requests
// min(m_max, M) SMs and starts as soon as its predecessors are done and
// enough SMs are free (non-preemptive, work-conserving). Simultaneously
// ready kernels start in release order with ties broken by id (fifo) or
// by a seeded shuffle (random).
SimTrace simulate_greedy(const DagTask& task, const SimConfig& config);

// Trace sanity checks; throw std::logic_error on violation.
void check_capacity(const SimTrace& trace, int sm_count);
void check_precedence(const SimTrace& trace, const ScheduleScheme& scheme);

}  // namespace dagsched
