#include "dagsched/simulator.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace dagsched {

namespace {

constexpr long long kScaleGrid = 1024;  // scale factors drawn on a 1/1024 grid

class FactorSource {
  public:
    explicit FactorSource(const TimeModel& model) : model_(model), rng_(model.seed) {
        if (model.kind == TimeModel::Kind::scaled) {
            if (model.scale_min <= 0 || model.scale_max > 1 ||
                model.scale_min > model.scale_max) {
                throw std::invalid_argument(
                    "scale factors must satisfy 0 < min <= max <= 1");
            }
            long long lo = to_int64(ceil_to_int(model.scale_min * kScaleGrid));
            long long hi = to_int64(floor_to_int(model.scale_max * kScaleGrid));
            lo = std::max(1LL, lo);
            hi = std::max(lo, hi);
            dist_ = std::uniform_int_distribution<long long>(lo, hi);
        }
    }

    Rational next() {
        if (model_.kind == TimeModel::Kind::worst_case) return Rational(1);
        return Rational(dist_(rng_), kScaleGrid);
    }

  private:
    TimeModel model_;
    std::mt19937_64 rng_;
    std::uniform_int_distribution<long long> dist_;
};

}  // namespace

SimTrace simulate_scheme(const DagTask& task, const ScheduleScheme& scheme,
                         const SimConfig& config) {
    (void)task;
    if (config.mode != SimMode::scheme) {
        throw std::invalid_argument("simulate_scheme requires scheme mode");
    }
    FactorSource factors(config.time_model);

    SimTrace trace;
    std::map<EntityId, Rational> finish_at;
    Rational clock = 0;
    for (const GroupPlan& g : scheme.groups) {
        Rational window_end = clock;
        for (const MemberPlan& m : g.members) {
            Rational dur = m.exec * factors.next();
            trace.events.push_back(
                SimEvent{to_string(m.entity), clock, clock + dur, m.parallelism});
            finish_at[m.entity] = clock + dur;
            window_end = std::max(window_end, clock + dur);
        }
        for (const LaunchRecord& l : g.launches) {
            Rational dur = l.duration * factors.next();
            trace.events.push_back(
                SimEvent{to_string(l.entity), clock, clock + dur, l.parallelism});
            finish_at[l.entity] = clock + dur;
            window_end = std::max(window_end, clock + dur);
        }
        clock = window_end;
    }
    trace.makespan = clock;

    // Dependency audit: an entity must not start before its augmented
    // predecessors finish. A failure here is a scheduler bug.
    std::map<EntityId, Rational> start_at;
    {
        std::map<std::string, const SimEvent*> by_name;
        for (const SimEvent& e : trace.events) by_name[e.entity] = &e;
        for (const EntityRecord& rec : scheme.entities) {
            const SimEvent* ev = by_name.at(to_string(rec.id));
            for (const EntityId& p : rec.preds) {
                if (finish_at.at(p) > ev->start) {
                    throw std::logic_error("entity " + to_string(rec.id) +
                                           " started before predecessor " +
                                           to_string(p) + " finished");
                }
            }
        }
    }
    check_capacity(trace, config.platform.sm_count);
    return trace;
}

SimTrace simulate_greedy(const DagTask& task, const SimConfig& config) {
    if (config.mode != SimMode::greedy) {
        throw std::invalid_argument("simulate_greedy requires greedy mode");
    }
    config.platform.check();
    const int M = config.platform.sm_count;
    FactorSource factors(config.time_model);
    std::mt19937_64 policy_rng(config.policy_seed);

    struct NodeState {
        int m = 0;
        Rational duration;
        std::size_t preds_left = 0;
        Rational release;
        std::uint64_t tie_rank = 0;
    };
    std::map<NodeId, NodeState> state;
    for (const DagNode& n : task.nodes()) {
        NodeState s;
        s.m = std::min(max_parallelism(n.load, config.platform), M);
        s.duration = exec_time(n.load, s.m, config.platform) * factors.next();
        s.preds_left = task.predecessors(n.id).size();
        state[n.id] = s;
    }

    std::vector<NodeId> ready;
    auto release = [&](NodeId v, const Rational& t) {
        state[v].release = t;
        state[v].tie_rank =
            config.policy == DispatchPolicy::random ? policy_rng() : 0;
        ready.push_back(v);
    };
    release(task.source(), Rational(0));

    auto ready_order = [&](NodeId a, NodeId b) {
        const NodeState& sa = state[a];
        const NodeState& sb = state[b];
        if (sa.release != sb.release) return sa.release < sb.release;
        if (sa.tie_rank != sb.tie_rank) return sa.tie_rank < sb.tie_rank;
        return a < b;
    };

    SimTrace trace;
    // running set ordered by (finish, id) so completions pop deterministically
    std::map<std::pair<Rational, NodeId>, int> running;
    int free_sms = M;
    Rational now = 0;

    auto dispatch = [&]() {
        std::sort(ready.begin(), ready.end(), ready_order);
        std::vector<NodeId> still_waiting;
        for (NodeId v : ready) {
            NodeState& s = state[v];
            if (s.m <= free_sms) {
                free_sms -= s.m;
                Rational finish = now + s.duration;
                running[{finish, v}] = s.m;
                trace.events.push_back(
                    SimEvent{std::to_string(v), now, finish, s.m});
            } else {
                still_waiting.push_back(v);
            }
        }
        ready = std::move(still_waiting);
    };

    dispatch();
    while (!running.empty()) {
        Rational t = running.begin()->first.first;
        now = t;
        std::vector<NodeId> done;
        while (!running.empty() && running.begin()->first.first == t) {
            done.push_back(running.begin()->first.second);
            free_sms += running.begin()->second;
            running.erase(running.begin());
        }
        for (NodeId v : done) {
            for (NodeId s : task.successors(v)) {
                if (--state[s].preds_left == 0) release(s, t);
            }
        }
        dispatch();
    }
    if (!ready.empty()) {
        throw std::logic_error("greedy simulation stalled with ready kernels");
    }
    trace.makespan = now;
    std::sort(trace.events.begin(), trace.events.end(),
              [](const SimEvent& a, const SimEvent& b) {
                  if (a.start != b.start) return a.start < b.start;
                  return a.entity < b.entity;
              });
    check_capacity(trace, M);
    return trace;
}

void check_capacity(const SimTrace& trace, int sm_count) {
    // Usage only changes at event starts; checking each start instant
    // against all overlapping events covers every point in time.
    for (const SimEvent& e : trace.events) {
        int used = 0;
        for (const SimEvent& other : trace.events) {
            if (other.start <= e.start && e.start < other.finish) {
                used += other.sms_held;
            }
        }
        if (used > sm_count) {
            throw std::logic_error("SM capacity exceeded at t=" +
                                   format_exact(e.start));
        }
    }
}

void check_precedence(const SimTrace& trace, const ScheduleScheme& scheme) {
    std::map<std::string, const SimEvent*> by_name;
    for (const SimEvent& e : trace.events) by_name[e.entity] = &e;
    for (const EntityRecord& rec : scheme.entities) {
        auto it = by_name.find(to_string(rec.id));
        if (it == by_name.end()) {
            throw std::logic_error("entity missing from trace: " + to_string(rec.id));
        }
        for (const EntityId& p : rec.preds) {
            if (by_name.at(to_string(p))->finish > it->second->start) {
                throw std::logic_error("precedence violated: " + to_string(p) +
                                       " -> " + to_string(rec.id));
            }
        }
    }
}

}  // namespace dagsched
