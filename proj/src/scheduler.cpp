#include "dagsched/scheduler.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dagsched {

std::string to_string(const EntityId& id) {
    std::string s = std::to_string(id.origin);
    if (id.part == EntityId::Part::parallel) {
        s += ":p" + std::to_string(id.generation);
    } else if (id.part == EntityId::Part::residual) {
        s += ":r" + std::to_string(id.generation);
    }
    return s;
}

const EntityRecord& ScheduleScheme::entity(const EntityId& id) const {
    auto it = std::lower_bound(
        entities.begin(), entities.end(), id,
        [](const EntityRecord& r, const EntityId& v) { return r.id < v; });
    if (it == entities.end() || it->id != id) {
        throw std::out_of_range("unknown entity " + to_string(id));
    }
    return *it;
}

namespace {

// Largest-remainder apportionment of M SM units over the group, capped
// per node. Leftover units go to the member with the largest current
// execution time; ties broken by larger fractional remainder, then by
// position (callers pass id-sorted groups).
std::vector<int> apportion(const std::vector<Rational>& loads,
                           const std::vector<int>& caps,
                           const Platform& platform) {
    const int M = platform.sm_count;
    const std::size_t n = loads.size();
    Rational total_load = 0;
    for (const Rational& l : loads) total_load += l;

    std::vector<Rational> quota(n);
    std::vector<int> m(n);
    long long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        quota[i] = loads[i] * Rational(M, 1) / total_load;
        long long base = to_int64(floor_to_int(quota[i]));
        base = std::max(1LL, std::min<long long>(base, caps[i]));
        m[i] = static_cast<int>(base);
        total += base;
    }

    // Sub-unit quotas clamped up to 1 can overshoot the device; shed units
    // from wherever the resulting slowdown is smallest.
    while (total > M) {
        std::size_t pick = n;
        Rational best;
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i] <= 1) continue;
            Rational slowed = exec_time(loads[i], m[i] - 1, platform);
            if (pick == n || slowed < best) {
                pick = i;
                best = slowed;
            }
        }
        assert(pick < n);
        --m[pick];
        --total;
    }

    long long cap_sum = 0;
    for (int c : caps) cap_sum += c;
    const long long target = std::min<long long>(M, cap_sum);
    while (total < target) {
        std::size_t pick = n;
        Rational best_exec;
        Rational best_rem;
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i] >= caps[i]) continue;
            Rational cur = exec_time(loads[i], m[i], platform);
            Rational rem = quota[i] - Rational(floor_to_int(quota[i]), 1);
            if (pick == n || cur > best_exec ||
                (cur == best_exec && rem > best_rem)) {
                pick = i;
                best_exec = cur;
                best_rem = rem;
            }
        }
        assert(pick < n);
        ++m[pick];
        ++total;
    }
    return m;
}

}  // namespace

std::map<NodeId, int> scale_parallelism(const std::vector<NodeId>& group,
                                        const DagTask& task,
                                        const Platform& platform) {
    platform.check();
    std::vector<NodeId> sorted = group;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Rational> loads;
    std::vector<int> caps;
    for (NodeId v : sorted) {
        loads.push_back(task.load(v));
        caps.push_back(std::min(max_parallelism(task.load(v), platform),
                                platform.sm_count));
    }
    std::vector<int> m = apportion(loads, caps, platform);
    std::map<NodeId, int> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) out[sorted[i]] = m[i];
    return out;
}

std::vector<NodeId> parallel_candidates(const std::vector<NodeId>& group,
                                        const DagTask& task,
                                        const std::set<NodeId>& released) {
    std::set<NodeId> members(group.begin(), group.end());
    std::set<NodeId> pool;
    for (NodeId v : group) {
        for (NodeId c : task.concurrent_set(v)) {
            if (!members.count(c)) pool.insert(c);
        }
    }
    std::vector<NodeId> out;
    for (NodeId c : pool) {
        bool is_source = true;
        for (NodeId p : task.predecessors(c)) {
            if (pool.count(p)) {
                is_source = false;
                break;
            }
        }
        if (is_source && released.count(c)) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
        Rational wa = task.cumulative_ancestor_workload(a);
        Rational wb = task.cumulative_ancestor_workload(b);
        if (wa != wb) return wa > wb;
        return a < b;
    });
    return out;
}

namespace {

struct PendingDep {
    EntityId entity;
    bool extra = false;  // extra dependency, as opposed to segment rewiring
};

// A kernel (or residual segment) that has not run yet.
struct Pending {
    EntityId id;
    Rational load;
    std::vector<NodeId> origin_preds;   // completion-of-origin dependencies
    std::vector<PendingDep> entity_preds;
};

struct RecordDraft {
    Rational load;
    int parallelism = 0;
    Rational exec;
    std::size_t group = 0;
    bool launched = false;
    std::vector<NodeId> origin_preds;
    std::vector<PendingDep> entity_preds;
};

}  // namespace

ScheduleScheme schedule(const DagTask& task, const Platform& platform) {
    platform.check();
    for (const DagNode& n : task.nodes()) {
        if (n.load < platform.t_min) {
            throw ValidationError("node " + std::to_string(n.id) +
                                  ": load below the platform time unit");
        }
    }
    const int M = platform.sm_count;
    const BalancedGroupList division = build_groups(task, platform);

    std::map<NodeId, Pending> pending;
    for (const DagNode& n : task.nodes()) {
        pending[n.id] = Pending{EntityId{n.id, 0, EntityId::Part::whole},
                                n.load,
                                task.predecessors(n.id),
                                {}};
    }

    std::map<EntityId, RecordDraft> records;
    std::map<NodeId, std::size_t> origin_done;      // executed-group index
    std::map<NodeId, std::vector<EntityId>> chain;  // entities per origin, in order
    std::map<NodeId, std::uint16_t> generation;

    ScheduleScheme scheme;
    scheme.platform = platform;

    auto released = [&](const Pending& p, std::size_t gidx) {
        for (NodeId o : p.origin_preds) {
            auto it = origin_done.find(o);
            if (it == origin_done.end() || it->second >= gidx) return false;
        }
        for (const PendingDep& d : p.entity_preds) {
            auto it = records.find(d.entity);
            if (it == records.end() || it->second.group >= gidx) return false;
        }
        return true;
    };

    for (const std::vector<NodeId>& group : division.groups) {
        std::vector<NodeId> member_origins;
        for (NodeId v : group) {
            if (pending.count(v)) member_origins.push_back(v);
        }
        if (member_origins.empty()) continue;  // fully absorbed by earlier launches
        const std::size_t gidx = scheme.groups.size();

        std::vector<Rational> loads;
        std::vector<int> caps;
        for (NodeId v : member_origins) {
            const Rational& load = pending.at(v).load;
            loads.push_back(load);
            caps.push_back(std::min(max_parallelism(load, platform), M));
        }
        std::vector<int> m = apportion(loads, caps, platform);

        GroupPlan plan;
        plan.index = gidx;
        int used = 0;
        for (std::size_t i = 0; i < member_origins.size(); ++i) {
            const Pending& p = pending.at(member_origins[i]);
            Rational exec = exec_time(p.load, m[i], platform);
            plan.members.push_back(MemberPlan{p.id, p.load, m[i], exec});
            used += m[i];
        }
        plan.response = plan.members.front().exec;
        plan.bottleneck = plan.members.front().entity;
        for (const MemberPlan& mp : plan.members) {
            if (mp.exec > plan.response) {
                plan.response = mp.exec;
                plan.bottleneck = mp.entity;
            }
        }
        plan.spare_sms = M - used;
        plan.spare_capacity = plan.response * Rational(plan.spare_sms, 1);

        // Launch candidates: sources of the members' concurrent sets that
        // are released and still pending, deepest accumulated work first.
        std::set<NodeId> member_set(group.begin(), group.end());
        std::set<NodeId> pool;
        for (NodeId v : member_origins) {
            for (NodeId c : task.concurrent_set(v)) {
                if (!member_set.count(c)) pool.insert(c);
            }
        }
        std::vector<NodeId> cands;
        for (NodeId c : pool) {
            bool is_source = true;
            for (NodeId p : task.predecessors(c)) {
                if (pool.count(p)) {
                    is_source = false;
                    break;
                }
            }
            if (!is_source) continue;
            auto it = pending.find(c);
            if (it != pending.end() && released(it->second, gidx)) {
                cands.push_back(c);
            }
        }
        std::sort(cands.begin(), cands.end(), [&](NodeId a, NodeId b) {
            Rational wa = task.cumulative_ancestor_workload(a);
            Rational wb = task.cumulative_ancestor_workload(b);
            if (wa != wb) return wa > wb;
            return a < b;
        });

        // Launches run concurrently with the group, each on its own share
        // of the spare SMs. A candidate that cannot finish within the
        // group is split so its parallel segment ends exactly with it;
        // the split exhausts the spare window, so at most one per group.
        int spare_left = plan.spare_sms;
        std::set<NodeId> launched_whole;
        std::vector<EntityId> launched_entities;
        for (NodeId c : cands) {
            if (spare_left < 1) break;
            Pending& cand = pending.at(c);
            int mc = std::min(max_parallelism(cand.load, platform), spare_left);
            Rational dur = exec_time(cand.load, mc, platform);
            if (dur <= plan.response) {
                records[cand.id] = RecordDraft{cand.load, mc, dur, gidx, true,
                                               cand.origin_preds, cand.entity_preds};
                chain[c].push_back(cand.id);
                plan.launches.push_back(LaunchRecord{cand.id, mc, dur});
                launched_entities.push_back(cand.id);
                launched_whole.insert(c);
                origin_done[c] = gidx;
                pending.erase(c);
                spare_left -= mc;
            } else {
                std::uint16_t gen = ++generation[c];
                EntityId par{c, gen, EntityId::Part::parallel};
                EntityId res{c, gen, EntityId::Part::residual};
                Rational par_load = Rational(mc, 1) * plan.response;
                Rational res_load = cand.load - par_load;

                records[par] = RecordDraft{par_load, mc, plan.response, gidx, true,
                                           cand.origin_preds, cand.entity_preds};
                chain[c].push_back(par);
                plan.launches.push_back(LaunchRecord{par, mc, plan.response});
                launched_entities.push_back(par);

                Pending residual;
                residual.id = res;
                residual.load = res_load;
                residual.origin_preds = cand.origin_preds;
                residual.entity_preds = cand.entity_preds;
                residual.entity_preds.push_back(PendingDep{par, false});
                pending[c] = std::move(residual);

                scheme.segmentations.push_back(SegmentationRecord{
                    cand.id, par, res, par_load, res_load, gidx});
                spare_left -= mc;
                break;
            }
        }

        // Extra dependencies. Launched work must finish no later than the
        // group: edges to the bottleneck's successors. Unlaunched
        // candidates (including the residual segment) wait for the group:
        // edges from the bottleneck.
        for (const EntityId& e : launched_entities) {
            for (NodeId s : task.successors(plan.bottleneck.origin)) {
                auto it = pending.find(s);
                assert(it != pending.end());
                it->second.entity_preds.push_back(PendingDep{e, true});
            }
        }
        for (NodeId c : cands) {
            if (launched_whole.count(c)) continue;
            pending.at(c).entity_preds.push_back(PendingDep{plan.bottleneck, true});
        }

        for (std::size_t i = 0; i < member_origins.size(); ++i) {
            NodeId v = member_origins[i];
            Pending& p = pending.at(v);
            records[p.id] = RecordDraft{p.load, m[i], plan.members[i].exec, gidx,
                                        false, p.origin_preds, p.entity_preds};
            chain[v].push_back(p.id);
            origin_done[v] = gidx;
            pending.erase(v);
        }

        scheme.groups.push_back(std::move(plan));
    }

    if (!pending.empty()) {
        throw std::logic_error("scheduling finished with unplaced kernels");
    }

    // Materialize: completion-of-origin dependencies resolve to the last
    // entity of the predecessor's segment chain.
    std::set<std::pair<EntityId, EntityId>> extra;
    for (const auto& [id, draft] : records) {
        EntityRecord rec;
        rec.id = id;
        rec.load = draft.load;
        rec.parallelism = draft.parallelism;
        rec.exec = draft.exec;
        rec.group = draft.group;
        rec.launched = draft.launched;
        std::set<EntityId> preds;
        for (NodeId o : draft.origin_preds) preds.insert(chain.at(o).back());
        for (const PendingDep& d : draft.entity_preds) {
            preds.insert(d.entity);
            if (d.extra) extra.insert({d.entity, id});
        }
        rec.preds.assign(preds.begin(), preds.end());
        scheme.entities.push_back(std::move(rec));
    }
    scheme.extra_deps.assign(extra.begin(), extra.end());

    // The augmented graph must stay acyclic and the device must never be
    // oversubscribed; both would be scheduler bugs.
    {
        std::map<EntityId, std::size_t> idx;
        for (std::size_t i = 0; i < scheme.entities.size(); ++i) {
            idx[scheme.entities[i].id] = i;
        }
        std::vector<std::size_t> indeg(scheme.entities.size(), 0);
        std::vector<std::vector<std::size_t>> succ(scheme.entities.size());
        for (std::size_t i = 0; i < scheme.entities.size(); ++i) {
            for (const EntityId& p : scheme.entities[i].preds) {
                succ[idx.at(p)].push_back(i);
                ++indeg[i];
            }
        }
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < indeg.size(); ++i) {
            if (indeg[i] == 0) queue.push_back(i);
        }
        std::size_t head = 0;
        while (head < queue.size()) {
            std::size_t u = queue[head++];
            for (std::size_t v : succ[u]) {
                if (--indeg[v] == 0) queue.push_back(v);
            }
        }
        if (queue.size() != scheme.entities.size()) {
            throw std::logic_error("augmented dependency graph has a cycle");
        }
    }
    for (const GroupPlan& g : scheme.groups) {
        int total = 0;
        for (const MemberPlan& mp : g.members) total += mp.parallelism;
        for (const LaunchRecord& l : g.launches) total += l.parallelism;
        if (total > M) {
            throw std::logic_error("group allocation exceeds the device");
        }
    }

    return scheme;
}

}  // namespace dagsched
