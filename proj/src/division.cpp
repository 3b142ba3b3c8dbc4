#include "dagsched/division.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

namespace dagsched {

std::vector<Block> build_blocks(const DagTask& task) {
    std::vector<Block> blocks;
    std::set<NodeId> assigned;
    for (NodeId join : task.join_nodes()) {
        Block block;
        block.join = join;
        for (NodeId a : task.ancestors(join)) {
            if (!assigned.count(a)) {
                block.members.push_back(a);
                assigned.insert(a);
            }
        }
        blocks.push_back(std::move(block));
    }
    Block residual;
    for (const DagNode& n : task.nodes()) {
        if (!assigned.count(n.id)) residual.members.push_back(n.id);
    }
    blocks.push_back(std::move(residual));
    return blocks;
}

LocalPathSet local_paths(const DagTask& task, const Block& block) {
    std::set<NodeId> members(block.members.begin(), block.members.end());

    // In-block predecessor is unique (or absent); walking back from each
    // local sink yields the one path through it.
    LocalPathSet out;
    for (NodeId v : block.members) {
        bool local_sink = true;
        for (NodeId s : task.successors(v)) {
            if (members.count(s)) {
                local_sink = false;
                break;
            }
        }
        if (!local_sink) continue;

        std::deque<NodeId> path{v};
        NodeId cur = v;
        for (;;) {
            std::optional<NodeId> local_pred;
            for (NodeId p : task.predecessors(cur)) {
                if (members.count(p)) {
                    assert(!local_pred && "block member with two in-block predecessors");
                    local_pred = p;
                }
            }
            if (!local_pred) break;
            path.push_front(*local_pred);
            cur = *local_pred;
        }
        out.paths.emplace_back(path.begin(), path.end());
    }
    return out;
}

BalancedGroupList build_groups(const DagTask& task, const Platform& platform) {
    platform.check();
    const int m_cap = platform.sm_count;

    BalancedGroupList out;
    for (const Block& block : build_blocks(task)) {
        if (block.members.empty()) continue;
        std::vector<std::deque<NodeId>> paths;
        for (auto& p : local_paths(task, block).paths) {
            paths.emplace_back(p.begin(), p.end());
        }

        while (!paths.empty()) {
            // Distinct heads, ranked by descending cumulative ancestor
            // workload (deepest accumulated work first), ties by id.
            std::vector<NodeId> heads;
            for (const auto& p : paths) {
                if (std::find(heads.begin(), heads.end(), p.front()) == heads.end()) {
                    heads.push_back(p.front());
                }
            }
            std::sort(heads.begin(), heads.end(), [&](NodeId a, NodeId b) {
                Rational wa = task.cumulative_ancestor_workload(a);
                Rational wb = task.cumulative_ancestor_workload(b);
                if (wa != wb) return wa > wb;
                return a < b;
            });
            if (heads.size() > static_cast<std::size_t>(m_cap)) {
                heads.resize(static_cast<std::size_t>(m_cap));
            }

            // A kernel that can saturate the device runs alone.
            bool oversized = std::any_of(heads.begin(), heads.end(), [&](NodeId v) {
                return max_parallelism(task.load(v), platform) >= m_cap;
            });
            if (oversized) {
                NodeId pick = heads.front();
                int best = 0;
                for (NodeId v : heads) {
                    int mp = max_parallelism(task.load(v), platform);
                    if (mp > best || (mp == best && v < pick)) {
                        best = mp;
                        pick = v;
                    }
                }
                heads.assign(1, pick);
            }

            std::set<NodeId> selected(heads.begin(), heads.end());
            for (auto& p : paths) {
                if (selected.count(p.front())) p.pop_front();
            }
            std::erase_if(paths, [](const auto& p) { return p.empty(); });

            std::sort(heads.begin(), heads.end());
            out.groups.push_back(std::move(heads));
        }
    }
    return out;
}

}  // namespace dagsched
