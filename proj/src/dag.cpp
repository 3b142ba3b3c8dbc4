#include "dagsched/dag.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dagsched {

namespace {

std::string id_list(const std::vector<NodeId>& ids) {
    std::ostringstream out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out << ", ";
        out << ids[i];
    }
    return out.str();
}

}  // namespace

DagTask DagTask::make(std::vector<DagNode> nodes,
                      std::vector<std::pair<NodeId, NodeId>> edges,
                      std::optional<Rational> period,
                      const Rational& min_load) {
    if (nodes.empty()) throw ValidationError("task has no nodes");

    std::sort(nodes.begin(), nodes.end(),
              [](const DagNode& a, const DagNode& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (nodes[i].id == nodes[i - 1].id) {
            throw ValidationError("duplicate node id " + std::to_string(nodes[i].id));
        }
    }
    for (const DagNode& n : nodes) {
        if (n.load < min_load) {
            throw ValidationError("node " + std::to_string(n.id) + ": load " +
                                  format_exact(n.load) + " below minimum " +
                                  format_exact(min_load));
        }
    }
    if (period) {
        if (*period <= 0) throw ValidationError("period must be positive");
    }

    DagTask task;
    task.nodes_ = std::move(nodes);
    task.period_ = std::move(period);

    const std::size_t n = task.nodes_.size();
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    task.preds_.resize(n);
    task.succs_.resize(n);
    for (const auto& [from, to] : edges) {
        if (!task.contains(from) || !task.contains(to)) {
            throw ValidationError("edge (" + std::to_string(from) + ", " +
                                  std::to_string(to) + ") references unknown node");
        }
        if (from == to) {
            throw ValidationError("cycle detected: self-loop on node " +
                                  std::to_string(from));
        }
        task.succs_[task.index_of(from)].push_back(
            static_cast<std::uint32_t>(task.index_of(to)));
        task.preds_[task.index_of(to)].push_back(
            static_cast<std::uint32_t>(task.index_of(from)));
    }
    task.edges_ = std::move(edges);

    // Kahn's algorithm: topological order doubles as the cycle check.
    std::vector<std::uint32_t> in_degree(n);
    for (std::size_t i = 0; i < n; ++i) {
        in_degree[i] = static_cast<std::uint32_t>(task.preds_[i].size());
    }
    std::vector<std::uint32_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_degree[i] == 0) queue.push_back(static_cast<std::uint32_t>(i));
    }
    std::size_t head = 0;
    while (head < queue.size()) {
        std::uint32_t u = queue[head++];
        task.topo_.push_back(u);
        for (std::uint32_t v : task.succs_[u]) {
            if (--in_degree[v] == 0) queue.push_back(v);
        }
    }
    if (task.topo_.size() != n) {
        std::vector<NodeId> stuck;
        for (std::size_t i = 0; i < n; ++i) {
            if (in_degree[i] > 0) stuck.push_back(task.nodes_[i].id);
        }
        throw ValidationError("cycle detected involving nodes: " + id_list(stuck));
    }

    std::vector<NodeId> sources, sinks;
    for (std::size_t i = 0; i < n; ++i) {
        if (task.preds_[i].empty()) sources.push_back(task.nodes_[i].id);
        if (task.succs_[i].empty()) sinks.push_back(task.nodes_[i].id);
    }
    if (sources.size() != 1) {
        throw ValidationError("expected a single source node, found: " +
                              id_list(sources));
    }
    if (sinks.size() != 1) {
        throw ValidationError("expected a single sink node, found: " + id_list(sinks));
    }
    task.source_ = task.index_of(sources[0]);
    task.sink_ = task.index_of(sinks[0]);

    task.anc_.assign(n, boost::dynamic_bitset<>(n));
    for (std::uint32_t u : task.topo_) {
        for (std::uint32_t p : task.preds_[u]) {
            task.anc_[u] |= task.anc_[p];
            task.anc_[u].set(p);
        }
    }
    task.desc_.assign(n, boost::dynamic_bitset<>(n));
    for (auto it = task.topo_.rbegin(); it != task.topo_.rend(); ++it) {
        for (std::uint32_t s : task.succs_[*it]) {
            task.desc_[*it] |= task.desc_[s];
            task.desc_[*it].set(s);
        }
    }

    task.wanc_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational sum = task.nodes_[i].load;
        for (std::size_t j = task.anc_[i].find_first();
             j != boost::dynamic_bitset<>::npos; j = task.anc_[i].find_next(j)) {
            sum += task.nodes_[j].load;
        }
        task.wanc_[i] = sum;
    }

    return task;
}

std::size_t DagTask::index_of(NodeId id) const {
    auto it = std::lower_bound(
        nodes_.begin(), nodes_.end(), id,
        [](const DagNode& n, NodeId v) { return n.id < v; });
    if (it == nodes_.end() || it->id != id) {
        throw std::out_of_range("unknown node id " + std::to_string(id));
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

bool DagTask::contains(NodeId id) const {
    auto it = std::lower_bound(
        nodes_.begin(), nodes_.end(), id,
        [](const DagNode& n, NodeId v) { return n.id < v; });
    return it != nodes_.end() && it->id == id;
}

const Rational& DagTask::load(NodeId id) const { return nodes_[index_of(id)].load; }

Rational DagTask::total_load() const {
    Rational sum = 0;
    for (const DagNode& n : nodes_) sum += n.load;
    return sum;
}

std::vector<NodeId> DagTask::predecessors(NodeId id) const {
    std::vector<NodeId> out;
    for (std::uint32_t p : preds_[index_of(id)]) out.push_back(nodes_[p].id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> DagTask::successors(NodeId id) const {
    std::vector<NodeId> out;
    for (std::uint32_t s : succs_[index_of(id)]) out.push_back(nodes_[s].id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> DagTask::ancestors(NodeId id) const {
    const auto& bits = anc_[index_of(id)];
    std::vector<NodeId> out;
    for (std::size_t j = bits.find_first(); j != boost::dynamic_bitset<>::npos;
         j = bits.find_next(j)) {
        out.push_back(nodes_[j].id);
    }
    return out;  // node indices ascend with ids, so this is id-sorted
}

std::vector<NodeId> DagTask::descendants(NodeId id) const {
    const auto& bits = desc_[index_of(id)];
    std::vector<NodeId> out;
    for (std::size_t j = bits.find_first(); j != boost::dynamic_bitset<>::npos;
         j = bits.find_next(j)) {
        out.push_back(nodes_[j].id);
    }
    return out;
}

std::vector<NodeId> DagTask::concurrent_set(NodeId id) const {
    std::size_t i = index_of(id);
    boost::dynamic_bitset<> related = anc_[i] | desc_[i];
    related.set(i);
    std::vector<NodeId> out;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        if (!related.test(j)) out.push_back(nodes_[j].id);
    }
    return out;
}

bool DagTask::is_ancestor(NodeId a, NodeId b) const {
    return anc_[index_of(b)].test(index_of(a));
}

Rational DagTask::cumulative_ancestor_workload(NodeId id) const {
    return wanc_[index_of(id)];
}

std::vector<NodeId> DagTask::join_nodes() const {
    std::vector<std::size_t> joins;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (preds_[i].size() >= 2) joins.push_back(i);
    }
    std::sort(joins.begin(), joins.end(), [this](std::size_t a, std::size_t b) {
        if (wanc_[a] != wanc_[b]) return wanc_[a] < wanc_[b];
        return nodes_[a].id < nodes_[b].id;
    });
    std::vector<NodeId> out;
    for (std::size_t i : joins) out.push_back(nodes_[i].id);
    return out;
}

std::vector<NodeId> DagTask::topological_order() const {
    std::vector<NodeId> out;
    for (std::uint32_t i : topo_) out.push_back(nodes_[i].id);
    return out;
}

}  // namespace dagsched
