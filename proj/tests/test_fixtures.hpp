#pragma once

#include "dagsched/dag.hpp"

#include <utility>
#include <vector>

namespace dagsched::test {

// The 7-node example task: loads 1,4,3,3,2,2,1, single source v1 and sink
// v7, joins at v5 and v7.
inline DagTask make_example_task() {
    std::vector<DagNode> nodes{
        {1, Rational(1)}, {2, Rational(4)}, {3, Rational(3)}, {4, Rational(3)},
        {5, Rational(2)}, {6, Rational(2)}, {7, Rational(1)},
    };
    std::vector<std::pair<NodeId, NodeId>> edges{
        {1, 2}, {1, 3}, {1, 4}, {3, 5}, {4, 5}, {4, 6}, {2, 7}, {5, 7}, {6, 7},
    };
    return DagTask::make(std::move(nodes), std::move(edges));
}

// a -> b -> c with the given loads
inline DagTask make_chain(std::vector<Rational> loads) {
    std::vector<DagNode> nodes;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 0; i < loads.size(); ++i) {
        nodes.push_back({static_cast<NodeId>(i), loads[i]});
        if (i > 0) edges.push_back({static_cast<NodeId>(i - 1),
                                    static_cast<NodeId>(i)});
    }
    return DagTask::make(std::move(nodes), std::move(edges));
}

// 0 -> {1, 2} -> 3
inline DagTask make_diamond(Rational s = Rational(1), Rational a = Rational(1),
                            Rational b = Rational(1), Rational t = Rational(1)) {
    return DagTask::make({{0, s}, {1, a}, {2, b}, {3, t}},
                         {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

// source -> n middle nodes -> sink
inline DagTask make_fan(int n, Rational mid_load, Rational end_load = Rational(1)) {
    std::vector<DagNode> nodes{{0, end_load}};
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 1; i <= n; ++i) {
        nodes.push_back({static_cast<NodeId>(i), mid_load});
        edges.push_back({0, static_cast<NodeId>(i)});
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(n + 1)});
    }
    nodes.push_back({static_cast<NodeId>(n + 1), end_load});
    return DagTask::make(std::move(nodes), std::move(edges));
}

}  // namespace dagsched::test
