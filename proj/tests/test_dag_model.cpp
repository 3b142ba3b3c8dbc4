#include "dagsched/dag.hpp"
#include "dagsched/generator.hpp"
#include "test_fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace dagsched;
using dagsched::test::make_chain;
using dagsched::test::make_diamond;
using dagsched::test::make_example_task;

namespace {

// Independent oracle: transitive predecessors by plain DFS over the edge
// list, no bitsets involved.
std::set<NodeId> ancestors_by_dfs(const DagTask& task, NodeId v) {
    std::set<NodeId> out;
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        for (const auto& [from, to] : task.edges()) {
            if (to == cur && !out.count(from)) {
                out.insert(from);
                stack.push_back(from);
            }
        }
    }
    return out;
}

std::vector<DagTask> small_corpus() {
    GenConfig cfg;
    cfg.depth_min = 3;
    cfg.depth_max = 6;
    cfg.max_width = 5;
    cfg.avg_load = Rational(10);
    cfg.seed = 99;
    return generate_corpus(cfg, 25);
}

}  // namespace

TEST_CASE("validation accepts the example task") {
    DagTask task = make_example_task();
    CHECK(task.size() == 7);
    CHECK(task.source() == 1);
    CHECK(task.sink() == 7);
}

TEST_CASE("validation accepts a single node") {
    DagTask task = DagTask::make({{0, Rational(5)}}, {});
    CHECK(task.size() == 1);
    CHECK(task.source() == task.sink());
}

TEST_CASE("validation rejects cycles") {
    CHECK_THROWS_AS(DagTask::make({{1, Rational(1)}, {2, Rational(1)}},
                                  {{1, 2}, {2, 1}}),
                    ValidationError);
    CHECK_THROWS_WITH_AS(DagTask::make({{1, Rational(1)}}, {{1, 1}}),
                         doctest::Contains("self-loop"), ValidationError);
}

TEST_CASE("validation rejects structural defects") {
    // two sources
    CHECK_THROWS_WITH_AS(
        DagTask::make({{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}},
                      {{0, 2}, {1, 2}}),
        doctest::Contains("single source"), ValidationError);
    // two sinks
    CHECK_THROWS_WITH_AS(
        DagTask::make({{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}},
                      {{0, 1}, {0, 2}}),
        doctest::Contains("single sink"), ValidationError);
    // load below the minimum
    CHECK_THROWS_WITH_AS(DagTask::make({{3, Rational(1, 2)}}, {}),
                         doctest::Contains("node 3"), ValidationError);
    // unknown edge endpoint
    CHECK_THROWS_AS(DagTask::make({{0, Rational(1)}}, {{0, 9}}), ValidationError);
    // duplicate id
    CHECK_THROWS_AS(DagTask::make({{0, Rational(1)}, {0, Rational(2)}}, {}),
                    ValidationError);
}

TEST_CASE("ancestors on the example task") {
    DagTask task = make_example_task();
    CHECK(task.ancestors(5) == std::vector<NodeId>{1, 3, 4});
    CHECK(task.ancestors(1).empty());
    CHECK(task.ancestors(7) == std::vector<NodeId>{1, 2, 3, 4, 5, 6});
    CHECK_THROWS(task.ancestors(42));
}

TEST_CASE("concurrent sets") {
    DagTask chain = make_chain({Rational(1), Rational(1), Rational(1)});
    CHECK(chain.concurrent_set(1).empty());

    DagTask diamond = make_diamond();
    CHECK(diamond.concurrent_set(1) == std::vector<NodeId>{2});

    DagTask task = make_example_task();
    CHECK(task.concurrent_set(2) == std::vector<NodeId>{3, 4, 5, 6});
}

TEST_CASE("cumulative ancestor workload") {
    DagTask task = make_example_task();
    CHECK(task.cumulative_ancestor_workload(1) == Rational(1));
    CHECK(task.cumulative_ancestor_workload(5) == Rational(9));
    CHECK(task.cumulative_ancestor_workload(7) == Rational(16));
}

TEST_CASE("join nodes ordered by cumulative ancestor workload") {
    CHECK(make_example_task().join_nodes() == std::vector<NodeId>{5, 7});
    CHECK(make_chain({Rational(1), Rational(1)}).join_nodes().empty());
    CHECK(make_diamond().join_nodes() == std::vector<NodeId>{3});
}

TEST_CASE("graph query properties over a random corpus") {
    for (const DagTask& task : small_corpus()) {
        for (const DagNode& n : task.nodes()) {
            auto anc = task.ancestors(n.id);
            std::set<NodeId> anc_set(anc.begin(), anc.end());

            // matches the brute-force oracle, never contains the node itself
            CHECK(anc_set == ancestors_by_dfs(task, n.id));
            CHECK(!anc_set.count(n.id));

            // transitively closed
            for (NodeId a : anc) {
                for (NodeId aa : task.ancestors(a)) CHECK(anc_set.count(aa));
            }

            // strictly increasing workload along ancestry
            for (NodeId a : anc) {
                CHECK(task.cumulative_ancestor_workload(a) <
                      task.cumulative_ancestor_workload(n.id));
            }

            // concurrency is symmetric and excludes dependencies
            for (NodeId c : task.concurrent_set(n.id)) {
                auto back = task.concurrent_set(c);
                CHECK(std::find(back.begin(), back.end(), n.id) != back.end());
                CHECK(!task.is_ancestor(c, n.id));
                CHECK(!task.is_ancestor(n.id, c));
            }
        }

        // join order never lists a node before one of its ancestors
        auto joins = task.join_nodes();
        for (std::size_t i = 0; i < joins.size(); ++i) {
            for (std::size_t j = i + 1; j < joins.size(); ++j) {
                CHECK(!task.is_ancestor(joins[j], joins[i]));
            }
        }
    }
}
