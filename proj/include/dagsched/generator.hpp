#pragma once

#include "dagsched/dag.hpp"

#include <cstdint>
#include <vector>

namespace dagsched {

// Layered random DAG generation. Depth counts all layers including the
// single-node source and sink layers; each internal layer's width is
// drawn uniformly from [2, max_width]. Every internal node gets one
// mandatory parent in the previous layer plus independent extra edges
// from earlier layers; the sink absorbs all childless nodes.
struct GenConfig {
    int depth_min = 5;
    int depth_max = 8;
    int max_width = 8;          // P
    Rational avg_load = Rational(20);
    double load_jitter = 0.5;   // uniform loads in avg * [1 - j, 1 + j]
    double edge_density = 0.2;  // probability of each extra cross-layer edge
    std::uint64_t seed = 1;
    bool integer_loads = true;  // round loads to the nearest t_min multiple
    bool exact_mean = false;    // rescale each DAG's loads to hit avg exactly
    Rational t_min = Rational(1);

    void check() const;
};

DagTask generate(const GenConfig& config);

// count tasks from seed, seed + 1, ...
std::vector<DagTask> generate_corpus(const GenConfig& config, int count);

}  // namespace dagsched
