#include "dagsched/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dagsched {

void GenConfig::check() const {
    if (depth_min < 2 || depth_max < depth_min) {
        throw std::invalid_argument("depth range must satisfy 2 <= min <= max");
    }
    if (max_width < 2) throw std::invalid_argument("max_width must be >= 2");
    if (t_min <= 0) throw std::invalid_argument("t_min must be positive");
    if (avg_load < t_min) throw std::invalid_argument("avg_load must be >= t_min");
    if (load_jitter < 0 || load_jitter > 1) {
        throw std::invalid_argument("load_jitter must be in [0, 1]");
    }
    if (edge_density < 0 || edge_density > 1) {
        throw std::invalid_argument("edge_density must be in [0, 1]");
    }
}

DagTask generate(const GenConfig& config) {
    config.check();
    std::mt19937_64 rng(config.seed);

    const int depth =
        std::uniform_int_distribution<int>(config.depth_min, config.depth_max)(rng);
    std::vector<std::vector<NodeId>> layers;
    NodeId next_id = 0;
    layers.push_back({next_id++});  // source
    for (int l = 0; l < depth - 2; ++l) {
        int width = std::uniform_int_distribution<int>(2, config.max_width)(rng);
        std::vector<NodeId> layer;
        for (int i = 0; i < width; ++i) layer.push_back(next_id++);
        layers.push_back(std::move(layer));
    }
    const NodeId sink = next_id++;

    std::vector<std::pair<NodeId, NodeId>> edges;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t l = 1; l < layers.size(); ++l) {
        for (NodeId v : layers[l]) {
            const auto& prev = layers[l - 1];
            NodeId parent = prev[std::uniform_int_distribution<std::size_t>(
                0, prev.size() - 1)(rng)];
            edges.emplace_back(parent, v);
            for (std::size_t e = 0; e + 1 < l + 1; ++e) {
                for (NodeId u : layers[e]) {
                    if (u != parent && coin(rng) < config.edge_density) {
                        edges.emplace_back(u, v);
                    }
                }
            }
        }
    }
    // sink layer absorbs every childless node
    std::vector<bool> has_child(next_id, false);
    for (const auto& [from, to] : edges) has_child[from] = true;
    for (NodeId v = 0; v < sink; ++v) {
        if (!has_child[v]) edges.emplace_back(v, sink);
    }

    const double lo = to_double(config.avg_load) * (1.0 - config.load_jitter);
    const double hi = to_double(config.avg_load) * (1.0 + config.load_jitter);
    std::uniform_real_distribution<double> load_dist(lo, hi);
    std::vector<DagNode> nodes;
    for (NodeId v = 0; v < next_id; ++v) {
        double sample = load_dist(rng);
        Rational load;
        if (config.integer_loads) {
            long long steps =
                std::llround(sample / to_double(config.t_min));
            load = Rational(steps, 1) * config.t_min;
        } else {
            load = Rational(std::llround(sample * 1000.0), 1000);
        }
        if (load < config.t_min) load = config.t_min;
        nodes.push_back(DagNode{v, load});
    }

    if (config.exact_mean) {
        Rational sum = 0;
        for (const DagNode& n : nodes) sum += n.load;
        Rational target = config.avg_load * Rational(nodes.size(), 1);
        Rational factor = target / sum;
        for (DagNode& n : nodes) {
            n.load *= factor;
            if (n.load < config.t_min) n.load = config.t_min;
        }
    }

    return DagTask::make(std::move(nodes), std::move(edges), std::nullopt,
                         config.t_min);
}

std::vector<DagTask> generate_corpus(const GenConfig& config, int count) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    std::vector<DagTask> out;
    out.reserve(count);
    GenConfig c = config;
    for (int i = 0; i < count; ++i) {
        c.seed = config.seed + static_cast<std::uint64_t>(i);
        out.push_back(generate(c));
    }
    return out;
}

}  // namespace dagsched
