#include "dagsched/task_io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dagsched {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& j, const std::string& what) {
    if (j.is_string()) {
        auto r = parse_rational(j.get<std::string>());
        if (!r) throw ValidationError(what + ": malformed number '" +
                                      j.get<std::string>() + "'");
        return *r;
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long long>(), 1);
    }
    if (j.is_number_float()) {
        // Round-trip through the shortest decimal representation so that
        // literals like 7.5 or 0.1 become the exact decimal fraction.
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), j.get<double>());
        auto r = parse_rational(std::string_view(buf, res.ptr - buf));
        if (!r) throw ValidationError(what + ": unrepresentable number");
        return *r;
    }
    throw ValidationError(what + ": expected a number");
}

}  // namespace

DagTask read_task(std::istream& in, const Rational& min_load) {
    json j = json::parse(in);
    if (!j.is_object() || !j.contains("nodes") || !j.contains("edges")) {
        throw ValidationError("task file must contain 'nodes' and 'edges'");
    }
    std::vector<DagNode> nodes;
    for (const auto& n : j.at("nodes")) {
        nodes.push_back(DagNode{n.at("id").get<NodeId>(),
                                rational_from_json(n.at("load"), "node load")});
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
            throw ValidationError("edges must be [from, to] pairs");
        }
        edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    }
    std::optional<Rational> period;
    if (j.contains("period")) {
        period = rational_from_json(j.at("period"), "period");
    }
    return DagTask::make(std::move(nodes), std::move(edges), std::move(period),
                         min_load);
}

DagTask read_task_file(const std::string& path, const Rational& min_load) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open task file: " + path);
    return read_task(in, min_load);
}

void write_task(const DagTask& task, std::ostream& out,
                std::optional<std::uint64_t> seed) {
    json j;
    j["nodes"] = json::array();
    for (const DagNode& n : task.nodes()) {
        j["nodes"].push_back({{"id", n.id}, {"load", format_exact(n.load)}});
    }
    j["edges"] = json::array();
    for (const auto& [from, to] : task.edges()) {
        j["edges"].push_back({from, to});
    }
    if (task.period()) j["period"] = format_exact(*task.period());
    if (seed) j["seed"] = *seed;
    out << j.dump(2) << "\n";
}

void write_task_file(const DagTask& task, const std::string& path,
                     std::optional<std::uint64_t> seed) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_task(task, out, seed);
}

void write_scheme(const ScheduleScheme& scheme, std::ostream& out) {
    json j;
    j["platform"] = {{"sm_count", scheme.platform.sm_count},
                     {"t_min", format_exact(scheme.platform.t_min)}};
    j["groups"] = json::array();
    for (const GroupPlan& g : scheme.groups) {
        json members = json::array();
        for (const MemberPlan& m : g.members) {
            members.push_back({{"entity", to_string(m.entity)},
                               {"load", format_exact(m.load)},
                               {"parallelism", m.parallelism},
                               {"exec_time", format_exact(m.exec)}});
        }
        json launches = json::array();
        for (const LaunchRecord& l : g.launches) {
            launches.push_back({{"entity", to_string(l.entity)},
                                {"parallelism", l.parallelism},
                                {"duration", format_exact(l.duration)}});
        }
        j["groups"].push_back({{"index", g.index},
                               {"members", members},
                               {"spare_sms", g.spare_sms},
                               {"spare_capacity", format_exact(g.spare_capacity)},
                               {"response", format_exact(g.response)},
                               {"bottleneck", to_string(g.bottleneck)},
                               {"launches", launches}});
    }
    j["segmentations"] = json::array();
    for (const SegmentationRecord& s : scheme.segmentations) {
        j["segmentations"].push_back(
            {{"source", to_string(s.source)},
             {"parallel", to_string(s.parallel)},
             {"residual", to_string(s.residual)},
             {"parallel_load", format_exact(s.parallel_load)},
             {"residual_load", format_exact(s.residual_load)},
             {"group", s.group}});
    }
    j["extra_deps"] = json::array();
    for (const auto& [from, to] : scheme.extra_deps) {
        j["extra_deps"].push_back({to_string(from), to_string(to)});
    }
    j["entities"] = json::array();
    for (const EntityRecord& e : scheme.entities) {
        json preds = json::array();
        for (const EntityId& p : e.preds) preds.push_back(to_string(p));
        j["entities"].push_back({{"id", to_string(e.id)},
                                 {"load", format_exact(e.load)},
                                 {"parallelism", e.parallelism},
                                 {"exec_time", format_exact(e.exec)},
                                 {"group", e.group},
                                 {"launched", e.launched},
                                 {"preds", preds}});
    }
    out << j.dump(2) << "\n";
}

void write_trace(const SimTrace& trace, std::ostream& out) {
    out << "entity,start,finish,sms\n";
    for (const SimEvent& e : trace.events) {
        out << e.entity << "," << format_exact(e.start) << ","
            << format_exact(e.finish) << "," << e.sms_held << "\n";
    }
    out << "makespan," << format_exact(trace.makespan) << ",,\n";
}

}  // namespace dagsched
