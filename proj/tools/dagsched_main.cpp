// Command-line driver: generation, division inspection, scheduling,
// bound analysis, simulation, experiment sweeps, bound validation and the
// fixture benchmarks.

#include "dagsched/analysis.hpp"
#include "dagsched/division.hpp"
#include "dagsched/experiment.hpp"
#include "dagsched/generator.hpp"
#include "dagsched/simulator.hpp"
#include "dagsched/task_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

namespace {

using namespace dagsched;

Rational parse_rational_flag(const std::string& text, const std::string& what) {
    auto r = parse_rational(text);
    if (!r || *r <= 0) {
        throw CLI::ValidationError(what + ": expected a positive number, got '" +
                                   text + "'");
    }
    return *r;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

struct GlobalOpts {
    int sm_count = 32;
    std::string t_min = "1";
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "pretty";

    Platform platform() const {
        return Platform{sm_count, parse_rational_flag(t_min, "--t-min")};
    }
};

void add_global_flags(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--sm-count", g.sm_count, "Number of SMs (M)");
    cmd->add_option("--t-min", g.t_min, "Basic time unit");
    cmd->add_option("--seed", g.seed, "Random seed");
    cmd->add_option("--out", g.out, "Output file (default: stdout)");
    cmd->add_option("--format", g.format, "Output format: pretty or csv")
        ->check(CLI::IsMember({"pretty", "csv"}));
}

void add_gen_flags(CLI::App* cmd, GenConfig& cfg, std::string& avg_load) {
    cmd->add_option("--depth-min", cfg.depth_min, "Minimum layer count");
    cmd->add_option("--depth-max", cfg.depth_max, "Maximum layer count");
    cmd->add_option("--max-width,-P", cfg.max_width, "Maximum layer width (P)");
    cmd->add_option("--avg-load", avg_load, "Average computation load");
    cmd->add_option("--load-jitter", cfg.load_jitter,
                    "Relative half-width of the load distribution");
    cmd->add_option("--edge-density", cfg.edge_density,
                    "Probability of each extra cross-layer edge");
    cmd->add_flag("--fractional-loads", [&cfg](std::int64_t) {
        cfg.integer_loads = false;
    }, "Keep loads on a 1/1000 grid instead of rounding to t_min");
    cmd->add_flag("--exact-mean", cfg.exact_mean,
                  "Rescale each DAG so the mean load is exact");
}

int cmd_generate(const GlobalOpts& g, GenConfig cfg, const std::string& avg_load,
                 int count, const std::string& out_dir) {
    cfg.seed = g.seed;
    cfg.t_min = parse_rational_flag(g.t_min, "--t-min");
    cfg.avg_load = parse_rational_flag(avg_load, "--avg-load");
    std::filesystem::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
        GenConfig c = cfg;
        c.seed = cfg.seed + static_cast<std::uint64_t>(i);
        DagTask task = generate(c);
        std::string path = out_dir + "/dag_" + std::to_string(c.seed) + ".json";
        write_task_file(task, path, c.seed);
    }
    std::cout << "wrote " << count << " task(s) to " << out_dir << "\n";
    return 0;
}

int cmd_divide(const GlobalOpts& g, const std::string& input) {
    Platform platform = g.platform();
    DagTask task = read_task_file(input, platform.t_min);
    std::ofstream file;
    std::ostream& out = open_output(g.out, file);

    auto blocks = build_blocks(task);
    out << "blocks:\n";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        out << "  B" << i + 1;
        if (blocks[i].join) {
            out << " (join " << *blocks[i].join << "):";
        } else {
            out << " (residual):";
        }
        for (NodeId v : blocks[i].members) out << " " << v;
        out << "\n";
    }
    out << "local paths:\n";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].members.empty()) continue;
        out << "  B" << i + 1 << ":";
        for (const auto& path : local_paths(task, blocks[i]).paths) {
            out << " <";
            for (std::size_t k = 0; k < path.size(); ++k) {
                if (k) out << " ";
                out << path[k];
            }
            out << ">";
        }
        out << "\n";
    }
    out << "groups:\n";
    auto groups = build_groups(task, platform);
    for (std::size_t i = 0; i < groups.groups.size(); ++i) {
        out << "  pi_" << i + 1 << ":";
        for (NodeId v : groups.groups[i]) out << " " << v;
        out << "\n";
    }
    return 0;
}

int cmd_schedule(const GlobalOpts& g, const std::string& input,
                 const std::string& scheme_out) {
    Platform platform = g.platform();
    DagTask task = read_task_file(input, platform.t_min);
    ScheduleScheme scheme = schedule(task, platform);

    std::ofstream file;
    std::ostream& out = open_output(g.out, file);
    out << "groups (M=" << platform.sm_count << "):\n";
    for (const GroupPlan& gp : scheme.groups) {
        out << "  pi_" << gp.index + 1 << ": R=" << format_exact(gp.response)
            << " S=" << gp.spare_sms
            << " WS=" << format_exact(gp.spare_capacity) << "\n";
        for (const MemberPlan& m : gp.members) {
            out << "    member " << to_string(m.entity) << " load="
                << format_exact(m.load) << " m=" << m.parallelism
                << " C=" << format_exact(m.exec) << "\n";
        }
        for (const LaunchRecord& l : gp.launches) {
            out << "    launch " << to_string(l.entity) << " m=" << l.parallelism
                << " span=[0," << format_exact(l.duration) << ")\n";
        }
    }
    if (!scheme.segmentations.empty()) {
        out << "segmentations:\n";
        for (const SegmentationRecord& s : scheme.segmentations) {
            out << "  " << to_string(s.source) << " -> "
                << to_string(s.parallel) << " (load "
                << format_exact(s.parallel_load) << ") + "
                << to_string(s.residual) << " (load "
                << format_exact(s.residual_load) << ") in group " << s.group + 1
                << "\n";
        }
    }
    if (!scheme.extra_deps.empty()) {
        out << "extra dependencies:\n";
        for (const auto& [from, to] : scheme.extra_deps) {
            out << "  (" << to_string(from) << " -> " << to_string(to) << ")\n";
        }
    }
    out << "makespan bound: " << format_exact(dag_makespan_bound(scheme)) << "\n";

    if (!scheme_out.empty()) {
        std::ofstream sf(scheme_out);
        if (!sf) throw std::runtime_error("cannot open " + scheme_out);
        write_scheme(scheme, sf);
    }
    return 0;
}

int cmd_analyze(const GlobalOpts& g, const std::string& input) {
    Platform platform = g.platform();
    DagTask task = read_task_file(input, platform.t_min);
    MakespanReport report = analyze(task, platform);

    std::ofstream file;
    std::ostream& out = open_output(g.out, file);
    if (g.format == "csv") {
        out << "method,bound,normalized\n";
        auto row = [&](const std::string& name, const Rational& bound) {
            out << name << "," << format_fixed(bound, 6) << ","
                << format_fixed(report.normalized.at(name), 6) << "\n";
        };
        row("proposed", report.proposed);
        row("greedy", report.greedy);
        row("greedy_unaware", report.greedy_unaware);
        row("graham_para", report.graham_para);
        out << "lower_bound," << format_fixed(report.lower, 6) << ",\n";
    } else {
        out << "proposed:       " << format_exact(report.proposed)
            << "  (normalized " << format_fixed(report.normalized.at("proposed"), 4)
            << ")\n";
        out << "greedy:         " << format_exact(report.greedy)
            << "  (normalized " << format_fixed(report.normalized.at("greedy"), 4)
            << ")\n";
        out << "greedy_unaware: " << format_exact(report.greedy_unaware)
            << "  (reference)\n";
        out << "graham_para:    " << format_exact(report.graham_para)
            << "  (normalized "
            << format_fixed(report.normalized.at("graham_para"), 4) << ")\n";
        out << "lower_bound:    " << format_exact(report.lower) << "\n";
    }
    return 0;
}

int cmd_simulate(const GlobalOpts& g, const std::string& input,
                 const std::string& mode, const std::string& policy,
                 const std::string& scale_min, const std::string& scale_max,
                 int runs) {
    Platform platform = g.platform();
    DagTask task = read_task_file(input, platform.t_min);

    SimConfig config;
    config.platform = platform;
    config.mode = mode == "greedy" ? SimMode::greedy : SimMode::scheme;
    config.policy = policy == "random" ? DispatchPolicy::random : DispatchPolicy::fifo;
    Rational lo = parse_rational_flag(scale_min, "--scale-min");
    Rational hi = parse_rational_flag(scale_max, "--scale-max");
    if (lo != 1 || hi != 1) {
        config.time_model.kind = TimeModel::Kind::scaled;
        config.time_model.scale_min = lo;
        config.time_model.scale_max = hi;
    }

    std::unique_ptr<ScheduleScheme> scheme;
    if (config.mode == SimMode::scheme) {
        scheme = std::make_unique<ScheduleScheme>(schedule(task, platform));
    }

    std::ofstream file;
    std::ostream& out = open_output(g.out, file);
    if (runs > 1) {
        out << "run,makespan\n";
        for (int r = 0; r < runs; ++r) {
            config.policy_seed = g.seed + r;
            config.time_model.seed = g.seed + r;
            SimTrace trace = config.mode == SimMode::scheme
                                 ? simulate_scheme(task, *scheme, config)
                                 : simulate_greedy(task, config);
            out << r << "," << format_fixed(trace.makespan, 6) << "\n";
        }
    } else {
        config.policy_seed = g.seed;
        config.time_model.seed = g.seed;
        SimTrace trace = config.mode == SimMode::scheme
                             ? simulate_scheme(task, *scheme, config)
                             : simulate_greedy(task, config);
        write_trace(trace, out);
    }
    return 0;
}

int cmd_experiment(const GlobalOpts& g, GenConfig cfg, const std::string& avg_load,
                   const std::string& sweep, std::vector<long long> values,
                   int corpus_size, bool serial) {
    cfg.seed = g.seed;
    cfg.t_min = parse_rational_flag(g.t_min, "--t-min");
    cfg.avg_load = parse_rational_flag(avg_load, "--avg-load");

    ExperimentSpec spec;
    if (sweep == "M") {
        spec.sweep = ExperimentSpec::SweepVar::sm_count;
    } else if (sweep == "P") {
        spec.sweep = ExperimentSpec::SweepVar::max_width;
    } else {
        spec.sweep = ExperimentSpec::SweepVar::depth;
    }
    spec.values = std::move(values);
    spec.base = cfg;
    spec.platform = g.platform();
    spec.corpus_size = corpus_size;
    spec.parallel = !serial;

    auto rows = run_experiment(spec);
    std::ofstream file;
    std::ostream& out = open_output(g.out, file);
    write_csv(rows, out);
    return 0;
}

int cmd_validate(const GlobalOpts& g, GenConfig cfg, const std::string& avg_load,
                 int corpus_size, int samples, const std::string& scale_min,
                 const std::string& scale_max, bool serial) {
    cfg.seed = g.seed;
    cfg.t_min = parse_rational_flag(g.t_min, "--t-min");
    cfg.avg_load = parse_rational_flag(avg_load, "--avg-load");

    ValidationSummary summary = run_validation(
        cfg, corpus_size, g.platform(), samples,
        parse_rational_flag(scale_min, "--scale-min"),
        parse_rational_flag(scale_max, "--scale-max"), !serial);

    std::ofstream file;
    std::ostream& out = open_output(g.out, file);
    out << "tasks: " << summary.tasks << "\n";
    out << "simulation runs: " << summary.runs << "\n";
    out << "bound violations: " << summary.violations << "\n";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", summary.mean_tightness_worst);
    out << "mean tightness (worst case): " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.6f", summary.mean_tightness_scaled);
    out << "mean tightness (scaled): " << buf << "\n";
    for (const std::string& d : summary.violation_details) out << d;
    return summary.violations == 0 ? 0 : 1;
}

int cmd_bench(const GlobalOpts& g, const std::string& fixtures_dir, int runs) {
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(fixtures_dir)) {
        if (entry.path().extension() == ".json") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        throw std::runtime_error("no fixture files in " + fixtures_dir);
    }
    auto cells = run_benchmarks(paths, {8, 30}, {4, 20}, runs, g.seed);
    std::ofstream file;
    std::ostream& out = open_output(g.out, file);
    write_bench_table(cells, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scheduler, makespan analyzer and device simulator for "
                 "DAG-structured GPU tasks"};
    app.require_subcommand(1);

    GlobalOpts g;
    GenConfig gen_cfg;
    std::string avg_load = "20";
    int count = 1;
    std::string out_dir = ".";
    std::string input;
    std::string scheme_out;
    std::string mode = "scheme";
    std::string policy = "fifo";
    std::string scale_min = "1";
    std::string scale_max = "1";
    int runs = 1;
    std::string sweep = "M";
    std::vector<long long> values;
    int corpus_size = 1000;
    int samples = 10;
    bool serial = false;
    std::string fixtures_dir = "data/fixtures";

    auto* c_gen = app.add_subcommand("generate", "Generate random layered tasks");
    add_global_flags(c_gen, g);
    add_gen_flags(c_gen, gen_cfg, avg_load);
    c_gen->add_option("--count", count, "Number of tasks");
    c_gen->add_option("--out-dir", out_dir, "Output directory");

    auto* c_div = app.add_subcommand("divide", "Print blocks, local paths, groups");
    add_global_flags(c_div, g);
    c_div->add_option("--input", input, "Task file")->required();

    auto* c_sched = app.add_subcommand("schedule", "Compute the schedule");
    add_global_flags(c_sched, g);
    c_sched->add_option("--input", input, "Task file")->required();
    c_sched->add_option("--scheme-out", scheme_out, "Write the schedule as JSON");

    auto* c_an = app.add_subcommand("analyze", "Compute all makespan bounds");
    add_global_flags(c_an, g);
    c_an->add_option("--input", input, "Task file")->required();

    auto* c_sim = app.add_subcommand("simulate", "Simulate the device");
    add_global_flags(c_sim, g);
    c_sim->add_option("--input", input, "Task file")->required();
    c_sim->add_option("--mode", mode, "scheme or greedy")
        ->check(CLI::IsMember({"scheme", "greedy"}));
    c_sim->add_option("--policy", policy, "fifo or random")
        ->check(CLI::IsMember({"fifo", "random"}));
    c_sim->add_option("--scale-min", scale_min, "Lower scale factor bound");
    c_sim->add_option("--scale-max", scale_max, "Upper scale factor bound");
    c_sim->add_option("--runs", runs, "Number of runs (CSV of makespans if > 1)");

    auto* c_exp = app.add_subcommand("experiment", "Sweep M, P or depth");
    add_global_flags(c_exp, g);
    add_gen_flags(c_exp, gen_cfg, avg_load);
    c_exp->add_option("--sweep", sweep, "Sweep variable: M, P or V")
        ->check(CLI::IsMember({"M", "P", "V"}));
    c_exp->add_option("--values", values, "Sweep values")->required();
    c_exp->add_option("--corpus-size", corpus_size, "Tasks per sweep point");
    c_exp->add_flag("--serial", serial, "Disable OpenMP corpus evaluation");

    auto* c_val = app.add_subcommand("validate", "Check simulated makespans "
                                                 "against the bound");
    add_global_flags(c_val, g);
    add_gen_flags(c_val, gen_cfg, avg_load);
    c_val->add_option("--corpus-size", corpus_size, "Number of tasks");
    c_val->add_option("--samples", samples, "Scaled-time samples per task");
    c_val->add_option("--scale-min", scale_min, "Lower scale factor bound");
    c_val->add_option("--scale-max", scale_max, "Upper scale factor bound");
    c_val->add_flag("--serial", serial, "Disable OpenMP corpus evaluation");

    auto* c_bench = app.add_subcommand("bench", "Run the benchmark fixtures");
    add_global_flags(c_bench, g);
    c_bench->add_option("--fixtures-dir", fixtures_dir, "Fixture directory");
    c_bench->add_option("--runs", runs, "Greedy simulation runs per cell");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_gen->parsed()) return cmd_generate(g, gen_cfg, avg_load, count, out_dir);
        if (c_div->parsed()) return cmd_divide(g, input);
        if (c_sched->parsed()) return cmd_schedule(g, input, scheme_out);
        if (c_an->parsed()) return cmd_analyze(g, input);
        if (c_sim->parsed()) {
            return cmd_simulate(g, input, mode, policy, scale_min, scale_max, runs);
        }
        if (c_exp->parsed()) {
            return cmd_experiment(g, gen_cfg, avg_load, sweep, values, corpus_size,
                                  serial);
        }
        if (c_val->parsed()) {
            return cmd_validate(g, gen_cfg, avg_load, corpus_size, samples,
                                scale_min, scale_max, serial);
        }
        if (c_bench->parsed()) {
            int bench_runs = runs > 1 ? runs : 100;
            return cmd_bench(g, fixtures_dir, bench_runs);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
