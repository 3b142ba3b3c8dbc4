#include "dagsched/experiment.hpp"

#include "dagsched/simulator.hpp"
#include "dagsched/task_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dagsched {

std::string method_name(Method m) {
    switch (m) {
        case Method::proposed: return "proposed";
        case Method::greedy: return "greedy";
        case Method::greedy_unaware: return "greedy_unaware";
        case Method::graham_para: return "graham_para";
    }
    throw std::logic_error("unknown method");
}

namespace {

Rational method_bound(Method m, const DagTask& task, const Platform& platform) {
    switch (m) {
        case Method::proposed:
            return dag_makespan_bound(schedule(task, platform));
        case Method::greedy:
            return greedy_bound(task, platform);
        case Method::greedy_unaware:
            return greedy_unaware_bound(task, platform);
        case Method::graham_para:
            return graham_para_bound(task, platform);
    }
    throw std::logic_error("unknown method");
}

std::string sweep_var_name(ExperimentSpec::SweepVar v) {
    switch (v) {
        case ExperimentSpec::SweepVar::sm_count: return "M";
        case ExperimentSpec::SweepVar::max_width: return "P";
        case ExperimentSpec::SweepVar::depth: return "V";
    }
    throw std::logic_error("unknown sweep variable");
}

}  // namespace

std::vector<std::vector<Rational>> evaluate_corpus(
    const std::vector<DagTask>& corpus, const Platform& platform,
    const std::vector<Method>& methods, bool parallel) {
    std::vector<std::vector<Rational>> bounds(corpus.size());
    // Each slot is written by exactly one iteration, so the parallel and
    // serial paths produce identical results.
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(corpus.size()); ++i) {
            std::vector<Rational> row;
            row.reserve(methods.size());
            for (Method m : methods) {
                row.push_back(method_bound(m, corpus[i], platform));
            }
            bounds[i] = std::move(row);
        }
    } else {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            std::vector<Rational> row;
            row.reserve(methods.size());
            for (Method m : methods) {
                row.push_back(method_bound(m, corpus[i], platform));
            }
            bounds[i] = std::move(row);
        }
    }
    return bounds;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    if (spec.values.empty()) throw std::invalid_argument("no sweep values");
    if (spec.corpus_size < 1) throw std::invalid_argument("corpus_size must be >= 1");
    spec.base.check();
    spec.platform.check();

    std::vector<Method> methods = spec.methods;
    if (std::find(methods.begin(), methods.end(), spec.normalize_to) ==
        methods.end()) {
        methods.push_back(spec.normalize_to);
    }
    const std::size_t ref_idx = static_cast<std::size_t>(
        std::find(methods.begin(), methods.end(), spec.normalize_to) -
        methods.begin());

    std::vector<ResultRow> rows;
    for (long long value : spec.values) {
        GenConfig cfg = spec.base;
        Platform platform = spec.platform;
        switch (spec.sweep) {
            case ExperimentSpec::SweepVar::sm_count:
                platform.sm_count = static_cast<int>(value);
                break;
            case ExperimentSpec::SweepVar::max_width:
                cfg.max_width = static_cast<int>(value);
                break;
            case ExperimentSpec::SweepVar::depth:
                cfg.depth_min = cfg.depth_max = static_cast<int>(value);
                break;
        }
        std::vector<DagTask> corpus = generate_corpus(cfg, spec.corpus_size);
        auto bounds = evaluate_corpus(corpus, platform, methods, spec.parallel);

        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
            std::size_t col = static_cast<std::size_t>(
                std::find(methods.begin(), methods.end(), spec.methods[mi]) -
                methods.begin());
            Rational norm_sum = 0;
            Rational abs_sum = 0;
            std::vector<Rational> norms;
            norms.reserve(corpus.size());
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                Rational norm = bounds[i][col] / bounds[i][ref_idx];
                norms.push_back(norm);
                norm_sum += norm;
                abs_sum += bounds[i][col];
            }
            Rational mean_norm = norm_sum / Rational(corpus.size(), 1);
            double mean_d = to_double(mean_norm);
            double var = 0.0;
            for (const Rational& no : norms) {
                double d = to_double(no) - mean_d;
                var += d * d;
            }
            var /= static_cast<double>(corpus.size());

            ResultRow row;
            row.sweep_var = sweep_var_name(spec.sweep);
            row.sweep_value = value;
            row.method = spec.methods[mi];
            row.mean_norm = mean_norm;
            row.std_norm = std::sqrt(var);
            row.mean_abs = abs_sum / Rational(corpus.size(), 1);
            row.n = spec.corpus_size;
            row.seed = cfg.seed;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "sweep_var,sweep_value,method,mean_norm,std_norm,mean_abs,n,seed\n";
    char buf[64];
    for (const ResultRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.6f", r.std_norm);
        out << r.sweep_var << "," << r.sweep_value << "," << method_name(r.method)
            << "," << format_fixed(r.mean_norm, 6) << "," << buf << ","
            << format_fixed(r.mean_abs, 6) << "," << r.n << "," << r.seed << "\n";
    }
}

ValidationSummary run_validation(const GenConfig& config, int corpus_size,
                                 const Platform& platform, int samples,
                                 const Rational& scale_min,
                                 const Rational& scale_max, bool parallel) {
    config.check();
    platform.check();
    std::vector<DagTask> corpus = generate_corpus(config, corpus_size);

    struct PerTask {
        int violations = 0;
        double tight_worst = 0.0;
        double tight_scaled = 0.0;
        std::string details;
    };
    std::vector<PerTask> results(corpus.size());

    auto evaluate_one = [&](std::size_t i) {
        PerTask r;
        const DagTask& task = corpus[i];
        ScheduleScheme scheme = schedule(task, platform);
        Rational bound = dag_makespan_bound(scheme);

        SimConfig sim;
        sim.platform = platform;
        sim.mode = SimMode::scheme;
        SimTrace worst = simulate_scheme(task, scheme, sim);
        if (worst.makespan > bound) {
            ++r.violations;
            r.details += "task " + std::to_string(i) + ": worst-case makespan " +
                         format_exact(worst.makespan) + " > bound " +
                         format_exact(bound) + "\n";
        }
        r.tight_worst = to_double(worst.makespan / bound);

        double scaled_sum = 0.0;
        for (int s = 0; s < samples; ++s) {
            sim.time_model.kind = TimeModel::Kind::scaled;
            sim.time_model.seed = config.seed + 7919 * i + s;
            sim.time_model.scale_min = scale_min;
            sim.time_model.scale_max = scale_max;
            SimTrace trace = simulate_scheme(task, scheme, sim);
            if (trace.makespan > bound) {
                ++r.violations;
                r.details += "task " + std::to_string(i) + " sample " +
                             std::to_string(s) + ": makespan " +
                             format_exact(trace.makespan) + " > bound " +
                             format_exact(bound) + "\n";
            }
            scaled_sum += to_double(trace.makespan / bound);
        }
        r.tight_scaled = samples > 0 ? scaled_sum / samples : 0.0;
        results[i] = std::move(r);
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(corpus.size()); ++i) {
            evaluate_one(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < corpus.size(); ++i) evaluate_one(i);
    }

    ValidationSummary summary;
    summary.tasks = corpus_size;
    summary.runs = corpus_size * (samples + 1);
    double worst_sum = 0.0;
    double scaled_sum = 0.0;
    for (const PerTask& r : results) {
        summary.violations += r.violations;
        worst_sum += r.tight_worst;
        scaled_sum += r.tight_scaled;
        if (!r.details.empty()) summary.violation_details.push_back(r.details);
    }
    summary.mean_tightness_worst = worst_sum / corpus.size();
    summary.mean_tightness_scaled = scaled_sum / corpus.size();
    return summary;
}

std::vector<BenchCell> run_benchmarks(const std::vector<std::string>& fixture_paths,
                                      const std::vector<int>& sm_counts,
                                      const std::vector<long long>& avg_loads,
                                      int greedy_runs, std::uint64_t seed) {
    std::vector<BenchCell> cells;
    for (const std::string& path : fixture_paths) {
        DagTask base = read_task_file(path);
        std::string name = std::filesystem::path(path).stem().string();
        for (long long avg : avg_loads) {
            // fixtures carry unit loads; scale them to the requested average
            std::vector<DagNode> nodes = base.nodes();
            for (DagNode& n : nodes) n.load *= Rational(avg, 1);
            DagTask task = DagTask::make(nodes, base.edges());
            for (int M : sm_counts) {
                Platform platform{M, Rational(1)};
                BenchCell cell;
                cell.fixture = name;
                cell.sm_count = M;
                cell.avg_load = avg;

                ScheduleScheme scheme = schedule(task, platform);
                cell.proposed_bound = dag_makespan_bound(scheme);
                cell.greedy_bound = greedy_bound(task, platform);

                SimConfig sim;
                sim.platform = platform;
                sim.mode = SimMode::scheme;
                cell.proposed_sim = simulate_scheme(task, scheme, sim).makespan;

                double sum = 0.0, sq = 0.0, max_v = 0.0;
                for (int run = 0; run < greedy_runs; ++run) {
                    SimConfig g;
                    g.platform = platform;
                    g.mode = SimMode::greedy;
                    g.policy = DispatchPolicy::random;
                    g.policy_seed = seed + run;
                    double mk = to_double(simulate_greedy(task, g).makespan);
                    sum += mk;
                    sq += mk * mk;
                    max_v = std::max(max_v, mk);
                }
                cell.greedy_sim_max = max_v;
                cell.greedy_sim_avg = sum / greedy_runs;
                cell.greedy_sim_std = std::sqrt(
                    std::max(0.0, sq / greedy_runs -
                                      cell.greedy_sim_avg * cell.greedy_sim_avg));
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

void write_bench_table(const std::vector<BenchCell>& cells, std::ostream& out) {
    out << "fixture,M,avg_load,proposed_bound,greedy_bound,proposed_sim,"
           "greedy_sim_max,greedy_sim_avg,greedy_sim_std\n";
    char buf[128];
    for (const BenchCell& c : cells) {
        std::snprintf(buf, sizeof(buf), "%.4f,%.4f,%.4f", c.greedy_sim_max,
                      c.greedy_sim_avg, c.greedy_sim_std);
        out << c.fixture << "," << c.sm_count << "," << c.avg_load << ","
            << format_fixed(c.proposed_bound, 4) << ","
            << format_fixed(c.greedy_bound, 4) << ","
            << format_fixed(c.proposed_sim, 4) << "," << buf << "\n";
    }
}

}  // namespace dagsched
