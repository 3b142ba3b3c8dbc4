#pragma once

#include "dagsched/analysis.hpp"
#include "dagsched/exec_model.hpp"
#include "dagsched/generator.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dagsched {

enum class Method { proposed, greedy, greedy_unaware, graham_para };

std::string method_name(Method m);

// One sweep: vary M, the width parameter P, or the DAG depth (which
// scales the node count), generating a fresh corpus per sweep point and
// aggregating per-task bounds normalized against the reference method.
struct ExperimentSpec {
    enum class SweepVar { sm_count, max_width, depth };

    SweepVar sweep = SweepVar::sm_count;
    std::vector<long long> values;
    GenConfig base;
    Platform platform;
    int corpus_size = 1000;
    std::vector<Method> methods = {Method::proposed, Method::greedy,
                                   Method::greedy_unaware, Method::graham_para};
    Method normalize_to = Method::greedy_unaware;
    bool parallel = true;  // evaluate the corpus across OpenMP threads
};

struct ResultRow {
    std::string sweep_var;
    long long sweep_value = 0;
    Method method = Method::proposed;
    Rational mean_norm;     // exact mean of per-task normalized bounds
    double std_norm = 0.0;  // population stddev of the normalized bounds
    Rational mean_abs;
    int n = 0;
    std::uint64_t seed = 0;
};

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

// Per-task bounds for one corpus, one row per task per method. The
// parallel and serial paths produce identical results; the serial one is
// the reference the tests compare against.
std::vector<std::vector<Rational>> evaluate_corpus(
    const std::vector<DagTask>& corpus, const Platform& platform,
    const std::vector<Method>& methods, bool parallel);

// columns: sweep_var,sweep_value,method,mean_norm,std_norm,mean_abs,n,seed
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);

// Theorem check over a generated corpus: simulate every schedule once at
// worst case and `samples` times with scaled durations; count bound
// violations (always expected to be zero) and track tightness.
struct ValidationSummary {
    int tasks = 0;
    int runs = 0;
    int violations = 0;
    double mean_tightness_worst = 0.0;   // simulated / bound, worst case
    double mean_tightness_scaled = 0.0;  // simulated / bound, scaled runs
    std::vector<std::string> violation_details;
};

ValidationSummary run_validation(const GenConfig& config, int corpus_size,
                                 const Platform& platform, int samples,
                                 const Rational& scale_min,
                                 const Rational& scale_max, bool parallel = true);

// Benchmark fixtures: per fixture and per (M, avg-load) cell, the
// proposed and greedy bounds, the simulated schedule makespan, and the
// greedy simulation statistics over `greedy_runs` random-policy seeds.
struct BenchCell {
    std::string fixture;
    int sm_count = 0;
    long long avg_load = 0;
    Rational proposed_bound;
    Rational greedy_bound;
    Rational proposed_sim;  // schedule simulated at worst case
    double greedy_sim_max = 0.0;
    double greedy_sim_avg = 0.0;
    double greedy_sim_std = 0.0;
};

std::vector<BenchCell> run_benchmarks(const std::vector<std::string>& fixture_paths,
                                      const std::vector<int>& sm_counts,
                                      const std::vector<long long>& avg_loads,
                                      int greedy_runs, std::uint64_t seed);

void write_bench_table(const std::vector<BenchCell>& cells, std::ostream& out);

}  // namespace dagsched
