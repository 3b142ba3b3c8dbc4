// Times the corpus evaluation loop with OpenMP against the serial
// reference path and reports the speedup.

#include "dagsched/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dagsched;

namespace {

double run_once(const std::vector<DagTask>& corpus, const Platform& platform,
                const std::vector<Method>& methods, bool parallel) {
    auto start = std::chrono::steady_clock::now();
    auto bounds = evaluate_corpus(corpus, platform, methods, parallel);
    auto stop = std::chrono::steady_clock::now();
    // keep the result alive so the loop cannot be elided
    volatile double sink = to_double(bounds.back().back());
    (void)sink;
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    int corpus_size = argc > 1 ? std::atoi(argv[1]) : 400;

    GenConfig cfg;
    cfg.seed = 42;
    Platform platform{32, Rational(1)};
    std::vector<Method> methods = {Method::proposed, Method::greedy,
                                   Method::greedy_unaware, Method::graham_para};

    std::printf("generating %d tasks...\n", corpus_size);
    std::vector<DagTask> corpus = generate_corpus(cfg, corpus_size);

    double warm = run_once(corpus, platform, methods, false);
    (void)warm;
    double serial = run_once(corpus, platform, methods, false);
    double parallel = run_once(corpus, platform, methods, true);

#ifdef _OPENMP
    std::printf("threads:  %d\n", omp_get_max_threads());
#else
    std::printf("threads:  1 (OpenMP disabled)\n");
#endif
    std::printf("serial:   %.3f s  (%.1f tasks/s)\n", serial,
                corpus_size / serial);
    std::printf("parallel: %.3f s  (%.1f tasks/s)\n", parallel,
                corpus_size / parallel);
    std::printf("speedup:  %.2fx\n", serial / parallel);
    return 0;
}
