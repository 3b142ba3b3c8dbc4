#pragma once

#include "dagsched/rational.hpp"

#include <stdexcept>

namespace dagsched {

// GPU device abstraction: M identical streaming multiprocessors and the
// memory-throughput floor on kernel duration (the basic time unit).
struct Platform {
    int sm_count = 1;
    Rational t_min = Rational(1);

    void check() const {
        if (sm_count < 1) throw std::invalid_argument("sm_count must be >= 1");
        if (t_min <= 0) throw std::invalid_argument("t_min must be positive");
    }
};

// Execution time of a kernel with computation load `load` (time on a
// single SM) when granted m SMs. Oversubscribing the device (m > M)
// stretches the kernel by the number of passes it needs.
Rational exec_time(const Rational& load, int m, const Platform& platform);

// Largest parallelism that still shortens the kernel: load / t_min,
// rounded down, at least 1. Beyond it the duration is pinned at t_min.
int max_parallelism(const Rational& load, const Platform& platform);

}  // namespace dagsched
