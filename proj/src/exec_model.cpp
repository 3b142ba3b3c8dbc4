#include "dagsched/exec_model.hpp"

#include <limits>

namespace dagsched {

Rational exec_time(const Rational& load, int m, const Platform& platform) {
    platform.check();
    if (m < 1) throw std::invalid_argument("parallelism must be >= 1");
    if (load <= 0) throw std::invalid_argument("load must be positive");
    long long passes = (m + platform.sm_count - 1) / platform.sm_count;
    Rational c = Rational(passes, 1) * load / Rational(m, 1);
    return c < platform.t_min ? platform.t_min : c;
}

int max_parallelism(const Rational& load, const Platform& platform) {
    platform.check();
    if (load <= 0) throw std::invalid_argument("load must be positive");
    BigInt m = floor_to_int(load / platform.t_min);
    if (m < 1) return 1;
    if (m > std::numeric_limits<int>::max()) return std::numeric_limits<int>::max();
    return static_cast<int>(to_int64(m));
}

}  // namespace dagsched
