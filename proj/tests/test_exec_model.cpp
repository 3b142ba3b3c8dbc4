#include "dagsched/exec_model.hpp"

#include <doctest.h>

using namespace dagsched;

namespace {
const Platform v100{80, Rational(1)};
}

TEST_CASE("execution time examples") {
    CHECK(exec_time(Rational(8), 1, v100) == Rational(8));
    CHECK(exec_time(Rational(8), 4, v100) == Rational(2));
    // oversubscription: two passes over an 8-SM device
    CHECK(exec_time(Rational(8), 16, Platform{8, Rational(1)}) == Rational(1));
    CHECK(exec_time(Rational(160), 160, v100) == Rational(2));
}

TEST_CASE("maximum useful parallelism") {
    CHECK(max_parallelism(Rational(3), v100) == 3);
    CHECK(max_parallelism(Rational(1), v100) == 1);
    CHECK(max_parallelism(Rational(15, 2), v100) == 7);
    // at m = 7 the kernel still shortens; m = 8 would clip at the floor
    CHECK(exec_time(Rational(15, 2), 7, v100) == Rational(15, 14));
    CHECK(exec_time(Rational(15, 2), 8, v100) == Rational(1));
}

TEST_CASE("execution time is monotone and floored") {
    for (int M : {4, 8, 30}) {
        Platform p{M, Rational(1)};
        for (int load = 1; load <= 40; ++load) {
            Rational prev = exec_time(Rational(load), 1, p);
            CHECK(prev == Rational(load));
            for (int m = 2; m <= M; ++m) {
                Rational cur = exec_time(Rational(load), m, p);
                CHECK(cur <= prev);
                CHECK(cur >= p.t_min);
                // work conservation: m * C >= load
                CHECK(Rational(m, 1) * cur >= Rational(load));
                // no clipping below the useful-parallelism limit
                if (m <= max_parallelism(Rational(load), p)) {
                    CHECK(cur == Rational(load) / Rational(m, 1));
                }
                prev = cur;
            }
        }
    }
}

TEST_CASE("fractional time unit") {
    Platform p{16, Rational(1, 2)};
    CHECK(max_parallelism(Rational(3), p) == 6);
    CHECK(exec_time(Rational(3), 6, p) == Rational(1, 2));
    CHECK(exec_time(Rational(3), 12, p) == Rational(1, 2));
}

TEST_CASE("invalid arguments are rejected") {
    CHECK_THROWS(exec_time(Rational(1), 0, v100));
    CHECK_THROWS(exec_time(Rational(0), 1, v100));
    CHECK_THROWS(max_parallelism(Rational(1), Platform{0, Rational(1)}));
}
