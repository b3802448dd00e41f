#include <doctest.h>

#include <cmath>
#include <random>

#include "perfkit/amdahl.hpp"

using namespace perfkit;
using namespace perfkit::amdahl;

namespace {

// Independent oracle: solve speedup(f, k) = target for k by bisection.
double bisect_factor(double target, double fraction) {
    double lo = 1.0, hi = 1e12;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (speedup(fraction, mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Timeline oracle: build the improved run from (f, k), measure the share the
// improved segment occupies afterwards.
double after_share(double f_before, double k) {
    const double untouched = 1.0 - f_before;
    const double improved = f_before / k;
    return improved / (untouched + improved);
}

}  // namespace

TEST_SUITE("amdahl") {

TEST_CASE("speedup golden values") {
    CHECK(speedup(0.0, 17.0) == doctest::Approx(1.0));
    CHECK(speedup(0.83, 2.5) == doctest::Approx(1.99).epsilon(0.01));  // 83% share, 2.5x part
    CHECK(speedup(0.95, 2.0) == doctest::Approx(1.91).epsilon(0.01));
    CHECK(speedup(1.0, 4.0) == doctest::Approx(4.0));
}

TEST_CASE("speedup domain errors") {
    CHECK_THROWS_AS(speedup(-0.1, 2.0), domain_error);
    CHECK_THROWS_AS(speedup(1.1, 2.0), domain_error);
    CHECK_THROWS_AS(speedup(0.5, 0.0), domain_error);
    CHECK_THROWS_AS(speedup(0.5, -1.0), domain_error);
}

TEST_CASE("speedup_multi") {
    CHECK(speedup_multi({}) == doctest::Approx(1.0));
    // Three instruction classes: 28%@1.15, 40%@1.45, untouched 32%.
    ImprovementSet mix{{{0.28, 1.15}, {0.40, 1.45}, {0.32, 1.0}}};
    CHECK(speedup_multi(mix) == doctest::Approx(1.19).epsilon(0.01));
    // Direct closed-form evaluation (independent calculator):
    // 1/(0.3 + 0.6/1e12 + 0.1/3) = 1/(0.33333...) = 3.0
    ImprovementSet derived{{{0.6, 1e12}, {0.1, 3.0}}};
    CHECK(speedup_multi(derived) == doctest::Approx(1.0 / (0.3 + 0.6 / 1e12 + 0.1 / 3.0)));
    CHECK_THROWS_AS(speedup_multi({{{0.7, 2.0}, {0.6, 2.0}}}), domain_error);
}

TEST_CASE("single-item multi equals plain speedup") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uf(0.0, 1.0), uk(0.1, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double f = uf(rng), k = uk(rng);
        CHECK(speedup_multi({{{f, k}}}) == doctest::Approx(speedup(f, k)).epsilon(1e-12));
    }
}

TEST_CASE("fraction_for golden values") {
    CHECK(fraction_for(2.0, 5.0) == doctest::Approx(0.625));  // 2x goal on a 5x disk
    CHECK(fraction_for(2.25, 15.0) == doctest::Approx(0.60).epsilon(0.01));  // cache hit share
    CHECK(fraction_for(3.0, 3.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(fraction_for(6.0, 5.0), infeasible_error);  // goal above the local factor
}

TEST_CASE("factor_for golden values") {
    // Cut a 124 s run to 95 s by speeding up a 32% share.
    CHECK(factor_for(124.0 / 95.0, 0.32) == doctest::Approx(3.72).epsilon(0.006));
    CHECK(factor_for(1.0, 0.4) == doctest::Approx(1.0));
    CHECK(factor_for(1.5, 0.8) == doctest::Approx(bisect_factor(1.5, 0.8)).epsilon(1e-6));
    CHECK_THROWS_AS(factor_for(1.26, 0.2), infeasible_error);  // above 1/(1-f) = 1.25
}

TEST_CASE("inverse round-trips at 1e-9 relative") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uf(0.01, 0.99), uk(1.01, 1000.0);
    for (int i = 0; i < 10000; ++i) {
        const double f = uf(rng), k = uk(rng);
        const double a = speedup(f, k);
        CHECK(fraction_for(a, k) == doctest::Approx(f).epsilon(1e-9));
        CHECK(factor_for(a, f) == doctest::Approx(k).epsilon(1e-9));
        CHECK(speedup(fraction_for(a, k), k) == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("monotonicity in f and k") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uf(0.01, 0.99), uk(1.0, 100.0);
    for (int i = 0; i < 2000; ++i) {
        const double f = uf(rng), k = uk(rng);
        CHECK(speedup(std::min(1.0, f + 0.01), k) >= speedup(f, k) - 1e-12);
        CHECK(speedup(f, k + 1.0) >= speedup(f, k) - 1e-12);
        if (f < 1.0) CHECK(speedup(f, k) < 1.0 / (1.0 - f));
    }
}

TEST_CASE("improved_time golden values") {
    CHECK(improved_time(12.0, {{{0.6, 2.0}}}) == doctest::Approx(8.4));  // fpu halves 60%
    CHECK(improved_time(120.0, {{{0.7, 16.0}}}) ==
          doctest::Approx(41.24).epsilon(0.0013));  // 70% across 16 cpus
    CHECK(improved_time(1.0, {}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(improved_time(0.0, {}), domain_error);
}

TEST_CASE("fraction_before_from_after") {
    CHECK(fraction_before_from_after(0.5, 10.0) == doctest::Approx(0.909).epsilon(0.0015));
    CHECK(fraction_before_from_after(0.0, 5.0) == doctest::Approx(0.0));
    // Timeline oracle: the mapping must invert the measured post-improvement share.
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uf(0.0, 1.0), uk(0.2, 64.0);
    for (int i = 0; i < 2000; ++i) {
        const double f = uf(rng), k = uk(rng);
        const double fa = after_share(f, k);
        CHECK(fraction_before_from_after(fa, k) == doctest::Approx(f).epsilon(1e-9));
    }
    CHECK(fraction_before_from_after(0.75, 16.0) ==
          doctest::Approx([] {
              // invert after_share(f, 16) = 0.75 numerically
              double lo = 0.0, hi = 1.0;
              for (int i = 0; i < 100; ++i) {
                  const double mid = 0.5 * (lo + hi);
                  (after_share(mid, 16.0) < 0.75 ? lo : hi) = mid;
              }
              return 0.5 * (lo + hi);
          }()).epsilon(1e-9));
}

TEST_CASE("perf/cost ratio") {
    CHECK(perf_cost_ratio(36.0, 625.0) == doctest::Approx(4.44e-5).epsilon(0.01));
    CHECK(better_perf_cost(35.0, 710.0, 87.0, 650.0) == Better::first);  // faster beats cheaper here
    CHECK(better_perf_cost(10.0, 5.0, 10.0, 5.0) == Better::tie);
    CHECK_THROWS_AS(perf_cost_ratio(-1.0, 10.0), domain_error);
}

}  // TEST_SUITE
