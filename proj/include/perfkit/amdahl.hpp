#pragma once

#include <vector>

#include "perfkit/errors.hpp"

// Speedup algebra: Amdahl's law, its multi-improvement generalization and the
// inverse solves (fraction for a target speedup, local factor for a target
// speedup, original-time fraction from an improved-time fraction).
//
// Everything here is a pure function over value types; thread-safe.

namespace perfkit::amdahl {

// One improved resource: used during `fraction` of the original time and made
// `factor` times faster locally.
struct Improvement {
    double fraction = 0.0;  // in [0,1]
    double factor = 1.0;    // > 0
};

struct ImprovementSet {
    std::vector<Improvement> items;

    // 1 - sum of fractions; the share of time no improvement touches.
    double untouched_fraction() const;
};

// Global speedup A = 1 / ((1-f) + f/k).
double speedup(double fraction, double factor);

// Generalized law A = 1 / (f0 + sum f_i/k_i), f0 = 1 - sum f_i.
double speedup_multi(const ImprovementSet& set);

// Fraction of time that must be improved by `factor` to reach speedup `target`:
// f = k(A-1) / (A(k-1)). Infeasible when target > factor.
double fraction_for(double target, double factor);

// Local factor needed on a fraction `fraction` to reach speedup `target`:
// k = A f / (1 - A + A f). Infeasible when target >= 1/(1-f).
double factor_for(double target, double fraction);

// New execution time of a task of length `original` after the improvements.
double improved_time(double original, const ImprovementSet& set);

// A measured share of the *improved* run (f_after) maps back to the share of
// the original run the improvement covered: f = k*fa / (k*fa + 1 - fa).
double fraction_before_from_after(double fraction_after, double factor);

// Performance per cost, performance = 1/exec_time. Higher is better.
double perf_cost_ratio(double exec_time, double cost);

enum class Better { first, second, tie };

// Compares two (time, cost) options on the raw product T*C (smaller wins),
// which sidesteps rounding in the reciprocal.
Better better_perf_cost(double time_a, double cost_a, double time_b, double cost_b);

}  // namespace perfkit::amdahl
