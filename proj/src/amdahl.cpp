#include "perfkit/amdahl.hpp"

#include <cmath>

namespace perfkit::amdahl {

namespace {

void check_fraction(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw domain_error("fraction must be in [0,1]");
}

void check_factor(double k) {
    if (!(k > 0.0)) throw domain_error("factor must be > 0");
}

}  // namespace

double ImprovementSet::untouched_fraction() const {
    double sum = 0.0;
    for (const auto& it : items) sum += it.fraction;
    return 1.0 - sum;
}

double speedup(double fraction, double factor) {
    check_fraction(fraction);
    check_factor(factor);
    return 1.0 / ((1.0 - fraction) + fraction / factor);
}

double speedup_multi(const ImprovementSet& set) {
    double denom = 0.0;
    double fsum = 0.0;
    for (const auto& it : set.items) {
        check_fraction(it.fraction);
        check_factor(it.factor);
        fsum += it.fraction;
        denom += it.fraction / it.factor;
    }
    if (fsum > 1.0 + 1e-12) throw domain_error("fractions sum above 1");
    denom += 1.0 - fsum;  // f0
    return 1.0 / denom;
}

double fraction_for(double target, double factor) {
    check_factor(factor);
    if (target < 1.0) throw domain_error("target speedup must be >= 1");
    if (target > factor)
        throw infeasible_error("target speedup exceeds the local factor; unreachable for any fraction");
    if (factor == 1.0) return target == 1.0 ? 1.0 : 0.0;
    return factor * (target - 1.0) / (target * (factor - 1.0));
}

double factor_for(double target, double fraction) {
    check_fraction(fraction);
    if (target < 1.0) throw domain_error("target speedup must be >= 1");
    if (target == 1.0) return 1.0;
    // The asymptote 1/(1-f) caps any speedup confined to that fraction.
    if (fraction < 1.0 && target >= 1.0 / (1.0 - fraction))
        throw infeasible_error("target speedup at or above the 1/(1-f) asymptote");
    return target * fraction / (1.0 - target + target * fraction);
}

double improved_time(double original, const ImprovementSet& set) {
    if (!(original > 0.0)) throw domain_error("time must be > 0");
    return original / speedup_multi(set);
}

double fraction_before_from_after(double fraction_after, double factor) {
    check_fraction(fraction_after);
    check_factor(factor);
    // The improved run splits into (1-f)T and (f/k)T; the latter is the
    // observed share fa, so (f/k) / ((1-f) + f/k) = fa.
    return factor * fraction_after / (factor * fraction_after + 1.0 - fraction_after);
}

double perf_cost_ratio(double exec_time, double cost) {
    if (!(exec_time > 0.0) || !(cost > 0.0)) throw domain_error("time and cost must be > 0");
    return 1.0 / (exec_time * cost);
}

Better better_perf_cost(double time_a, double cost_a, double time_b, double cost_b) {
    if (!(time_a > 0.0) || !(cost_a > 0.0) || !(time_b > 0.0) || !(cost_b > 0.0))
        throw domain_error("time and cost must be > 0");
    const double pa = time_a * cost_a;
    const double pb = time_b * cost_b;
    if (pa < pb) return Better::first;
    if (pb < pa) return Better::second;
    return Better::tie;
}

}  // namespace perfkit::amdahl
