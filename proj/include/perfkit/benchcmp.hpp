#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "perfkit/errors.hpp"

// Benchmark comparison statistics: means, normalization against a reference
// system, SPEC-style geometric indices, paired confidence intervals and the
// classic processor-rate metrics (CPI, MIPS, MFLOPS).

namespace perfkit::benchcmp {

enum class MeanKind { arithmetic, harmonic, geometric };

struct WeightVector {
    std::vector<double> weights;  // nonnegative, sum to 1 within 1e-9
};

// programs x systems matrix of positive measurements.
struct MeasurementTable {
    std::vector<std::string> programs;
    std::vector<std::string> systems;
    std::vector<std::vector<double>> values;  // values[program][system]

    std::size_t system_index(const std::string& label) const;
    std::vector<double> column(std::size_t system) const;
};

// Ratios are times (value/ref, lower is better) or SPEC-style rates (ref/value).
enum class RatioOrientation { time_ratio, rate_ratio };

struct PairedDiffReport {
    double mean_diff = 0.0;
    double std_dev = 0.0;
    double half_width = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool significant = false;     // true iff 0 outside [lo, hi]
    double critical_value = 0.0;  // t or z quantile used
    bool used_t = true;           // Student t for n < 30, normal otherwise
};

struct SpecIndex {
    double value = 0.0;  // full precision
    long rounded = 0;    // integer as published
};

double mean(const std::vector<double>& values, MeanKind kind);
double mean(const std::vector<double>& values, MeanKind kind, const WeightVector& weights);

// Weights inversely proportional to time so every program gets the same share
// of the total run: w_i = (1/T_i) / sum(1/T_j).
WeightVector equal_time_weights(const std::vector<double>& times);

MeasurementTable normalize(const MeasurementTable& table, const std::string& reference_system,
                           RatioOrientation orientation = RatioOrientation::time_ratio);

// Geometric mean of (ref/sys) x 100.
SpecIndex spec_index(const std::vector<double>& ref_times, const std::vector<double>& sys_times);

// Confidence interval for the mean of paired differences; embedded Student-t
// table for the supported alpha/df pairs, normal quantile for n >= 30.
PairedDiffReport paired_confidence(const std::vector<double>& diffs, double alpha);

// Convenience: per-program differences a - b.
std::vector<double> paired_diffs(const std::vector<double>& a, const std::vector<double>& b);

// Processor-rate metrics.
double cpi(const std::vector<std::pair<double, double>>& instruction_mix);  // (count, cycles)
double mips(double instructions, double seconds);
double mflops(double flops, double seconds);
// op_counts paired with per-op normalized weights (ADD=1, SQRT=3, ...).
double normalized_mflops(const std::vector<std::pair<double, double>>& op_counts, double seconds);
double exec_time(double instructions, double cpi_value, double cycle_seconds);

}  // namespace perfkit::benchcmp
