#include "perfkit/benchcmp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace perfkit::benchcmp {

namespace {

void check_positive(const std::vector<double>& values, const char* what) {
    for (double v : values)
        if (!(v > 0.0)) throw domain_error(std::string(what) + " must be strictly positive");
}

// Two-sided Student-t quantiles for alpha=0.05 and 0.10, df 1..29; n >= 30
// falls back to the normal quantile.
constexpr double kT95[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                           2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                           2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045};
constexpr double kT90[] = {6.314, 2.920, 2.353, 2.132, 2.015, 1.943, 1.895, 1.860, 1.833, 1.812,
                           1.796, 1.782, 1.771, 1.761, 1.753, 1.746, 1.740, 1.734, 1.729, 1.725,
                           1.721, 1.717, 1.714, 1.711, 1.708, 1.706, 1.703, 1.701, 1.699};

double t_critical(double alpha, std::size_t df) {
    if (df >= 1 && df <= 29) {
        if (std::abs(alpha - 0.05) < 1e-9) return kT95[df - 1];
        if (std::abs(alpha - 0.10) < 1e-9) return kT90[df - 1];
    }
    std::ostringstream os;
    os << "no embedded t value for alpha=" << alpha << ", df=" << df
       << "; supported: alpha in {0.05, 0.10}, df 1..29 (n >= 30 uses the normal quantile)";
    throw domain_error(os.str());
}

double z_critical(double alpha) {
    if (std::abs(alpha - 0.05) < 1e-9) return 1.960;
    if (std::abs(alpha - 0.10) < 1e-9) return 1.645;
    throw domain_error("no embedded z value for this alpha; supported: 0.05, 0.10");
}

}  // namespace

std::size_t MeasurementTable::system_index(const std::string& label) const {
    auto it = std::find(systems.begin(), systems.end(), label);
    if (it == systems.end()) throw domain_error("unknown system label: " + label);
    return static_cast<std::size_t>(it - systems.begin());
}

std::vector<double> MeasurementTable::column(std::size_t system) const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& row : values) out.push_back(row.at(system));
    return out;
}

double mean(const std::vector<double>& values, MeanKind kind) {
    if (values.empty()) throw domain_error("mean of empty set");
    WeightVector uniform;
    uniform.weights.assign(values.size(), 1.0 / static_cast<double>(values.size()));
    return mean(values, kind, uniform);
}

double mean(const std::vector<double>& values, MeanKind kind, const WeightVector& w) {
    if (values.empty()) throw domain_error("mean of empty set");
    if (w.weights.size() != values.size()) throw domain_error("weight/value length mismatch");
    double wsum = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
    if (std::abs(wsum - 1.0) > 1e-9) throw domain_error("weights must sum to 1");
    for (double x : w.weights)
        if (x < 0.0) throw domain_error("weights must be nonnegative");

    switch (kind) {
        case MeanKind::arithmetic: {
            double acc = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) acc += w.weights[i] * values[i];
            return acc;
        }
        case MeanKind::harmonic: {
            check_positive(values, "harmonic mean values");
            double acc = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) acc += w.weights[i] / values[i];
            return 1.0 / acc;
        }
        case MeanKind::geometric: {
            check_positive(values, "geometric mean values");
            double acc = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) acc += w.weights[i] * std::log(values[i]);
            return std::exp(acc);
        }
    }
    throw domain_error("unknown mean kind");
}

WeightVector equal_time_weights(const std::vector<double>& times) {
    if (times.empty()) throw domain_error("no times");
    check_positive(times, "times");
    WeightVector out;
    double total = 0.0;
    for (double t : times) total += 1.0 / t;
    for (double t : times) out.weights.push_back((1.0 / t) / total);
    return out;
}

MeasurementTable normalize(const MeasurementTable& table, const std::string& reference_system,
                           RatioOrientation orientation) {
    const std::size_t ref = table.system_index(reference_system);
    MeasurementTable out = table;
    for (std::size_t p = 0; p < table.values.size(); ++p) {
        const double base = table.values[p].at(ref);
        if (!(base > 0.0)) throw domain_error("reference value must be positive");
        for (std::size_t s = 0; s < table.values[p].size(); ++s) {
            const double v = table.values[p][s];
            out.values[p][s] = orientation == RatioOrientation::time_ratio ? v / base : base / v;
        }
    }
    return out;
}

SpecIndex spec_index(const std::vector<double>& ref_times, const std::vector<double>& sys_times) {
    if (ref_times.size() != sys_times.size()) throw domain_error("ref/sys length mismatch");
    if (ref_times.empty()) throw domain_error("empty benchmark set");
    check_positive(ref_times, "reference times");
    check_positive(sys_times, "system times");
    double acc = 0.0;
    for (std::size_t i = 0; i < ref_times.size(); ++i) acc += std::log(ref_times[i] / sys_times[i]);
    SpecIndex out;
    out.value = 100.0 * std::exp(acc / static_cast<double>(ref_times.size()));
    out.rounded = std::lround(out.value);
    return out;
}

std::vector<double> paired_diffs(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw domain_error("paired series length mismatch");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

PairedDiffReport paired_confidence(const std::vector<double>& diffs, double alpha) {
    const std::size_t n = diffs.size();
    if (n < 2) throw domain_error("need at least two paired differences");
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("alpha must be in (0,1)");

    PairedDiffReport r;
    r.mean_diff = std::accumulate(diffs.begin(), diffs.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double d : diffs) ss += (d - r.mean_diff) * (d - r.mean_diff);
    r.std_dev = std::sqrt(ss / static_cast<double>(n - 1));

    r.used_t = n < 30;
    r.critical_value = r.used_t ? t_critical(alpha, n - 1) : z_critical(alpha);
    r.half_width = r.critical_value * r.std_dev / std::sqrt(static_cast<double>(n));
    r.lo = r.mean_diff - r.half_width;
    r.hi = r.mean_diff + r.half_width;
    r.significant = !(r.lo <= 0.0 && 0.0 <= r.hi);
    return r;
}

double cpi(const std::vector<std::pair<double, double>>& instruction_mix) {
    double instr = 0.0, cycles = 0.0;
    for (const auto& [count, c] : instruction_mix) {
        if (count < 0.0 || c < 0.0) throw domain_error("instruction mix entries must be nonnegative");
        instr += count;
        cycles += count * c;
    }
    if (!(instr > 0.0)) throw domain_error("no instructions in mix");
    return cycles / instr;
}

double mips(double instructions, double seconds) {
    if (!(seconds > 0.0)) throw domain_error("time must be > 0");
    return instructions / (seconds * 1e6);
}

double mflops(double flops, double seconds) {
    if (!(seconds > 0.0)) throw domain_error("time must be > 0");
    return flops / (seconds * 1e6);
}

double normalized_mflops(const std::vector<std::pair<double, double>>& op_counts, double seconds) {
    if (!(seconds > 0.0)) throw domain_error("time must be > 0");
    double ops = 0.0;
    for (const auto& [count, weight] : op_counts) ops += count * weight;
    return ops / (seconds * 1e6);
}

double exec_time(double instructions, double cpi_value, double cycle_seconds) {
    if (!(instructions > 0.0) || !(cpi_value > 0.0) || !(cycle_seconds > 0.0))
        throw domain_error("exec_time inputs must be > 0");
    return instructions * cpi_value * cycle_seconds;
}

}  // namespace perfkit::benchcmp
