#include "perfkit/forecast.hpp"

#include <cmath>
#include <limits>

namespace perfkit::forecast {

void TimeSeries::validate() const {
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i - 1].x < points[i].x))
            throw domain_error("series indices must be strictly increasing");
}

TimeSeries TimeSeries::from_values(const std::vector<double>& ys) {
    TimeSeries s;
    s.points.reserve(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i)
        s.points.push_back({static_cast<double>(i + 1), ys[i]});
    return s;
}

LinearFit linear_regression(const TimeSeries& series) {
    series.validate();
    const std::size_t n = series.points.size();
    if (n < 2) throw domain_error("regression needs at least two points");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : series.points) {
        sx += p.x;
        sy += p.y;
        sxx += p.x * p.x;
        sxy += p.x * p.y;
    }
    const double xb = sx / static_cast<double>(n);
    const double yb = sy / static_cast<double>(n);
    const double denom = sxx - static_cast<double>(n) * xb * xb;
    if (std::abs(denom) < 1e-12) throw domain_error("all x values equal; slope undefined");

    LinearFit fit;
    fit.slope = (sxy - static_cast<double>(n) * xb * yb) / denom;
    fit.intercept = yb - fit.slope * xb;
    double ss = 0.0;
    for (const auto& p : series.points) ss += std::pow(p.y - predict(fit, p.x), 2);
    fit.mse = ss / static_cast<double>(n);
    return fit;
}

double predict(const LinearFit& fit, double x) { return fit.intercept + fit.slope * x; }

double moving_average(const TimeSeries& series, std::size_t n) {
    if (n == 0 || n > series.points.size()) throw domain_error("window outside the series");
    double acc = 0.0;
    for (std::size_t i = series.points.size() - n; i < series.points.size(); ++i)
        acc += series.points[i].y;
    return acc / static_cast<double>(n);
}

double mse_for_window(const TimeSeries& series, std::size_t n) {
    if (n == 0 || n >= series.points.size())
        throw domain_error("window must leave at least one forecastable row");
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t t = n; t < series.points.size(); ++t) {
        double window = 0.0;
        for (std::size_t i = t - n; i < t; ++i) window += series.points[i].y;
        const double f = window / static_cast<double>(n);
        acc += std::pow(series.points[t].y - f, 2);
        ++count;
    }
    return acc / static_cast<double>(count);
}

std::size_t best_window(const TimeSeries& series, std::size_t lo, std::size_t hi) {
    if (lo == 0 || lo > hi) throw domain_error("invalid window range");
    std::size_t best = lo;
    double best_mse = std::numeric_limits<double>::infinity();
    for (std::size_t n = lo; n <= hi && n < series.points.size(); ++n) {
        const double mse = mse_for_window(series, n);
        if (mse < best_mse) {
            best_mse = mse;
            best = n;
        }
    }
    return best;
}

double variable_weight(std::size_t n, double m, std::optional<double> start_weight) {
    if (n == 0) throw domain_error("observation order starts at 1");
    if (!(m >= 2.0)) throw domain_error("multiplier must be >= 2");
    double c = 0.0;
    if (start_weight) {
        if (!(*start_weight > 0.0 && *start_weight < 1.0))
            throw domain_error("start weight must be in (0,1)");
        // Solve (m + c - 1)/(m + c + 1) = w0 for the offset.
        c = (1.0 + *start_weight) / (1.0 - *start_weight) - m;
    }
    const double x = m * static_cast<double>(n) + c;
    return (x - 1.0) / (x + 1.0);
}

SmoothingResult exp_smoothing(const TimeSeries& series, const SmoothingConfig& config,
                              std::optional<double> seed) {
    series.validate();
    if (series.points.empty()) throw domain_error("empty series");

    SmoothingResult out;
    double f = seed.value_or(series.points.front().y);  // default f_1 = y_1
    out.trace.push_back(f);

    for (std::size_t t = 1; t < series.points.size(); ++t) {
        const double y = series.points[t].y;
        if (const auto* fixed = std::get_if<FixedWeight>(&config)) {
            if (!(fixed->alpha > 0.0 && fixed->alpha < 1.0))
                throw domain_error("alpha must be in (0,1)");
            f = f + fixed->alpha * (y - f);
        } else if (const auto* tustin = std::get_if<TustinWeight>(&config)) {
            if (!(tustin->alpha > 0.0 && tustin->alpha < 1.0))
                throw domain_error("alpha must be in (0,1)");
            const double prev_y = series.points[t - 1].y;
            f = (1.0 - tustin->alpha) * f + tustin->alpha * (y + prev_y) / 2.0;
        } else if (const auto* var = std::get_if<VariableWeight>(&config)) {
            const double alpha = variable_weight(t + 1, var->m, var->start_weight);
            f = (1.0 - alpha) * f + alpha * y;
        }
        out.trace.push_back(f);
    }
    out.forecast = out.trace.back();
    return out;
}

double compound_growth(double base, double rate, double periods) {
    if (rate < -1.0) throw domain_error("growth rate below -100%");
    return base * std::pow(1.0 + rate, periods);
}

std::vector<double> mix_shares(const std::vector<double>& values) {
    double total = 0.0;
    for (double v : values) {
        if (v < 0.0) throw domain_error("negative magnitude");
        total += v;
    }
    if (!(total > 0.0)) throw domain_error("nothing to share");
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(100.0 * v / total);
    return out;
}

double nfu_project(double base_demand, double nfu_base, double nfu_target,
                   double resource_growth_rate, double txn_per_nfu_growth_rate, double years) {
    if (!(nfu_base > 0.0)) throw domain_error("NFU base must be > 0");
    if (nfu_target < 0.0) throw domain_error("negative NFU target");
    if (resource_growth_rate < -1.0 || txn_per_nfu_growth_rate < -1.0)
        throw domain_error("growth rate below -100%");
    return base_demand * (nfu_target / nfu_base) * std::pow(1.0 + resource_growth_rate, years) *
           std::pow(1.0 + txn_per_nfu_growth_rate, years);
}

}  // namespace perfkit::forecast
