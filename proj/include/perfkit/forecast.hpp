#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "perfkit/errors.hpp"

// Capacity-planning forecasting: least-squares regression, moving averages
// with MSE window selection, exponential smoothing (fixed weight, Tustin,
// growing variable weight), compound growth and NFU demand projection.

namespace perfkit::forecast {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct TimeSeries {
    std::vector<Point> points;  // strictly increasing x

    void validate() const;
    static TimeSeries from_values(const std::vector<double>& ys);  // x = 1, 2, ...
};

struct LinearFit {
    double intercept = 0.0;  // a
    double slope = 0.0;      // b
    double mse = 0.0;        // residual mean squared error
};

LinearFit linear_regression(const TimeSeries& series);
double predict(const LinearFit& fit, double x);

// Next-step forecast: mean of the last n observations.
double moving_average(const TimeSeries& series, std::size_t n);
// MSE of the n-window forecasts over the series (warm-up rows skipped).
double mse_for_window(const TimeSeries& series, std::size_t n);
// Window in [lo, hi] minimizing the MSE (smallest wins ties).
std::size_t best_window(const TimeSeries& series, std::size_t lo, std::size_t hi);

// Smoothing modes. The trace value at row t is the smoothed estimate after
// seeing y_t; row 1 is seeded with y_1.
struct FixedWeight {
    double alpha = 0.5;  // in (0,1)
};
struct TustinWeight {
    double alpha = 0.5;  // f' = (1-a) f + a (y_t + y_{t-1})/2
};
// alpha grows with the observation index: (m*n + c - 1)/(m*n + c + 1) where
// the offset c shifts the start; start_weight pins alpha(1).
struct VariableWeight {
    double m = 2.0;                      // >= 2
    std::optional<double> start_weight;  // in (0,1); absent = no offset (c = 0)
};
using SmoothingConfig = std::variant<FixedWeight, TustinWeight, VariableWeight>;

struct SmoothingResult {
    std::vector<double> trace;  // same length as the series
    double forecast = 0.0;      // final trace value
};

// `seed` overrides the default initialization f_1 = y_1.
SmoothingResult exp_smoothing(const TimeSeries& series, const SmoothingConfig& config,
                              std::optional<double> seed = {});

// The weight applied by VariableWeight at observation n (n >= 1).
double variable_weight(std::size_t n, double m, std::optional<double> start_weight = {});

// base * (1 + rate)^periods.
double compound_growth(double base, double rate, double periods);

// Percent shares of a set of magnitudes.
std::vector<double> mix_shares(const std::vector<double>& values);

// NFU projection: demand scaled by the business-volume ratio and compounded
// per-transaction resource and transaction-per-NFU growth.
double nfu_project(double base_demand, double nfu_base, double nfu_target,
                   double resource_growth_rate, double txn_per_nfu_growth_rate, double years);

}  // namespace perfkit::forecast
