#pragma once

#include <string>

#include "perfkit/modelio.hpp"
#include "perfkit/qnsolver.hpp"

// Text reports for the solver CLI: the fixed-width solred table (byte-stable,
// decimal points, 4 decimals) and load-sweep output for plotting.

namespace perfkit::report {

// Full solred report: station table, system block, asymptotic-bound block.
std::string solred_report(const qnsolver::OpenModel& model);
std::string solred_report(const qnsolver::ClosedModel& model);
std::string solred_report(const modelio::Model& model);

// Optional per-population MVA iteration table.
std::string mva_trace_table(const qnsolver::ClosedModel& model);

enum class SweepFormat { gnuplot, csv };

// One row per load value: load, R, X. Closed sweeps use integer populations.
std::string sweep_report(const modelio::Model& model, double start, double end, double step,
                         SweepFormat format);

}  // namespace perfkit::report
