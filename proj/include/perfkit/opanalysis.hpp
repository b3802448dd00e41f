#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "perfkit/errors.hpp"

// Operational laws over directly measurable quantities: utilization, forced
// flow, Little, the general and interactive response-time laws, visit-ratio
// conversions and device service-time decomposition.

namespace perfkit::opanalysis {

// Raw counts over one observation window of length T.
struct DeviceObservation {
    double window = 0.0;       // T > 0
    double arrivals = 0.0;     // A
    double completions = 0.0;  // C
    double busy = 0.0;         // B, 0 <= B <= T
};

struct OperationalMetrics {
    double arrival_rate = 0.0;             // lambda = A/T
    double throughput = 0.0;               // X = C/T
    double utilization = 0.0;              // U = B/T
    std::optional<double> service_time;    // S = B/C, absent when C = 0
};

// Routing probabilities including the exit (index 0); rows sum to 1.
struct RoutingMatrix {
    std::vector<std::vector<double>> p;

    std::size_t size() const { return p.size(); }
    void validate() const;
};

OperationalMetrics derive_metrics(const DeviceObservation& obs);

// Audit: U = X*S holds (within tol) whenever the service time is defined.
bool laws_hold(const OperationalMetrics& m, double tol = 1e-9);

// |A - C| / C: how well the flow-balance hypothesis held.
double flow_balance_error(double arrivals, double completions);

// Little's law N = X * R and its solved-for variants.
double little_n(double throughput, double response_time);
double little_r(double population, double throughput);
double little_x(double population, double response_time);

// Forced flow X_i = X0 * V_i and its inverse.
double forced_flow(double system_throughput, double visit_ratio);
double system_throughput(double device_throughput, double visit_ratio);

// R = sum V_i * R_i.
double general_response_time(const std::vector<double>& visits,
                             const std::vector<double>& device_response);

struct InteractiveResponse {
    double response_time = 0.0;
    bool feasible = true;  // false when N/X < Z (reported, not clamped)
};

// R = N/X - Z.
InteractiveResponse interactive_response_time(double population, double throughput,
                                              double think_time);

// Solves V_j = sum_i V_i p_ij with V_0 = 1. Returns visits for devices 1..K.
std::vector<double> visit_ratios(const RoutingMatrix& routing);

// Central-server inverse: device 1 is the hub, the rest are peripherals fed
// from it. p_1j = V_j / V_1, p_10 = 1 / V_1.
RoutingMatrix routing_from_visits(const std::vector<double>& visits);

enum class Placement { random, sequential };

// Seek + latency + transfer per block; sequential placement pays positioning
// only once. Transfer rate is SI bytes/s.
double disk_service_time(double seek, double latency, double block_bytes, double transfer_rate,
                         std::size_t blocks, Placement placement);

// Controller always pays; the physical device only on a miss.
double cached_service_time(double controller, double hit_probability, double miss_time);

// Dense Gaussian elimination with partial pivoting; pivots below 1e-12 are
// singular. Shared by visit_ratios and the CBMG solver.
std::vector<double> solve_linear_system(std::vector<std::vector<double>> a, std::vector<double> b);

}  // namespace perfkit::opanalysis
