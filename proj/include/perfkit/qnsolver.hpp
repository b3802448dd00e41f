#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "perfkit/errors.hpp"

// Exact solvers for single-class product-form queueing networks: the open
// network algorithm, mean value analysis for closed networks, asymptotic and
// balanced bounds, bottleneck analysis, what-if edits, and the Ethernet
// transfer/collision sub-model.

namespace perfkit::qnsolver {

enum class StationKind { queueing, delay };

struct Station {
    std::string name;
    StationKind kind = StationKind::queueing;
    double visits = 1.0;   // V_i >= 0
    double service = 0.0;  // S_i >= 0

    double demand() const { return visits * service; }
};

struct OpenModel {
    double arrival_rate = 0.0;  // lambda >= 0
    std::vector<Station> stations;
};

struct ClosedModel {
    long population = 0;      // N >= 0 (integer)
    double think_time = 0.0;  // Z >= 0; 0 means batch
    std::vector<Station> stations;
};

struct StationResult {
    std::string name;
    double visits = 0.0;
    double service = 0.0;
    double demand = 0.0;
    double throughput = 0.0;     // X_i
    double utilization = 0.0;    // U_i
    double response_time = 0.0;  // R_i (per visit)
    double population = 0.0;     // N_i
};

struct MvaTraceRow {
    long population = 0;
    std::vector<double> station_response;    // R_i(n)
    double response_time = 0.0;              // R(n)
    double throughput = 0.0;                 // X(n)
    std::vector<double> station_population;  // N_i(n)
};

struct SolvedNetwork {
    std::vector<StationResult> stations;
    double throughput = 0.0;       // X0
    double response_time = 0.0;    // R
    double population = 0.0;       // N (jobs in the central subsystem for closed)
    double min_response = 0.0;     // D = sum of demands
    double max_throughput = 0.0;   // 1 / D_b
    std::size_t bottleneck = 0;    // index into stations
    double saturation_point = 0.0; // N* (real-valued crossing), closed only
    long saturation_point_int = 0; // ceil(N*), closed only
    double think_population = 0.0; // N_think = X0 * Z, closed only
    bool response_defined = true;  // false for closed N = 0
    std::vector<MvaTraceRow> trace;
};

struct Bottleneck {
    std::size_t index = 0;              // first max-demand station
    double demand = 0.0;                // D_b
    std::vector<std::size_t> tie_set;   // all stations at max demand
};

// Piecewise asymptotic bounds for a closed interactive model.
struct AsymptoticBounds {
    double total_demand = 0.0;      // D
    double bottleneck_demand = 0.0; // D_b
    double think_time = 0.0;        // Z
    double saturation_point = 0.0;  // (D+Z)/D_b
    long saturation_point_int = 0;  // ceil

    double response_opt(double n) const;    // max{D, D_b*n - Z}
    double throughput_opt(double n) const;  // min{n/(D+Z), 1/D_b}
};

struct OpenBounds {
    double min_response = 0.0;    // sum D_i
    double max_arrival_rate = 0.0;  // 1/D_b
};

// Balanced-system bounds (two-sided) as functions of the population.
struct BalancedBounds {
    double total_demand = 0.0;
    double bottleneck_demand = 0.0;
    double mean_demand = 0.0;  // D / K
    double think_time = 0.0;

    double response_lower(double n) const;
    double response_upper(double n) const;
    double throughput_lower(double n) const;
    double throughput_upper(double n) const;
};

SolvedNetwork solve_open(const OpenModel& model);

// Mean value analysis; trace retention is opt-in.
SolvedNetwork solve_mva(const ClosedModel& model, bool keep_trace = false);

Bottleneck bottleneck(const std::vector<Station>& stations,
                      bool include_delay_stations = true);

AsymptoticBounds asymptotic_bounds(const ClosedModel& model);
OpenBounds open_bounds(const std::vector<Station>& stations);
BalancedBounds balanced_bounds(const ClosedModel& model);

// What-if edits build a new model; the original stays untouched.
struct ScaleService {
    std::string station;
    double factor = 1.0;  // local speedup k: service /= k
};
struct SetVisits {
    std::string station;
    double visits = 0.0;
};
struct SplitStation {
    std::string station;    // replaced by `ways` copies, visits split evenly,
    std::size_t ways = 2;   // each `speedup` times faster
    double speedup = 1.0;
};
struct AddStation {
    Station station;
};
using Edit = std::variant<ScaleService, SetVisits, SplitStation, AddStation>;

std::vector<Station> apply_edits(const std::vector<Station>& stations,
                                 const std::vector<Edit>& edits);
OpenModel what_if(const OpenModel& model, const std::vector<Edit>& edits);
ClosedModel what_if(const ClosedModel& model, const std::vector<Edit>& edits);

// Ethernet transfer cost of one request/response exchange. The response is
// fragmented into ceil(bytes/mtu) frames; per-frame overhead is charged only
// when fragmentation happens, TCP+IP overhead once per direction, and the
// request always travels as a single framed packet.
struct EthernetDemand {
    std::size_t response_frames = 0;
    double total_bytes = 0.0;
    double demand_seconds = 0.0;
};

EthernetDemand ethernet_transfer_demand(double request_bytes, double response_bytes,
                                        double bandwidth_bps, double mtu = 1500.0,
                                        double frame_overhead = 18.0, double tcp_overhead = 20.0,
                                        double ip_overhead = 20.0);

// CSMA/CD collision penalty: frames * slot * C(k), C(k) = (1-A(k))/A(k),
// A(k) = (1 - 1/k)^(k-1). k = 1 costs nothing.
double csma_collision_overhead(double frames, std::size_t contending, double slot_seconds);

}  // namespace perfkit::qnsolver
