#include "perfkit/qnsolver.hpp"

#include <algorithm>
#include <cmath>

namespace perfkit::qnsolver {

namespace {

void check_stations(const std::vector<Station>& stations) {
    if (stations.empty()) throw domain_error("model has no stations");
    for (const auto& s : stations) {
        if (s.visits < 0.0) throw domain_error("negative visit ratio: " + s.name);
        if (s.service < 0.0) throw domain_error("negative service time: " + s.name);
        if (!std::isfinite(s.demand())) throw domain_error("non-finite demand: " + s.name);
    }
}

std::size_t find_station(const std::vector<Station>& stations, const std::string& name) {
    for (std::size_t i = 0; i < stations.size(); ++i)
        if (stations[i].name == name) return i;
    throw domain_error("unknown station: " + name);
}

// Saturation and throughput caps come from queueing stations only; an
// infinite-server station has no utilization ceiling. Returns demand 0 when
// the model is all-delay.
Bottleneck saturable_bottleneck(const std::vector<Station>& stations) {
    bool any_queueing = false;
    for (const auto& s : stations) any_queueing = any_queueing || s.kind == StationKind::queueing;
    if (!any_queueing) return Bottleneck{};
    return bottleneck(stations, false);
}

}  // namespace

Bottleneck bottleneck(const std::vector<Station>& stations, bool include_delay_stations) {
    check_stations(stations);
    Bottleneck b;
    bool found = false;
    for (std::size_t i = 0; i < stations.size(); ++i) {
        if (!include_delay_stations && stations[i].kind == StationKind::delay) continue;
        const double d = stations[i].demand();
        if (!found || d > b.demand + 1e-12) {
            b.index = i;
            b.demand = d;
            b.tie_set.assign(1, i);
            found = true;
        } else if (std::abs(d - b.demand) <= 1e-12) {
            b.tie_set.push_back(i);
        }
    }
    if (!found) throw domain_error("no bottleneck candidates");
    return b;
}

SolvedNetwork solve_open(const OpenModel& model) {
    check_stations(model.stations);
    if (model.arrival_rate < 0.0) throw domain_error("negative arrival rate");

    const auto bn = saturable_bottleneck(model.stations);
    if (bn.demand > 0.0 && model.arrival_rate * bn.demand >= 1.0)
        throw saturation_error("arrival rate saturates station '" + model.stations[bn.index].name +
                                   "' (max sustainable rate " + std::to_string(1.0 / bn.demand) + ")",
                               bn.index, 1.0 / bn.demand);

    SolvedNetwork out;
    out.bottleneck = bn.index;
    out.max_throughput = bn.demand > 0.0 ? 1.0 / bn.demand : 0.0;
    out.throughput = model.arrival_rate;

    for (const auto& s : model.stations) {
        StationResult r;
        r.name = s.name;
        r.visits = s.visits;
        r.service = s.service;
        r.demand = s.demand();
        r.utilization = model.arrival_rate * r.demand;
        r.throughput = model.arrival_rate * s.visits;
        r.response_time =
            s.kind == StationKind::queueing ? s.service / (1.0 - r.utilization) : s.service;
        r.population = r.throughput * r.response_time;
        out.min_response += r.demand;
        out.response_time += s.visits * r.response_time;
        out.population += r.population;
        out.stations.push_back(std::move(r));
    }
    return out;
}

SolvedNetwork solve_mva(const ClosedModel& model, bool keep_trace) {
    check_stations(model.stations);
    if (model.population < 0) throw domain_error("negative population");
    if (model.think_time < 0.0) throw domain_error("negative think time");

    const std::size_t k = model.stations.size();
    const auto bn = saturable_bottleneck(model.stations);

    SolvedNetwork out;
    out.bottleneck = bn.index;
    out.max_throughput = bn.demand > 0.0 ? 1.0 / bn.demand : 0.0;
    for (const auto& s : model.stations) out.min_response += s.demand();
    if (bn.demand > 0.0) {
        out.saturation_point = (out.min_response + model.think_time) / bn.demand;
        out.saturation_point_int = static_cast<long>(std::ceil(out.saturation_point - 1e-12));
    }

    std::vector<double> n_i(k, 0.0);
    std::vector<double> r_i(k, 0.0);
    double response = 0.0;
    double throughput = 0.0;

    for (long n = 1; n <= model.population; ++n) {
        response = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const auto& s = model.stations[i];
            r_i[i] = s.kind == StationKind::queueing ? (n_i[i] + 1.0) * s.service : s.service;
            response += s.visits * r_i[i];
        }
        throughput = static_cast<double>(n) / (model.think_time + response);
        for (std::size_t i = 0; i < k; ++i)
            n_i[i] = throughput * model.stations[i].visits * r_i[i];
        if (keep_trace)
            out.trace.push_back({n, r_i, response, throughput, n_i});
    }

    out.response_defined = model.population > 0;
    out.response_time = response;
    out.throughput = throughput;
    out.think_population = throughput * model.think_time;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& s = model.stations[i];
        StationResult r;
        r.name = s.name;
        r.visits = s.visits;
        r.service = s.service;
        r.demand = s.demand();
        r.throughput = throughput * s.visits;
        r.utilization = throughput * r.demand;
        r.response_time = r_i[i];
        r.population = n_i[i];
        out.population += r.population;
        out.stations.push_back(std::move(r));
    }
    return out;
}

double AsymptoticBounds::response_opt(double n) const {
    return std::max(total_demand, bottleneck_demand * n - think_time);
}

double AsymptoticBounds::throughput_opt(double n) const {
    if (bottleneck_demand <= 0.0) return n / (total_demand + think_time);
    return std::min(n / (total_demand + think_time), 1.0 / bottleneck_demand);
}

AsymptoticBounds asymptotic_bounds(const ClosedModel& model) {
    check_stations(model.stations);
    const auto bn = saturable_bottleneck(model.stations);
    AsymptoticBounds b;
    b.bottleneck_demand = bn.demand;
    b.think_time = model.think_time;
    for (const auto& s : model.stations) b.total_demand += s.demand();
    if (bn.demand > 0.0) {
        b.saturation_point = (b.total_demand + b.think_time) / bn.demand;
        b.saturation_point_int = static_cast<long>(std::ceil(b.saturation_point - 1e-12));
    }
    return b;
}

OpenBounds open_bounds(const std::vector<Station>& stations) {
    check_stations(stations);
    const auto bn = saturable_bottleneck(stations);
    OpenBounds b;
    for (const auto& s : stations) b.min_response += s.demand();
    b.max_arrival_rate = bn.demand > 0.0 ? 1.0 / bn.demand : 0.0;
    return b;
}

double BalancedBounds::response_lower(double n) const {
    const double balanced = total_demand + (n - 1.0) * mean_demand * total_demand /
                                               (total_demand + think_time);
    return std::max(n * bottleneck_demand - think_time, balanced);
}

double BalancedBounds::response_upper(double n) const {
    if (n <= 1.0) return total_demand;
    const double crowd = (n - 1.0) * total_demand;
    return total_demand + (n - 1.0) * bottleneck_demand * crowd / (crowd + think_time);
}

double BalancedBounds::throughput_lower(double n) const {
    return n / (think_time + total_demand + (n - 1.0) * bottleneck_demand);
}

double BalancedBounds::throughput_upper(double n) const {
    const double balanced =
        n / (think_time + total_demand +
             (n - 1.0) * mean_demand * total_demand / (total_demand + think_time));
    double out = balanced;
    if (bottleneck_demand > 0.0) out = std::min(out, 1.0 / bottleneck_demand);
    return std::min(out, n / (total_demand + think_time));
}

BalancedBounds balanced_bounds(const ClosedModel& model) {
    check_stations(model.stations);
    for (const auto& s : model.stations)
        if (s.kind == StationKind::delay)
            throw domain_error("balanced bounds assume single-server queueing stations only");
    BalancedBounds b;
    b.think_time = model.think_time;
    for (const auto& s : model.stations) b.total_demand += s.demand();
    b.bottleneck_demand = saturable_bottleneck(model.stations).demand;
    b.mean_demand = b.total_demand / static_cast<double>(model.stations.size());
    return b;
}

std::vector<Station> apply_edits(const std::vector<Station>& stations,
                                 const std::vector<Edit>& edits) {
    std::vector<Station> out = stations;
    for (const auto& e : edits) {
        if (const auto* scale = std::get_if<ScaleService>(&e)) {
            if (!(scale->factor > 0.0)) throw domain_error("scale factor must be > 0");
            out[find_station(out, scale->station)].service /= scale->factor;
        } else if (const auto* sv = std::get_if<SetVisits>(&e)) {
            if (sv->visits < 0.0) throw domain_error("negative visit ratio");
            out[find_station(out, sv->station)].visits = sv->visits;
        } else if (const auto* split = std::get_if<SplitStation>(&e)) {
            if (split->ways == 0) throw domain_error("split into zero stations");
            if (!(split->speedup > 0.0)) throw domain_error("split speedup must be > 0");
            const std::size_t idx = find_station(out, split->station);
            Station base = out[idx];
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(idx));
            for (std::size_t w = 0; w < split->ways; ++w) {
                Station part = base;
                part.name = base.name + "." + std::to_string(w + 1);
                part.visits = base.visits / static_cast<double>(split->ways);
                part.service = base.service / split->speedup;
                out.insert(out.begin() + static_cast<std::ptrdiff_t>(idx + w), part);
            }
        } else if (const auto* add = std::get_if<AddStation>(&e)) {
            out.push_back(add->station);
        }
    }
    check_stations(out);
    return out;
}

OpenModel what_if(const OpenModel& model, const std::vector<Edit>& edits) {
    OpenModel out = model;
    out.stations = apply_edits(model.stations, edits);
    return out;
}

ClosedModel what_if(const ClosedModel& model, const std::vector<Edit>& edits) {
    ClosedModel out = model;
    out.stations = apply_edits(model.stations, edits);
    return out;
}

EthernetDemand ethernet_transfer_demand(double request_bytes, double response_bytes,
                                        double bandwidth_bps, double mtu, double frame_overhead,
                                        double tcp_overhead, double ip_overhead) {
    if (request_bytes < 0.0 || response_bytes < 0.0) throw domain_error("negative payload");
    if (!(bandwidth_bps > 0.0)) throw domain_error("bandwidth must be > 0");
    if (!(mtu > 0.0)) throw domain_error("mtu must be > 0");

    EthernetDemand d;
    d.response_frames =
        response_bytes > 0.0 ? static_cast<std::size_t>(std::ceil(response_bytes / mtu)) : 1;
    const double request_total = request_bytes + tcp_overhead + ip_overhead + frame_overhead;
    double response_total = response_bytes + tcp_overhead + ip_overhead;
    if (d.response_frames > 1)
        response_total += static_cast<double>(d.response_frames) * frame_overhead;
    d.total_bytes = request_total + response_total;
    d.demand_seconds = d.total_bytes * 8.0 / bandwidth_bps;
    return d;
}

double csma_collision_overhead(double frames, std::size_t contending, double slot_seconds) {
    if (contending < 1) throw domain_error("need at least one contending station");
    if (frames < 0.0 || slot_seconds < 0.0) throw domain_error("negative inputs");
    if (contending == 1) return 0.0;
    const double k = static_cast<double>(contending);
    const double a = std::pow(1.0 - 1.0 / k, k - 1.0);
    const double c = (1.0 - a) / a;
    return frames * slot_seconds * c;
}

}  // namespace perfkit::qnsolver
