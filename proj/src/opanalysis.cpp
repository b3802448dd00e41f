#include "perfkit/opanalysis.hpp"

#include <algorithm>
#include <cmath>

namespace perfkit::opanalysis {

void RoutingMatrix::validate() const {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].size() != p.size()) throw domain_error("routing matrix must be square");
        double sum = 0.0;
        for (double x : p[i]) {
            if (x < -1e-12 || x > 1.0 + 1e-12) throw domain_error("routing probability outside [0,1]");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw domain_error("routing row does not sum to 1");
    }
}

OperationalMetrics derive_metrics(const DeviceObservation& obs) {
    if (!(obs.window > 0.0)) throw domain_error("observation window must be > 0");
    if (obs.arrivals < 0.0 || obs.completions < 0.0) throw domain_error("negative counts");
    if (obs.busy < 0.0 || obs.busy > obs.window + 1e-12)
        throw domain_error("busy time outside [0, T]");

    OperationalMetrics m;
    m.arrival_rate = obs.arrivals / obs.window;
    m.throughput = obs.completions / obs.window;
    m.utilization = obs.busy / obs.window;
    if (obs.completions > 0.0) m.service_time = obs.busy / obs.completions;
    return m;
}

bool laws_hold(const OperationalMetrics& m, double tol) {
    if (!m.service_time) return true;
    return std::abs(m.utilization - m.throughput * *m.service_time) <= tol;
}

double flow_balance_error(double arrivals, double completions) {
    if (!(completions > 0.0)) throw domain_error("completions must be > 0");
    return std::abs(arrivals - completions) / completions;
}

double little_n(double throughput, double response_time) {
    if (throughput < 0.0 || response_time < 0.0) throw domain_error("negative inputs");
    return throughput * response_time;
}

double little_r(double population, double throughput) {
    if (!(throughput > 0.0)) throw domain_error("throughput must be > 0");
    return population / throughput;
}

double little_x(double population, double response_time) {
    if (!(response_time > 0.0)) throw domain_error("response time must be > 0");
    return population / response_time;
}

double forced_flow(double system_throughput, double visit_ratio) {
    return system_throughput * visit_ratio;
}

double system_throughput(double device_throughput, double visit_ratio) {
    if (!(visit_ratio > 0.0)) throw domain_error("visit ratio must be > 0");
    return device_throughput / visit_ratio;
}

double general_response_time(const std::vector<double>& visits,
                             const std::vector<double>& device_response) {
    if (visits.size() != device_response.size()) throw domain_error("length mismatch");
    double r = 0.0;
    for (std::size_t i = 0; i < visits.size(); ++i) {
        if (visits[i] < 0.0 || device_response[i] < 0.0) throw domain_error("negative inputs");
        r += visits[i] * device_response[i];
    }
    return r;
}

InteractiveResponse interactive_response_time(double population, double throughput,
                                              double think_time) {
    if (!(throughput > 0.0)) throw domain_error("throughput must be > 0");
    if (population < 0.0 || think_time < 0.0) throw domain_error("negative inputs");
    InteractiveResponse out;
    out.response_time = population / throughput - think_time;
    out.feasible = out.response_time >= 0.0;
    return out;
}

std::vector<double> solve_linear_system(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12) throw singular_error("singular linear system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
        x[i] = acc / a[i][i];
    }
    return x;
}

std::vector<double> visit_ratios(const RoutingMatrix& routing) {
    routing.validate();
    if (routing.size() < 2) throw domain_error("routing matrix needs the exit plus one device");
    const std::size_t k = routing.size() - 1;  // devices 1..k, exit is 0

    // V_j - sum_i V_i p_ij = p_0j, unknowns V_1..V_k (V_0 = 1).
    std::vector<std::vector<double>> a(k, std::vector<double>(k, 0.0));
    std::vector<double> b(k, 0.0);
    for (std::size_t j = 1; j <= k; ++j) {
        b[j - 1] = routing.p[0][j];
        for (std::size_t i = 1; i <= k; ++i) a[j - 1][i - 1] = (i == j ? 1.0 : 0.0) - routing.p[i][j];
    }
    auto v = solve_linear_system(std::move(a), std::move(b));
    for (double x : v)
        if (!(x >= -1e-9) || !std::isfinite(x))
            throw singular_error("routing has no consistent visit ratios");
    return v;
}

RoutingMatrix routing_from_visits(const std::vector<double>& visits) {
    if (visits.empty()) throw domain_error("no devices");
    const double hub = visits[0];
    double peripheral_sum = 0.0;
    for (std::size_t i = 1; i < visits.size(); ++i) {
        if (visits[i] < 0.0) throw domain_error("negative visit ratio");
        peripheral_sum += visits[i];
    }
    if (hub < peripheral_sum + 1.0 - 1e-9)
        throw domain_error("central-server shape needs V_hub >= sum(V_peripherals) + 1");

    const std::size_t n = visits.size() + 1;  // + exit
    RoutingMatrix r;
    r.p.assign(n, std::vector<double>(n, 0.0));
    r.p[0][1] = 1.0;           // arrivals enter the hub
    r.p[1][0] = 1.0 / hub;     // V_0 / V_1
    for (std::size_t i = 1; i < visits.size(); ++i) {
        r.p[1][i + 1] = visits[i] / hub;
        r.p[i + 1][1] = 1.0;   // peripherals return to the hub
    }
    // Hub self-loop absorbs any slack so the row sums to 1 exactly.
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        if (j != 1) sum += r.p[1][j];
    r.p[1][1] = 1.0 - sum;
    return r;
}

double disk_service_time(double seek, double latency, double block_bytes, double transfer_rate,
                         std::size_t blocks, Placement placement) {
    if (seek < 0.0 || latency < 0.0 || block_bytes < 0.0) throw domain_error("negative disk timing");
    if (!(transfer_rate > 0.0)) throw domain_error("transfer rate must be > 0");
    if (blocks == 0) return 0.0;
    const double xfer = block_bytes / transfer_rate;
    const double n = static_cast<double>(blocks);
    if (placement == Placement::random) return n * (seek + latency + xfer);
    return seek + latency + n * xfer;
}

double cached_service_time(double controller, double hit_probability, double miss_time) {
    if (controller < 0.0 || miss_time < 0.0) throw domain_error("negative service components");
    if (!(hit_probability >= 0.0 && hit_probability <= 1.0))
        throw domain_error("hit probability must be in [0,1]");
    return controller + (1.0 - hit_probability) * miss_time;
}

}  // namespace perfkit::opanalysis
