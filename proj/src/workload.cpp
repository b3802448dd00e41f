#include "perfkit/workload.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "perfkit/opanalysis.hpp"

namespace perfkit::workload {

namespace {

std::size_t dimension(const Dataset& data) {
    if (data.empty()) throw domain_error("empty dataset");
    const std::size_t dim = data.front().params.size();
    for (const auto& c : data)
        if (c.params.size() != dim) throw domain_error("inconsistent component dimension");
    return dim;
}

struct ColumnStats {
    double mean = 0.0;
    double sd = 0.0;
};

std::vector<ColumnStats> column_stats(const Dataset& data) {
    const std::size_t dim = dimension(data);
    std::vector<ColumnStats> stats(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        double sum = 0.0;
        for (const auto& c : data) sum += c.params[k];
        stats[k].mean = sum / static_cast<double>(data.size());
        double ss = 0.0;
        for (const auto& c : data) ss += std::pow(c.params[k] - stats[k].mean, 2);
        stats[k].sd = data.size() > 1 ? std::sqrt(ss / static_cast<double>(data.size() - 1)) : 0.0;
    }
    return stats;
}

double percentile(std::vector<double> sorted, double pct) {
    // Linear interpolation between closest ranks.
    if (sorted.empty()) throw domain_error("empty column");
    const double pos = pct / 100.0 * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

double centroid_distance(const std::vector<double>& a, const std::vector<double>& b, Metric metric,
                         const std::vector<double>& weights) {
    Component ca{"", a}, cb{"", b};
    return distance(ca, cb, metric, weights);
}

}  // namespace

double distance(const Component& a, const Component& b, Metric metric,
                const std::vector<double>& weights) {
    if (a.params.size() != b.params.size()) throw domain_error("dimension mismatch");
    switch (metric) {
        case Metric::euclidean: {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.params.size(); ++k)
                acc += std::pow(a.params[k] - b.params[k], 2);
            return std::sqrt(acc);
        }
        case Metric::weighted: {
            if (weights.size() != a.params.size())
                throw domain_error("weighted distance needs one weight per parameter");
            double acc = 0.0;
            for (std::size_t k = 0; k < a.params.size(); ++k)
                acc += weights[k] * std::pow(a.params[k] - b.params[k], 2);
            return std::sqrt(acc);
        }
        case Metric::chi2: {
            // Asymmetric: normalized by the first component's entries.
            double acc = 0.0;
            for (std::size_t k = 0; k < a.params.size(); ++k) {
                if (a.params[k] == 0.0) throw domain_error("chi2 distance needs nonzero entries");
                acc += std::pow(a.params[k] - b.params[k], 2) / a.params[k];
            }
            return acc;
        }
    }
    throw domain_error("unknown metric");
}

Dataset scale(const Dataset& data, const ScalingSpec& spec) {
    const std::size_t dim = dimension(data);
    Dataset out = data;

    if (std::holds_alternative<ZScoreScaling>(spec)) {
        const auto stats = column_stats(data);
        for (std::size_t k = 0; k < dim; ++k)
            if (!(stats[k].sd > 0.0)) throw domain_error("zscore scaling on a zero-variance column");
        for (auto& c : out)
            for (std::size_t k = 0; k < dim; ++k)
                c.params[k] = (c.params[k] - stats[k].mean) / stats[k].sd;
    } else if (const auto* w = std::get_if<WeightScaling>(&spec)) {
        if (w->weights.size() != dim) throw domain_error("one weight per column required");
        for (auto& c : out)
            for (std::size_t k = 0; k < dim; ++k) c.params[k] *= w->weights[k];
    } else if (const auto* r = std::get_if<RangeScaling>(&spec)) {
        if (r->min.size() != dim || r->max.size() != dim)
            throw domain_error("range bounds must match the column count");
        for (std::size_t k = 0; k < dim; ++k)
            if (!(r->min[k] < r->max[k])) throw domain_error("range bounds must be strictly ordered");
        for (auto& c : out)
            for (std::size_t k = 0; k < dim; ++k)
                c.params[k] = (c.params[k] - r->min[k]) / (r->max[k] - r->min[k]);
    } else if (const auto* p = std::get_if<PercentileScaling>(&spec)) {
        if (!(p->lower < p->upper)) throw domain_error("percentile bounds must be strictly ordered");
        for (std::size_t k = 0; k < dim; ++k) {
            std::vector<double> col;
            for (const auto& c : data) col.push_back(c.params[k]);
            std::sort(col.begin(), col.end());
            const double lo = percentile(col, p->lower);
            const double hi = percentile(col, p->upper);
            if (!(lo < hi)) throw domain_error("degenerate percentile range");
            for (auto& c : out) c.params[k] = (c.params[k] - lo) / (hi - lo);
        }
    } else if (std::holds_alternative<LogScaling>(spec)) {
        for (auto& c : out)
            for (std::size_t k = 0; k < dim; ++k) {
                if (!(c.params[k] > 0.0)) throw domain_error("log scaling needs positive values");
                c.params[k] = std::log10(c.params[k]);
            }
    }
    return out;
}

Dataset drop_outliers(const Dataset& data, double zscore_threshold) {
    const std::size_t dim = dimension(data);
    const auto stats = column_stats(data);
    Dataset out;
    for (const auto& c : data) {
        bool keep = true;
        for (std::size_t k = 0; k < dim && keep; ++k) {
            if (stats[k].sd == 0.0) continue;
            if (std::abs((c.params[k] - stats[k].mean) / stats[k].sd) > zscore_threshold)
                keep = false;
        }
        if (keep) out.push_back(c);
    }
    return out;
}

Dataset sample(const Dataset& data, std::size_t count, unsigned seed) {
    if (count >= data.size()) return data;
    std::vector<std::size_t> idx(data.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    Dataset out;
    for (std::size_t i : idx) out.push_back(data[i]);
    return out;
}

Dendrogram mst_cluster(const Dataset& data, Metric metric, const std::vector<double>& weights) {
    dimension(data);
    const std::size_t n = data.size();

    struct Live {
        std::size_t id;
        std::vector<double> centroid;
    };
    std::vector<Live> live;
    for (std::size_t i = 0; i < n; ++i) live.push_back({i, data[i].params});

    Dendrogram out;
    out.leaves = n;
    std::size_t next_id = n;

    while (live.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < live.size(); ++i)
            for (std::size_t j = i + 1; j < live.size(); ++j)
                best = std::min(best,
                                centroid_distance(live[i].centroid, live[j].centroid, metric, weights));

        // Collect every pair at the minimum; merge disjoint ones in one pass.
        std::vector<bool> used(live.size(), false);
        std::vector<Live> created;
        for (std::size_t i = 0; i < live.size(); ++i) {
            if (used[i]) continue;
            for (std::size_t j = i + 1; j < live.size(); ++j) {
                if (used[j]) continue;
                const double d = centroid_distance(live[i].centroid, live[j].centroid, metric, weights);
                if (d <= best + 1e-12) {
                    used[i] = used[j] = true;
                    Merge m;
                    m.left = live[i].id;
                    m.right = live[j].id;
                    m.distance = d;
                    m.centroid.resize(live[i].centroid.size());
                    for (std::size_t k = 0; k < m.centroid.size(); ++k)
                        m.centroid[k] = (live[i].centroid[k] + live[j].centroid[k]) / 2.0;
                    created.push_back({next_id++, m.centroid});
                    out.merges.push_back(std::move(m));
                    break;
                }
            }
        }
        std::vector<Live> remaining;
        for (std::size_t i = 0; i < live.size(); ++i)
            if (!used[i]) remaining.push_back(std::move(live[i]));
        for (auto& c : created) remaining.push_back(std::move(c));
        live = std::move(remaining);
    }
    return out;
}

namespace {

// Rebuilds the clusters that exist after the first `upto` merges.
std::vector<Cluster> clusters_after(const Dendrogram& dg, std::size_t upto, const Dataset& data) {
    std::vector<std::vector<std::size_t>> members(dg.leaves + upto);
    std::vector<std::vector<double>> centroids(dg.leaves + upto);
    std::vector<bool> alive(dg.leaves + upto, false);
    for (std::size_t i = 0; i < dg.leaves; ++i) {
        members[i] = {i};
        centroids[i] = data[i].params;
        alive[i] = true;
    }
    for (std::size_t m = 0; m < upto; ++m) {
        const auto& mg = dg.merges[m];
        const std::size_t id = dg.leaves + m;
        members[id] = members[mg.left];
        members[id].insert(members[id].end(), members[mg.right].begin(), members[mg.right].end());
        centroids[id] = mg.centroid;
        alive[mg.left] = alive[mg.right] = false;
        alive[id] = true;
    }
    std::vector<Cluster> out;
    for (std::size_t i = 0; i < alive.size(); ++i)
        if (alive[i]) {
            Cluster c;
            c.members = members[i];
            std::sort(c.members.begin(), c.members.end());
            c.centroid = centroids[i];
            out.push_back(std::move(c));
        }
    return out;
}

}  // namespace

std::vector<Cluster> Dendrogram::cut_k(std::size_t k, const Dataset& data) const {
    if (k == 0) throw domain_error("cannot cut to zero clusters");
    if (k > leaves) k = leaves;
    const std::size_t upto = std::min(merges.size(), leaves - k);
    return clusters_after(*this, upto, data);
}

std::vector<Cluster> Dendrogram::cut_height(double h, const Dataset& data) const {
    std::size_t upto = 0;
    while (upto < merges.size() && merges[upto].distance <= h) ++upto;
    return clusters_after(*this, upto, data);
}

double beta_cv(const std::vector<Cluster>& clusters, const Dataset& data, Metric metric,
               const std::vector<double>& weights) {
    if (clusters.size() < 2) throw domain_error("beta_cv needs at least two clusters");

    auto cv = [](const std::vector<double>& xs) {
        const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
        if (mean == 0.0) return 0.0;
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        const double sd =
            xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
        return sd / mean;
    };

    std::vector<double> intra;
    for (const auto& c : clusters) {
        if (c.members.empty()) throw domain_error("empty cluster");
        for (std::size_t m : c.members)
            intra.push_back(centroid_distance(data[m].params, c.centroid, metric, weights));
    }
    std::vector<double> inter;
    for (std::size_t i = 0; i < clusters.size(); ++i)
        for (std::size_t j = i + 1; j < clusters.size(); ++j)
            inter.push_back(centroid_distance(clusters[i].centroid, clusters[j].centroid, metric, weights));

    const double inter_cv = cv(inter);
    if (inter_cv == 0.0) {
        // Degenerate: equidistant centroids. All mass sits in the intra term.
        return cv(intra) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return cv(intra) / inter_cv;
}

double representativeness(const std::vector<std::vector<double>>& model,
                          const std::vector<std::vector<double>>& real,
                          const RepresentativenessSpec& spec) {
    if (model.size() != real.size() || model.size() != spec.class_shares.size())
        throw domain_error("class count mismatch");
    double qsum = 0.0;
    for (double q : spec.class_shares) {
        if (q < 0.0) throw domain_error("negative class share");
        qsum += q;
    }
    if (std::abs(qsum - 1.0) > 1e-9) throw domain_error("class shares must sum to 1");
    for (double w : spec.param_weights)
        if (w < 0.0) throw domain_error("negative parameter weight");

    double total = 0.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        if (model[i].size() != spec.param_weights.size() || real[i].size() != spec.param_weights.size())
            throw domain_error("parameter count mismatch");
        double inner = 0.0;
        for (std::size_t j = 0; j < model[i].size(); ++j) {
            const double range = spec.param_max.at(j) - spec.param_min.at(j);
            if (!(range > 0.0)) throw domain_error("degenerate parameter range");
            const double vm = (model[i][j] - spec.param_min[j]) / range;
            const double vr = (real[i][j] - spec.param_min[j]) / range;
            inner += spec.param_weights[j] * std::abs(vm - vr);
        }
        total += spec.class_shares[i] * inner;
    }
    return total;
}

CbmgRates cbmg_visit_rates(const Cbmg& model) {
    opanalysis::RoutingMatrix routing;
    routing.p = model.transitions;
    // The entry state is deterministic: everything arriving from outside
    // lands there. Treat state 1 as device 1 of the routing system.
    CbmgRates out;
    out.visits = opanalysis::visit_ratios(routing);
    if (out.visits.empty() || std::abs(out.visits[0] - 1.0) > 1e-6)
        throw singular_error("entry state must have visit ratio 1");
    out.visits.erase(out.visits.begin());  // drop the entry state itself
    out.session_length = std::accumulate(out.visits.begin(), out.visits.end(), 0.0);
    return out;
}

CvmClusters cvm_cluster(const std::vector<std::vector<double>>& sessions, std::size_t k) {
    Dataset data;
    for (std::size_t i = 0; i < sessions.size(); ++i)
        data.push_back({"s" + std::to_string(i + 1), sessions[i]});
    CvmClusters out;
    out.dendrogram = mst_cluster(data, Metric::euclidean);
    out.clusters = out.dendrogram.cut_k(k, data);
    return out;
}

CsidResult csid_demands(double visits_per_session, const std::vector<double>& device_service,
                        double session_arrival_rate) {
    if (visits_per_session < 0.0 || session_arrival_rate < 0.0)
        throw domain_error("negative inputs");
    CsidResult out;
    out.request_rate = session_arrival_rate * visits_per_session;
    for (double s : device_service) {
        if (s < 0.0) throw domain_error("negative service time");
        const double d = visits_per_session * s;
        out.demand.push_back(d);
        out.utilization.push_back(d * out.request_rate);
    }
    return out;
}

double zipf(double k, double rank) {
    if (!(rank >= 1.0)) throw domain_error("rank must be >= 1");
    return k / rank;
}

double zipf_share(double rank, std::size_t top_m) {
    if (!(rank >= 1.0) || top_m == 0) throw domain_error("rank must be >= 1 within a nonempty top");
    double harmonic = 0.0;
    for (std::size_t i = 1; i <= top_m; ++i) harmonic += 1.0 / static_cast<double>(i);
    return (1.0 / rank) / harmonic;
}

}  // namespace perfkit::workload
