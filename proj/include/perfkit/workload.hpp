#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "perfkit/errors.hpp"

// Workload characterization: parameter scaling, distance metrics, hierarchical
// clustering with dendrograms, cluster-quality beta_CV, model
// representativeness, CBMG/CVM session analysis, CSID demand aggregation and
// Zipf popularity.

namespace perfkit::workload {

// One workload item as a vector of named numeric parameters.
struct Component {
    std::string label;
    std::vector<double> params;
};

using Dataset = std::vector<Component>;

// Scaling techniques. zscore: (x - mean)/sd per column. weights: x * w_k.
// range: (x - min)/(max - min). percentile: (x - p2.5)/(p97.5 - p2.5).
// log: log10(x).
struct ZScoreScaling {};
struct WeightScaling {
    std::vector<double> weights;  // one per column
};
struct RangeScaling {
    std::vector<double> min;  // per column; strictly below max
    std::vector<double> max;
};
struct PercentileScaling {
    double lower = 2.5;  // percent
    double upper = 97.5;
};
struct LogScaling {};
using ScalingSpec =
    std::variant<ZScoreScaling, WeightScaling, RangeScaling, PercentileScaling, LogScaling>;

Dataset scale(const Dataset& data, const ScalingSpec& spec);

// Removes components with any |zscore| above the threshold (default 3).
Dataset drop_outliers(const Dataset& data, double zscore_threshold = 3.0);

// Uniform-random sample without replacement, reproducible via seed.
Dataset sample(const Dataset& data, std::size_t count, unsigned seed);

enum class Metric { euclidean, weighted, chi2 };

double distance(const Component& a, const Component& b, Metric metric,
                const std::vector<double>& weights = {});

// Merge history of agglomerative clustering. Cluster ids: 0..n-1 are leaves,
// n+k is the cluster created by merge k. New centroids are the midpoint of
// the two merged centroids (the recipe the worked examples follow).
struct Merge {
    std::size_t left = 0;
    std::size_t right = 0;
    double distance = 0.0;
    std::vector<double> centroid;
};

struct Cluster {
    std::vector<std::size_t> members;  // leaf indices
    std::vector<double> centroid;
};

struct Dendrogram {
    std::size_t leaves = 0;
    std::vector<Merge> merges;

    // Clusters remaining when merging stops at `k` clusters.
    std::vector<Cluster> cut_k(std::size_t k, const Dataset& data) const;
    // Clusters remaining when merges at distance > h are undone.
    std::vector<Cluster> cut_height(double h, const Dataset& data) const;
};

struct StopAtClusters {
    std::size_t k = 1;
};
struct StopAtDistance {
    double max_distance = 0.0;
};
using StopRule = std::variant<StopAtClusters, StopAtDistance>;

// Minimum-spanning-tree style agglomeration: repeatedly merge the closest
// centroid pair. Ties (within 1e-12) merge all disjoint tied pairs in one
// pass, lowest-id pair first. The full merge history is always returned;
// `stop` only controls which cut the convenience result reports.
Dendrogram mst_cluster(const Dataset& data, Metric metric,
                       const std::vector<double>& weights = {});

// Ratio of intra-cluster to inter-cluster coefficient of variation.
double beta_cv(const std::vector<Cluster>& clusters, const Dataset& data, Metric metric,
               const std::vector<double>& weights = {});

// Representativeness of a workload model against the real workload.
struct RepresentativenessSpec {
    std::vector<double> class_shares;  // q_i, sum to 1
    std::vector<double> param_weights; // w_j >= 0
    std::vector<double> param_min;     // normalization ranges
    std::vector<double> param_max;
};

// D = sum_i q_i sum_j w_j |v'_model - v'_real| on range-normalized values.
// model/real: class x parameter matrices.
double representativeness(const std::vector<std::vector<double>>& model,
                          const std::vector<std::vector<double>>& real,
                          const RepresentativenessSpec& spec);

// Customer behavior model graph: state 1 is the entry, index 0 the exit.
struct Cbmg {
    std::vector<std::vector<double>> transitions;  // rows sum to 1, exit included
};

struct CbmgRates {
    std::vector<double> visits;   // V_2..V_n (entry has V=1)
    double session_length = 0.0;  // sum of the above
};

CbmgRates cbmg_visit_rates(const Cbmg& model);

// Clusters per-session visit-rate vectors down to k groups (euclidean).
struct CvmClusters {
    std::vector<Cluster> clusters;
    Dendrogram dendrogram;
};

CvmClusters cvm_cluster(const std::vector<std::vector<double>>& sessions, std::size_t k);

// Client/server interaction demands: per-device service demand of one session
// and the device utilization it induces.
struct CsidResult {
    double request_rate = 0.0;             // lambda_sessions * V
    std::vector<double> demand;            // D_dev = V * S_dev (per session)
    std::vector<double> utilization;       // U_dev = D_dev * request_rate
};

CsidResult csid_demands(double visits_per_session, const std::vector<double>& device_service,
                        double session_arrival_rate);

// Zipf popularity: expected references to the rank-r item, P = k / r.
double zipf(double k, double rank);

// Share of the rank-r item among the top-m items: (1/r) / H_m.
double zipf_share(double rank, std::size_t top_m);

}  // namespace perfkit::workload
