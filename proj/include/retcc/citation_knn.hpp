#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "retcc/autocc.hpp"

namespace retcc {

enum class InstanceMetric { correlation, euclidean };
enum class BagDistance { min_hausdorff, kth_ranked };

const char* to_string(InstanceMetric m);
const char* to_string(BagDistance d);
InstanceMetric instance_metric_from_string(const std::string& s);
BagDistance bag_distance_from_string(const std::string& s);

// kth_ranked with rank clamped to the bag size is the symmetrized directed
// Hausdorff distance: every instance must find a counterpart, so a bag with
// unmatched instances stays far even when some pairs match perfectly.
// min_hausdorff keeps only the single closest cross-bag pair.
struct DistanceConfig {
    InstanceMetric instance_metric = InstanceMetric::correlation;
    BagDistance bag_distance = BagDistance::kth_ranked;
    int rank = 64;
};

// correlation: 1 - Pearson correlation of the component sequences, in
// [0, 2]. If either vector has zero variance the distance is 0 for
// component-wise equal vectors and 2 otherwise.
double instance_distance(std::span<const double> x, std::span<const double> y,
                         InstanceMetric metric);

double bag_distance(const Bag& a, const Bag& b, const DistanceConfig& cfg);

// Labeled training bags plus everything classification reuses across
// queries: per-instance prepared vectors and the full training-pairwise
// distance matrix (the citer ranks need it). Immutable once built.
class TrainedModel {
public:
    TrainedModel(std::vector<Bag> bags, DistanceConfig config, int references, int citers);

    const std::vector<Bag>& bags() const noexcept { return bags_; }
    const std::vector<std::string>& classes() const noexcept { return classes_; }
    const DistanceConfig& config() const noexcept { return config_; }
    int references() const noexcept { return references_; }
    int citers() const noexcept { return citers_; }

    double train_distance(std::size_t i, std::size_t j) const {
        return train_dist_[i * bags_.size() + j];
    }

    // Bag distance from query to every training bag, in training order.
    std::vector<double> distances_to(const Bag& query) const;

private:
    struct PreparedInstance {
        std::vector<double> centered; // correlation: x - mean(x); euclidean: x
        double norm = 0.0;
        double mean = 0.0;
        // Zero variance means the vector is constant, so equality against
        // another zero-variance vector reduces to comparing means.
        bool zero_variance = false;
    };
    using PreparedBag = std::vector<PreparedInstance>;

    static PreparedBag prepare(const Bag& bag, InstanceMetric metric);
    double prepared_bag_distance(const PreparedBag& a, const PreparedBag& b) const;

    std::vector<Bag> bags_;
    std::vector<std::string> classes_;
    DistanceConfig config_;
    int references_ = 0;
    int citers_ = 0;
    std::vector<PreparedBag> prepared_;
    std::vector<double> train_dist_; // n x n, symmetric, zero diagonal
};

struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;
};

// Training bags sorted by ascending distance to the query; equal distances
// keep training order.
std::vector<Neighbor> rank_neighbors(const Bag& query, const TrainedModel& model);

struct Prediction {
    std::string label;
    std::vector<int> votes; // aligned with model.classes()
    std::string nearest_reference;
    double nearest_distance = 0.0;
};

Prediction classify_citation_knn(const Bag& query, const TrainedModel& model);
std::vector<Prediction> classify_batch(std::span<const Bag> queries, const TrainedModel& model);

} // namespace retcc
