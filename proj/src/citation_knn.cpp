#include "retcc/citation_knn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "retcc/parallel.hpp"

namespace retcc {

namespace {

// Centered vector with its norm and mean; the exact same operation order
// as TrainedModel::prepare so both code paths agree bitwise.
struct Centered {
    std::vector<double> values;
    double norm = 0.0;
    double mean = 0.0;
};

Centered center(std::span<const double> x) {
    Centered out;
    out.values.resize(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    out.mean = mean;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.values[i] = x[i] - mean;
        ss += out.values[i] * out.values[i];
    }
    out.norm = std::sqrt(ss);
    return out;
}

// Zero norm means every component equals the mean; such vectors are
// component-wise equal exactly when their means agree.
double correlation_from_centered(const Centered& cx, const Centered& cy) {
    if (cx.norm == 0.0 || cy.norm == 0.0)
        return (cx.norm == 0.0 && cy.norm == 0.0 && cx.mean == cy.mean) ? 0.0 : 2.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < cx.values.size(); ++i) dot += cx.values[i] * cy.values[i];
    return 1.0 - dot / (cx.norm * cy.norm);
}

double euclidean(std::span<const double> x, std::span<const double> y) {
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        ss += d * d;
    }
    return std::sqrt(ss);
}

void check_bag(const Bag& bag) {
    if (bag.instances.empty()) throw Error(Errc::empty_bag, "bag '" + bag.id + "' has no instances");
    const std::size_t dim = bag.instances.front().size();
    for (const FeatureVector& f : bag.instances)
        if (f.size() != dim)
            throw Error(Errc::dimension_mismatch, "bag '" + bag.id + "' mixes dimensionalities");
}

void check_same_dim(const Bag& a, const Bag& b) {
    if (a.instances.front().size() != b.instances.front().size())
        throw Error(Errc::dimension_mismatch,
                    "bags '" + a.id + "' and '" + b.id + "' have different instance dimensions");
}

} // namespace

const char* to_string(InstanceMetric m) {
    return m == InstanceMetric::correlation ? "correlation" : "euclidean";
}

const char* to_string(BagDistance d) {
    return d == BagDistance::min_hausdorff ? "min_hausdorff" : "kth_ranked";
}

InstanceMetric instance_metric_from_string(const std::string& s) {
    if (s == "correlation") return InstanceMetric::correlation;
    if (s == "euclidean") return InstanceMetric::euclidean;
    throw Error(Errc::bad_format, "unknown instance metric '" + s + "'");
}

BagDistance bag_distance_from_string(const std::string& s) {
    if (s == "min_hausdorff") return BagDistance::min_hausdorff;
    if (s == "kth_ranked") return BagDistance::kth_ranked;
    throw Error(Errc::bad_format, "unknown bag distance '" + s + "'");
}

double instance_distance(std::span<const double> x, std::span<const double> y,
                         InstanceMetric metric) {
    if (x.size() != y.size())
        throw Error(Errc::dimension_mismatch, std::to_string(x.size()) + " vs " +
                                                  std::to_string(y.size()) + " components");
    if (x.empty()) throw Error(Errc::dimension_mismatch, "empty feature vectors");

    if (metric == InstanceMetric::euclidean) return euclidean(x, y);
    return correlation_from_centered(center(x), center(y));
}

namespace {

// Full instance-pair distance table reduced per the configured bag mode.
double reduce_pairs(const std::vector<double>& row_min, const std::vector<double>& col_min,
                    double overall_min, const DistanceConfig& cfg) {
    if (cfg.bag_distance == BagDistance::min_hausdorff) return overall_min;

    auto directed = [&](const std::vector<double>& mins) {
        const int rank = std::clamp(cfg.rank, 1, static_cast<int>(mins.size()));
        std::vector<double> sorted = mins;
        std::nth_element(sorted.begin(), sorted.begin() + (rank - 1), sorted.end());
        return sorted[rank - 1];
    };
    return std::max(directed(row_min), directed(col_min));
}

} // namespace

double bag_distance(const Bag& a, const Bag& b, const DistanceConfig& cfg) {
    check_bag(a);
    check_bag(b);
    check_same_dim(a, b);
    if (cfg.rank < 1) throw std::invalid_argument("rank must be >= 1");

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> row_min(a.instances.size(), inf);
    std::vector<double> col_min(b.instances.size(), inf);
    double overall = inf;
    for (std::size_t i = 0; i < a.instances.size(); ++i) {
        for (std::size_t j = 0; j < b.instances.size(); ++j) {
            const double d = instance_distance(a.instances[i], b.instances[j],
                                               cfg.instance_metric);
            row_min[i] = std::min(row_min[i], d);
            col_min[j] = std::min(col_min[j], d);
            overall = std::min(overall, d);
        }
    }
    return reduce_pairs(row_min, col_min, overall, cfg);
}

TrainedModel::PreparedBag TrainedModel::prepare(const Bag& bag, InstanceMetric metric) {
    PreparedBag out;
    out.reserve(bag.instances.size());
    for (const FeatureVector& f : bag.instances) {
        PreparedInstance p;
        if (metric == InstanceMetric::correlation) {
            Centered c = center(f);
            p.centered = std::move(c.values);
            p.norm = c.norm;
            p.mean = c.mean;
            p.zero_variance = (p.norm == 0.0);
        } else {
            p.centered = f;
        }
        out.push_back(std::move(p));
    }
    return out;
}

double TrainedModel::prepared_bag_distance(const PreparedBag& a, const PreparedBag& b) const {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> row_min(a.size(), inf);
    std::vector<double> col_min(b.size(), inf);
    double overall = inf;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            double d;
            if (config_.instance_metric == InstanceMetric::correlation) {
                if (a[i].zero_variance || b[j].zero_variance) {
                    d = (a[i].zero_variance && b[j].zero_variance && a[i].mean == b[j].mean)
                            ? 0.0
                            : 2.0;
                } else {
                    double dot = 0.0;
                    const std::vector<double>& va = a[i].centered;
                    const std::vector<double>& vb = b[j].centered;
                    for (std::size_t t = 0; t < va.size(); ++t) dot += va[t] * vb[t];
                    d = 1.0 - dot / (a[i].norm * b[j].norm);
                }
            } else {
                d = euclidean(a[i].centered, b[j].centered);
            }
            row_min[i] = std::min(row_min[i], d);
            col_min[j] = std::min(col_min[j], d);
            overall = std::min(overall, d);
        }
    }
    return reduce_pairs(row_min, col_min, overall, config_);
}

TrainedModel::TrainedModel(std::vector<Bag> bags, DistanceConfig config, int references,
                           int citers)
    : bags_(std::move(bags)), config_(config), references_(references), citers_(citers) {
    if (bags_.empty()) throw Error(Errc::empty_input, "no training bags");
    if (references_ < 1) throw std::invalid_argument("references must be >= 1");
    if (citers_ < 0) throw std::invalid_argument("citers must be >= 0");
    if (config_.rank < 1) throw std::invalid_argument("rank must be >= 1");

    const std::size_t dim = [&] {
        check_bag(bags_.front());
        return bags_.front().instances.front().size();
    }();
    for (const Bag& bag : bags_) {
        check_bag(bag);
        if (bag.instances.front().size() != dim)
            throw Error(Errc::dimension_mismatch, "bag '" + bag.id + "' instance dimension " +
                                                      std::to_string(bag.instances.front().size()) +
                                                      " != " + std::to_string(dim));
        if (bag.label.empty())
            throw Error(Errc::bad_format, "training bag '" + bag.id + "' is unlabeled");
        if (std::find(classes_.begin(), classes_.end(), bag.label) == classes_.end())
            classes_.push_back(bag.label);
    }

    prepared_.reserve(bags_.size());
    for (const Bag& bag : bags_) prepared_.push_back(prepare(bag, config_.instance_metric));

    const std::size_t n = bags_.size();
    train_dist_.assign(n * n, 0.0);
    // Upper triangle flattened so the parallel split stays balanced.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    parallel_chunks(pairs.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const auto [i, j] = pairs[t];
            const double d = prepared_bag_distance(prepared_[i], prepared_[j]);
            train_dist_[i * n + j] = d;
            train_dist_[j * n + i] = d;
        }
    });
}

std::vector<double> TrainedModel::distances_to(const Bag& query) const {
    check_bag(query);
    check_same_dim(query, bags_.front());
    const PreparedBag pq = prepare(query, config_.instance_metric);
    std::vector<double> out(bags_.size());
    parallel_chunks(bags_.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            out[i] = prepared_bag_distance(pq, prepared_[i]);
    });
    return out;
}

std::vector<Neighbor> rank_neighbors(const Bag& query, const TrainedModel& model) {
    const std::vector<double> dist = model.distances_to(query);
    std::vector<Neighbor> out(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i) out[i] = Neighbor{i, dist[i]};
    std::stable_sort(out.begin(), out.end(),
                     [](const Neighbor& a, const Neighbor& b) { return a.distance < b.distance; });
    return out;
}

namespace {

Prediction classify_with_distances(const std::vector<double>& query_dist,
                                   const TrainedModel& model) {
    const std::size_t n = model.bags().size();
    if (n < static_cast<std::size_t>(model.references()))
        throw Error(Errc::model_too_small, std::to_string(n) + " training bags < R = " +
                                               std::to_string(model.references()));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return query_dist[a] < query_dist[b];
    });

    const std::vector<std::string>& classes = model.classes();
    auto class_index = [&](const std::string& label) {
        return static_cast<std::size_t>(
            std::find(classes.begin(), classes.end(), label) - classes.begin());
    };

    std::vector<int> votes(classes.size(), 0);
    const int R = model.references();
    for (int r = 0; r < R; ++r) ++votes[class_index(model.bags()[order[r]].label)];

    // Bag t cites the query when the query ranks among t's C nearest
    // neighbors within (training \ {t}) + {query}; distance ties sort the
    // query last, matching its position at the end of insertion order.
    const int C = model.citers();
    if (C > 0) {
        for (std::size_t t = 0; t < n; ++t) {
            int ahead = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == t) continue;
                if (model.train_distance(t, j) <= query_dist[t]) ++ahead;
            }
            if (ahead < C) ++votes[class_index(model.bags()[t].label)];
        }
    }

    int best_votes = -1;
    for (int v : votes) best_votes = std::max(best_votes, v);

    // Plurality; on ties the reference ranked nearest whose label is tied
    // wins, falling back to class order if no reference label is tied.
    std::size_t winner = classes.size();
    for (int r = 0; r < R; ++r) {
        const std::size_t ci = class_index(model.bags()[order[r]].label);
        if (votes[ci] == best_votes) {
            winner = ci;
            break;
        }
    }
    if (winner == classes.size()) {
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            if (votes[ci] == best_votes) {
                winner = ci;
                break;
            }
        }
    }

    Prediction pred;
    pred.label = classes[winner];
    pred.votes = std::move(votes);
    pred.nearest_reference = model.bags()[order[0]].id;
    pred.nearest_distance = query_dist[order[0]];
    return pred;
}

} // namespace

Prediction classify_citation_knn(const Bag& query, const TrainedModel& model) {
    return classify_with_distances(model.distances_to(query), model);
}

std::vector<Prediction> classify_batch(std::span<const Bag> queries, const TrainedModel& model) {
    std::vector<Prediction> out;
    out.reserve(queries.size());
    for (const Bag& q : queries) out.push_back(classify_citation_knn(q, model));
    return out;
}

} // namespace retcc
