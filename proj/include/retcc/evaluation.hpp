#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "retcc/citation_knn.hpp"

namespace retcc {

struct FoldPlan {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::size_t>> folds; // disjoint, union = {0..n-1}
};

// Per class: shuffle that class's indices by seed, deal round-robin into k
// folds. Per-class fold counts differ by at most one.
FoldPlan stratified_folds(std::span<const std::string> labels, int k, std::uint64_t seed);

// Plain shuffled round-robin split, ignoring labels.
FoldPlan unstratified_folds(std::size_t n, int k, std::uint64_t seed);

struct ConfusionMatrix {
    std::vector<std::string> classes;
    std::vector<std::vector<std::int64_t>> counts; // rows: truth, cols: predicted

    std::vector<std::int64_t> row_totals() const;
    // 100 * counts / rowsum; rows with no samples stay all-zero.
    std::vector<std::vector<double>> row_percent() const;
    std::int64_t total() const;
    double accuracy_percent() const; // 100 * trace / total
};

ConfusionMatrix confusion_matrix(std::span<const std::string> truths,
                                 std::span<const std::string> predictions,
                                 std::span<const std::string> classes);

// Distinct labels in first-appearance order.
std::vector<std::string> class_order(std::span<const std::string> labels);

struct Report {
    std::vector<double> run_accuracies; // percent, one per run
    double mean_accuracy = 0.0;
    ConfusionMatrix pooled; // counts summed over all runs
};

// classify(run, fold, train_indices, test_indices) -> predicted labels for
// the test indices, in order. Folding is re-drawn per run with seed
// base_seed + run.
using FoldClassify = std::function<std::vector<std::string>(
    int, int, const std::vector<std::size_t>&, const std::vector<std::size_t>&)>;

Report run_cv_generic(std::span<const std::string> labels, int folds, int runs,
                      std::uint64_t base_seed, bool stratified, const FoldClassify& classify);

// Cross-validation directly over extracted bags (one shared feature space).
Report run_cv(std::span<const Bag> bags, int folds, int runs, std::uint64_t base_seed,
              const DistanceConfig& distance, int references, int citers,
              bool stratified = true);

} // namespace retcc
