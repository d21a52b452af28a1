#include "retcc/evaluation.hpp"

#include <algorithm>
#include <stdexcept>

#include "retcc/rng.hpp"

namespace retcc {

std::vector<std::string> class_order(std::span<const std::string> labels) {
    std::vector<std::string> classes;
    for (const std::string& l : labels)
        if (std::find(classes.begin(), classes.end(), l) == classes.end()) classes.push_back(l);
    return classes;
}

FoldPlan stratified_folds(std::span<const std::string> labels, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("fold count must be >= 2");

    const std::vector<std::string> classes = class_order(labels);
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.folds.assign(k, {});

    Rng rng(seed);
    for (const std::string& cls : classes) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls) idx.push_back(i);
        if (idx.size() < static_cast<std::size_t>(k))
            throw Error(Errc::class_too_small, "class '" + cls + "' has " +
                                                   std::to_string(idx.size()) + " members < " +
                                                   std::to_string(k) + " folds");
        rng.shuffle(idx);
        for (std::size_t i = 0; i < idx.size(); ++i) plan.folds[i % k].push_back(idx[i]);
    }
    return plan;
}

FoldPlan unstratified_folds(std::size_t n, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("fold count must be >= 2");
    if (n < static_cast<std::size_t>(k))
        throw Error(Errc::class_too_small,
                    std::to_string(n) + " samples < " + std::to_string(k) + " folds");

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.folds.assign(k, {});

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Rng rng(seed);
    rng.shuffle(idx);
    for (std::size_t i = 0; i < n; ++i) plan.folds[i % k].push_back(idx[i]);
    return plan;
}

std::vector<std::int64_t> ConfusionMatrix::row_totals() const {
    std::vector<std::int64_t> out(counts.size(), 0);
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::int64_t c : counts[i]) out[i] += c;
    return out;
}

std::vector<std::vector<double>> ConfusionMatrix::row_percent() const {
    const std::vector<std::int64_t> totals = row_totals();
    std::vector<std::vector<double>> out(counts.size(),
                                         std::vector<double>(classes.size(), 0.0));
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (totals[i] == 0) continue;
        for (std::size_t j = 0; j < counts[i].size(); ++j)
            out[i][j] = 100.0 * static_cast<double>(counts[i][j]) /
                        static_cast<double>(totals[i]);
    }
    return out;
}

std::int64_t ConfusionMatrix::total() const {
    std::int64_t t = 0;
    for (const auto& row : counts)
        for (std::int64_t c : row) t += c;
    return t;
}

double ConfusionMatrix::accuracy_percent() const {
    const std::int64_t t = total();
    if (t == 0) return 0.0;
    std::int64_t diag = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) diag += counts[i][i];
    return 100.0 * static_cast<double>(diag) / static_cast<double>(t);
}

ConfusionMatrix confusion_matrix(std::span<const std::string> truths,
                                 std::span<const std::string> predictions,
                                 std::span<const std::string> classes) {
    if (truths.size() != predictions.size())
        throw std::invalid_argument("truth/prediction length mismatch");

    ConfusionMatrix m;
    m.classes.assign(classes.begin(), classes.end());
    m.counts.assign(classes.size(), std::vector<std::int64_t>(classes.size(), 0));

    auto index_of = [&](const std::string& label) {
        const auto it = std::find(m.classes.begin(), m.classes.end(), label);
        if (it == m.classes.end())
            throw Error(Errc::unknown_class, "label '" + label + "' not in class list");
        return static_cast<std::size_t>(it - m.classes.begin());
    };

    for (std::size_t i = 0; i < truths.size(); ++i)
        ++m.counts[index_of(truths[i])][index_of(predictions[i])];
    return m;
}

Report run_cv_generic(std::span<const std::string> labels, int folds, int runs,
                      std::uint64_t base_seed, bool stratified, const FoldClassify& classify) {
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");

    const std::vector<std::string> classes = class_order(labels);
    Report report;
    report.pooled.classes = classes;
    report.pooled.counts.assign(classes.size(),
                                std::vector<std::int64_t>(classes.size(), 0));

    for (int run = 0; run < runs; ++run) {
        const std::uint64_t run_seed = base_seed + static_cast<std::uint64_t>(run);
        const FoldPlan plan = stratified
                                  ? stratified_folds(labels, folds, run_seed)
                                  : unstratified_folds(labels.size(), folds, run_seed);

        std::vector<std::string> truths;
        std::vector<std::string> preds;
        truths.reserve(labels.size());
        preds.reserve(labels.size());

        for (int f = 0; f < folds; ++f) {
            std::vector<std::size_t> train_idx;
            for (int other = 0; other < folds; ++other) {
                if (other == f) continue;
                train_idx.insert(train_idx.end(), plan.folds[other].begin(),
                                 plan.folds[other].end());
            }
            const std::vector<std::size_t>& test_idx = plan.folds[f];
            const std::vector<std::string> fold_preds = classify(run, f, train_idx, test_idx);
            if (fold_preds.size() != test_idx.size())
                throw std::logic_error("fold classifier returned wrong number of predictions");
            for (std::size_t i = 0; i < test_idx.size(); ++i) {
                truths.push_back(labels[test_idx[i]]);
                preds.push_back(fold_preds[i]);
            }
        }

        const ConfusionMatrix run_matrix = confusion_matrix(truths, preds, classes);
        report.run_accuracies.push_back(run_matrix.accuracy_percent());
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (std::size_t j = 0; j < classes.size(); ++j)
                report.pooled.counts[i][j] += run_matrix.counts[i][j];
    }

    double sum = 0.0;
    for (double a : report.run_accuracies) sum += a;
    report.mean_accuracy = sum / static_cast<double>(report.run_accuracies.size());
    return report;
}

Report run_cv(std::span<const Bag> bags, int folds, int runs, std::uint64_t base_seed,
              const DistanceConfig& distance, int references, int citers, bool stratified) {
    std::vector<std::string> labels;
    labels.reserve(bags.size());
    for (const Bag& b : bags) {
        if (b.label.empty())
            throw Error(Errc::bad_format, "bag '" + b.id + "' is unlabeled");
        labels.push_back(b.label);
    }

    const FoldClassify classify = [&](int, int, const std::vector<std::size_t>& train_idx,
                                      const std::vector<std::size_t>& test_idx) {
        std::vector<Bag> train;
        train.reserve(train_idx.size());
        for (std::size_t i : train_idx) train.push_back(bags[i]);
        const TrainedModel model(std::move(train), distance, references, citers);

        std::vector<std::string> out;
        out.reserve(test_idx.size());
        for (std::size_t i : test_idx)
            out.push_back(classify_citation_knn(bags[i], model).label);
        return out;
    };
    return run_cv_generic(labels, folds, runs, base_seed, stratified, classify);
}

} // namespace retcc
