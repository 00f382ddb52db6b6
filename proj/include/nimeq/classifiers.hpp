#ifndef NIMEQ_CLASSIFIERS_HPP
#define NIMEQ_CLASSIFIERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "nimeq/descriptors.hpp"
#include "nimeq/matrix.hpp"
#include "nimeq/rng.hpp"
#include "nimeq/similarity.hpp"

namespace nimeq {

/// Majority label among the k nearest training rows (Euclidean metric).
/// Equal distances are ordered by training index; a vote tie goes to the
/// nearest neighbor's label.
inline int knn_predict(const Matrix& train_x, std::span<const int> train_y,
                       std::span<const double> query, int k = 5) {
    const std::size_t n = train_x.rows();
    if (n == 0) throw std::invalid_argument("knn_predict: empty training set");
    if (train_y.size() != n) throw std::invalid_argument("knn_predict: label count mismatch");
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("knn_predict: k out of range");

    std::vector<std::pair<double, std::size_t>> by_distance(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sq = 0.0;
        const auto row = train_x.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double d = row[j] - query[j];
            sq += d * d;
        }
        by_distance[i] = {sq, i};
    }
    std::sort(by_distance.begin(), by_distance.end());

    std::map<int, int> votes;
    for (int v = 0; v < k; ++v) ++votes[train_y[by_distance[v].second]];
    const int top = std::max_element(votes.begin(), votes.end(), [](auto& a, auto& b) {
                        return a.second < b.second;
                    })->second;
    int winners = 0;
    for (auto& [label, count] : votes) winners += (count == top);
    if (winners > 1) return train_y[by_distance[0].second];
    for (auto& [label, count] : votes)
        if (count == top) return label;
    throw std::logic_error("knn_predict: unreachable");
}

// ---------------------------------------------------------------------------
// Support vector machine (RBF kernel, soft margin, sequential minimal
// optimization in its simplified two-heuristic form: first-choice by KKT
// violation sweep, second-choice by maximal |E_i - E_j|). Fully
// deterministic; adequate for the n <= a-few-hundred sample sizes used here.
// ---------------------------------------------------------------------------

struct SvmModel {
    Matrix support_x;
    std::vector<double> alpha;
    std::vector<int> sign;  // +-1 per training row
    double bias = 0.0;
    double gamma = 1.0;
    int positive_label = 1;
    int negative_label = 0;
    bool single_class = false;  // degenerate training set; predicts a constant
    int constant_label = 0;
};

/// The "scale" bandwidth heuristic: 1 / (F * pooled variance of all feature
/// entries), falling back to 1/F for constant data.
inline double rbf_gamma_scale(const Matrix& x) {
    const auto all = x.data();
    if (all.empty() || x.cols() == 0) return 1.0;
    double mean = 0.0;
    for (double v : all) mean += v;
    mean /= static_cast<double>(all.size());
    double var = 0.0;
    for (double v : all) var += (v - mean) * (v - mean);
    var /= static_cast<double>(all.size());
    const auto f = static_cast<double>(x.cols());
    return var > 0.0 ? 1.0 / (f * var) : 1.0 / f;
}

inline double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
    double sq = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        sq += d * d;
    }
    return std::exp(-gamma * sq);
}

/// gamma <= 0 selects the scale heuristic.
inline SvmModel svm_train(const Matrix& x, std::span<const int> y, double C = 1.0,
                          double gamma = 0.0) {
    const std::size_t n = x.rows();
    if (n == 0 || y.size() != n) throw std::invalid_argument("svm_train: bad training set");

    SvmModel model;
    model.support_x = x;
    model.gamma = gamma > 0.0 ? gamma : rbf_gamma_scale(x);

    const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
    model.negative_label = *lo_it;
    model.positive_label = *hi_it;
    if (model.negative_label == model.positive_label) {
        model.single_class = true;
        model.constant_label = model.negative_label;
        return model;
    }

    model.sign.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        model.sign[i] = (y[i] == model.positive_label) ? 1 : -1;
    model.alpha.assign(n, 0.0);

    Matrix kernel(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            kernel(i, j) = kernel(j, i) = rbf_kernel(x.row(i), x.row(j), model.gamma);

    std::vector<double> decision(n, 0.0);  // f(x_i), kept in sync with alpha/bias
    const double tol = 1e-3;
    const int max_quiet_passes = 5;
    const int max_sweeps = 400;

    int quiet = 0;
    for (int sweep = 0; sweep < max_sweeps && quiet < max_quiet_passes; ++sweep) {
        int changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double err_i = decision[i] - model.sign[i];
            const bool violates = (model.sign[i] * err_i < -tol && model.alpha[i] < C) ||
                                  (model.sign[i] * err_i > tol && model.alpha[i] > 0.0);
            if (!violates) continue;

            std::size_t j = (i + 1) % n;
            double best_gap = -1.0;
            for (std::size_t cand = 0; cand < n; ++cand) {
                if (cand == i) continue;
                const double gap = std::abs(err_i - (decision[cand] - model.sign[cand]));
                if (gap > best_gap) {
                    best_gap = gap;
                    j = cand;
                }
            }
            const double err_j = decision[j] - model.sign[j];

            double low, high;
            if (model.sign[i] != model.sign[j]) {
                low = std::max(0.0, model.alpha[j] - model.alpha[i]);
                high = std::min(C, C + model.alpha[j] - model.alpha[i]);
            } else {
                low = std::max(0.0, model.alpha[i] + model.alpha[j] - C);
                high = std::min(C, model.alpha[i] + model.alpha[j]);
            }
            if (low >= high) continue;

            const double eta = 2.0 * kernel(i, j) - kernel(i, i) - kernel(j, j);
            if (eta >= 0.0) continue;

            double aj = model.alpha[j] - model.sign[j] * (err_i - err_j) / eta;
            aj = std::clamp(aj, low, high);
            if (std::abs(aj - model.alpha[j]) < 1e-7) continue;
            const double ai =
                model.alpha[i] + model.sign[i] * model.sign[j] * (model.alpha[j] - aj);

            const double delta_i = ai - model.alpha[i];
            const double delta_j = aj - model.alpha[j];
            const double b1 = model.bias - err_i - model.sign[i] * delta_i * kernel(i, i) -
                              model.sign[j] * delta_j * kernel(i, j);
            const double b2 = model.bias - err_j - model.sign[i] * delta_i * kernel(i, j) -
                              model.sign[j] * delta_j * kernel(j, j);
            double new_bias;
            if (ai > 0.0 && ai < C)
                new_bias = b1;
            else if (aj > 0.0 && aj < C)
                new_bias = b2;
            else
                new_bias = 0.5 * (b1 + b2);

            const double delta_b = new_bias - model.bias;
            for (std::size_t k = 0; k < n; ++k)
                decision[k] += model.sign[i] * delta_i * kernel(i, k) +
                               model.sign[j] * delta_j * kernel(j, k) + delta_b;
            model.alpha[i] = ai;
            model.alpha[j] = aj;
            model.bias = new_bias;
            ++changed;
        }
        quiet = (changed == 0) ? quiet + 1 : 0;
    }
    return model;
}

inline int svm_predict(const SvmModel& model, std::span<const double> query) {
    if (model.single_class) return model.constant_label;
    double f = model.bias;
    for (std::size_t i = 0; i < model.support_x.rows(); ++i) {
        if (model.alpha[i] == 0.0) continue;
        f += model.alpha[i] * model.sign[i] *
             rbf_kernel(model.support_x.row(i), query, model.gamma);
    }
    return f > 0.0 ? model.positive_label : model.negative_label;
}

// ---------------------------------------------------------------------------
// Random forest: bagged CART trees with Gini splits, a ceil(sqrt(F)) feature
// subset per split and a seeded generator per tree, so models are
// reproducible.
// ---------------------------------------------------------------------------

struct RfConfig {
    int n_trees = 100;
    int max_depth = 5;
    std::uint64_t seed = 0;
};

struct RfNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
};

struct RfModel {
    std::vector<std::vector<RfNode>> trees;
};

namespace detail {

inline int majority_label(std::span<const int> y, std::span<const std::size_t> idx) {
    std::map<int, int> counts;
    for (std::size_t i : idx) ++counts[y[i]];
    int best_label = counts.begin()->first;
    int best_count = counts.begin()->second;
    for (auto& [label, count] : counts)
        if (count > best_count) {
            best_label = label;
            best_count = count;
        }
    return best_label;  // ties keep the smallest label (map order)
}

inline double gini(int a, int b) {
    const double total = a + b;
    if (total == 0.0) return 0.0;
    const double pa = a / total, pb = b / total;
    return 1.0 - pa * pa - pb * pb;
}

inline int grow_tree(std::vector<RfNode>& nodes, const Matrix& x, std::span<const int> y,
                     std::vector<std::size_t> idx, int depth, int max_depth,
                     int positive_label, Xoshiro256& rng) {
    const int node_id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[node_id].label = majority_label(y, idx);

    bool pure = true;
    for (std::size_t i : idx)
        if (y[i] != y[idx.front()]) {
            pure = false;
            break;
        }
    if (pure || depth >= max_depth || idx.size() < 2) return node_id;

    const std::size_t f_total = x.cols();
    const auto f_try = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(f_total))));
    std::vector<std::size_t> features(f_total);
    std::iota(features.begin(), features.end(), std::size_t{0});
    for (std::size_t k = 0; k < f_try; ++k)  // partial Fisher-Yates
        std::swap(features[k], features[k + rng.below(f_total - k)]);

    double best_impurity = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;

    std::vector<std::pair<double, int>> column(idx.size());
    for (std::size_t k = 0; k < f_try; ++k) {
        const std::size_t f = features[k];
        for (std::size_t s = 0; s < idx.size(); ++s)
            column[s] = {x(idx[s], f), y[idx[s]] == positive_label ? 1 : 0};
        std::sort(column.begin(), column.end());

        int total_pos = 0;
        for (auto& [v, pos] : column) total_pos += pos;
        const int total = static_cast<int>(column.size());

        int left_n = 0, left_pos = 0;
        for (std::size_t s = 0; s + 1 < column.size(); ++s) {
            ++left_n;
            left_pos += column[s].second;
            if (column[s].first == column[s + 1].first) continue;
            const int right_n = total - left_n;
            const double impurity =
                (left_n * gini(left_pos, left_n - left_pos) +
                 right_n * gini(total_pos - left_pos, right_n - (total_pos - left_pos))) /
                total;
            if (impurity < best_impurity) {
                best_impurity = impurity;
                best_feature = static_cast<int>(f);
                best_threshold = 0.5 * (column[s].first + column[s + 1].first);
            }
        }
    }
    if (best_feature < 0) return node_id;  // every sampled feature constant

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx)
        (x(i, static_cast<std::size_t>(best_feature)) <= best_threshold ? left_idx : right_idx)
            .push_back(i);
    if (left_idx.empty() || right_idx.empty()) return node_id;

    nodes[node_id].feature = best_feature;
    nodes[node_id].threshold = best_threshold;
    const int left = grow_tree(nodes, x, y, std::move(left_idx), depth + 1, max_depth,
                               positive_label, rng);
    nodes[node_id].left = left;
    const int right = grow_tree(nodes, x, y, std::move(right_idx), depth + 1, max_depth,
                                positive_label, rng);
    nodes[node_id].right = right;
    return node_id;
}

}  // namespace detail

inline RfModel rf_train(const Matrix& x, std::span<const int> y, const RfConfig& config = {}) {
    const std::size_t n = x.rows();
    if (n == 0 || y.size() != n) throw std::invalid_argument("rf_train: bad training set");
    const int positive_label = *std::max_element(y.begin(), y.end());

    RfModel model;
    model.trees.resize(static_cast<std::size_t>(config.n_trees));
    for (int t = 0; t < config.n_trees; ++t) {
        Xoshiro256 rng(derive_stream_seed(config.seed, 0x7265650000ULL + static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> bootstrap(n);
        for (auto& s : bootstrap) s = rng.below(n);
        auto& nodes = model.trees[static_cast<std::size_t>(t)];
        nodes.reserve(64);
        detail::grow_tree(nodes, x, y, std::move(bootstrap), 0, config.max_depth,
                          positive_label, rng);
    }
    return model;
}

inline int rf_predict(const RfModel& model, std::span<const double> query) {
    if (model.trees.empty()) throw std::invalid_argument("rf_predict: empty model");
    std::map<int, int> votes;
    for (const auto& nodes : model.trees) {
        int at = 0;
        while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
            const auto& node = nodes[static_cast<std::size_t>(at)];
            at = query[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                 : node.right;
        }
        ++votes[nodes[static_cast<std::size_t>(at)].label];
    }
    int best_label = votes.begin()->first;
    int best_count = votes.begin()->second;
    for (auto& [label, count] : votes)
        if (count > best_count) {
            best_label = label;
            best_count = count;
        }
    return best_label;
}

// ---------------------------------------------------------------------------
// Classifier-based similarity over paired feature-vector collections.
// ---------------------------------------------------------------------------

/// Feature vectors of the control and controlled algorithms, paired by the
/// shared run seed.
struct PairedSample {
    std::vector<FeatureVector> control;
    std::vector<FeatureVector> controlled;
    std::vector<std::uint64_t> seeds;

    void validate() const {
        if (control.empty() || control.size() != controlled.size() ||
            control.size() != seeds.size())
            throw std::invalid_argument("paired sample: inconsistent sizes");
        const auto& first = control.front();
        for (const auto* side : {&control, &controlled})
            for (const auto& fv : *side)
                if (fv.layout != first.layout || fv.values.size() != first.values.size())
                    throw std::invalid_argument("paired sample: mixed layouts or lengths");
        auto unique = seeds;
        std::sort(unique.begin(), unique.end());
        if (std::adjacent_find(unique.begin(), unique.end()) != unique.end())
            throw std::invalid_argument("paired sample: duplicate seeds");
    }
};

enum class MlMethod { knn, svm, rf };

inline std::string_view to_string(MlMethod m) {
    switch (m) {
        case MlMethod::knn: return "kNN";
        case MlMethod::svm: return "SVM";
        case MlMethod::rf: return "RF";
    }
    throw std::logic_error("to_string: bad method");
}

struct MlSimilarityResult {
    double similarity = 0.0;     // 1 - 2|0.5 - mean accuracy|
    double fold_std = 0.0;       // spread of the per-fold similarity values
    double mean_accuracy = 0.0;
    double one_minus_accuracy = 0.0;  // the alternative reading, for reference
    std::vector<double> fold_accuracy;
};

/// Labels the control vectors 0 and the controlled vectors 1, runs
/// stratified k-fold cross-validation (a seed's pair always lands in one
/// fold, so folds stay balanced), and maps the mean accuracy through
/// 1 - 2|0.5 - A|: chance-level accuracy means indistinguishable behavior,
/// similarity 1.
inline MlSimilarityResult ml_similarity(const PairedSample& sample, MlMethod method,
                                        int folds = 10, std::uint64_t model_seed = 0) {
    sample.validate();
    const std::size_t pairs = sample.control.size();
    if (folds < 2 || pairs < static_cast<std::size_t>(folds))
        throw std::invalid_argument("ml_similarity: need at least one pair per fold");

    std::vector<std::size_t> order(pairs);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Xoshiro256 shuffler(derive_stream_seed(model_seed, 0xf01d5ULL));
    for (std::size_t k = 0; k + 1 < pairs; ++k)
        std::swap(order[k], order[k + shuffler.below(pairs - k)]);
    std::vector<int> fold_of(pairs);
    for (std::size_t k = 0; k < pairs; ++k) fold_of[order[k]] = static_cast<int>(k) % folds;

    const std::size_t width = sample.control.front().values.size();
    MlSimilarityResult result;
    result.fold_accuracy.reserve(static_cast<std::size_t>(folds));

    for (int f = 0; f < folds; ++f) {
        std::size_t train_pairs = 0;
        for (std::size_t p = 0; p < pairs; ++p) train_pairs += (fold_of[p] != f);

        Matrix train_x(2 * train_pairs, width);
        std::vector<int> train_y(2 * train_pairs);
        std::size_t row = 0;
        for (std::size_t p = 0; p < pairs; ++p) {
            if (fold_of[p] == f) continue;
            train_x.set_row(row, sample.control[p].values);
            train_y[row++] = 0;
            train_x.set_row(row, sample.controlled[p].values);
            train_y[row++] = 1;
        }

        SvmModel svm;
        RfModel rf;
        int k_neighbors = 5;
        switch (method) {
            case MlMethod::knn:
                k_neighbors = std::min<std::size_t>(5, train_x.rows());
                break;
            case MlMethod::svm:
                svm = svm_train(train_x, train_y, 1.0);
                break;
            case MlMethod::rf:
                rf = rf_train(train_x, train_y,
                              {100, 5, derive_stream_seed(model_seed,
                                                          0xf07e57ULL + static_cast<std::uint64_t>(f))});
                break;
        }
        auto predict = [&](std::span<const double> q) {
            switch (method) {
                case MlMethod::knn: return knn_predict(train_x, train_y, q, k_neighbors);
                case MlMethod::svm: return svm_predict(svm, q);
                case MlMethod::rf: return rf_predict(rf, q);
            }
            throw std::logic_error("ml_similarity: bad method");
        };

        int correct = 0, total = 0;
        for (std::size_t p = 0; p < pairs; ++p) {
            if (fold_of[p] != f) continue;
            correct += (predict(sample.control[p].values) == 0);
            correct += (predict(sample.controlled[p].values) == 1);
            total += 2;
        }
        result.fold_accuracy.push_back(static_cast<double>(correct) /
                                       static_cast<double>(total));
    }

    result.mean_accuracy = population_fitness_mean(result.fold_accuracy);
    result.similarity = 1.0 - 2.0 * std::abs(0.5 - result.mean_accuracy);
    result.one_minus_accuracy = 1.0 - result.mean_accuracy;
    std::vector<double> fold_sims(result.fold_accuracy.size());
    for (std::size_t i = 0; i < fold_sims.size(); ++i)
        fold_sims[i] = 1.0 - 2.0 * std::abs(0.5 - result.fold_accuracy[i]);
    result.fold_std = population_fitness_std(fold_sims);
    return result;
}

}  // namespace nimeq

#endif
