#ifndef NIMEQ_SIMILARITY_HPP
#define NIMEQ_SIMILARITY_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "nimeq/descriptors.hpp"

namespace nimeq {

inline constexpr double kTheoremCosineThreshold = 0.99;
inline constexpr double kStrictMatchTolerance = 1e-9;

/// Cosine similarity with the absolute value in the numerator:
/// |a.b| / (||a|| ||b||), so the result lies in [0, 1]. The denominator is
/// computed as sqrt((a.a)*(b.b)), which makes the result exactly 1 for
/// identical vectors. Zero-norm inputs are rejected.
inline double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine_similarity: length mismatch");
    double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        norm_a += a[i] * a[i];
        norm_b += b[i] * b[i];
    }
    if (norm_a == 0.0 || norm_b == 0.0)
        throw std::domain_error("cosine_similarity: zero-norm vector");
    return std::min(std::abs(dot) / std::sqrt(norm_a * norm_b), 1.0);
}

/// Similarity form of the symmetric mean absolute percentage error:
/// 1 - mean(|a_i - b_i| / |a_i + b_i|). A term with a_i + b_i == 0
/// contributes 0 when both entries are zero and 1 (maximal disagreement)
/// otherwise.
inline double smape_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("smape_similarity: length mismatch");
    if (a.empty()) throw std::invalid_argument("smape_similarity: empty vectors");
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double denom = std::abs(a[i] + b[i]);
        if (denom == 0.0)
            total += (a[i] == 0.0 && b[i] == 0.0) ? 0.0 : 1.0;
        else
            total += std::abs(a[i] - b[i]) / denom;
    }
    return 1.0 - total / static_cast<double>(a.size());
}

/// Ranks with ties replaced by the average of the tied rank positions
/// (1-based fractional ranks).
inline std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

/// Spearman's rank correlation: Pearson correlation of the average-rank
/// transforms. A constant input has no rank variance; the value is then 0
/// and *degenerate is set.
inline double spearman_rho(std::span<const double> a, std::span<const double> b,
                           bool* degenerate = nullptr) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("spearman_rho: need two equal-length vectors of size >= 2");
    if (degenerate) *degenerate = false;

    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const auto n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0;  // mean rank is fixed

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = ra[i] - mean;
        const double db = rb[i] - mean;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return cov / std::sqrt(var_a * var_b);
}

enum class CorrelationStrength { very_weak, weak, moderate, strong, very_strong };

inline std::string_view to_string(CorrelationStrength s) {
    switch (s) {
        case CorrelationStrength::very_weak: return "very weak";
        case CorrelationStrength::weak: return "weak";
        case CorrelationStrength::moderate: return "moderate";
        case CorrelationStrength::strong: return "strong";
        case CorrelationStrength::very_strong: return "very strong";
    }
    throw std::logic_error("to_string: bad strength");
}

/// Maps |v| onto the five-band strength scale: below 0.20 very weak, then
/// weak, moderate, strong in 0.20 steps, and very strong from 0.80 up.
/// Inputs outside [-1, 1] are rejected (a 1e-12 rounding slack is allowed).
inline CorrelationStrength interpret_correlation(double v) {
    double m = std::abs(v);
    if (m > 1.0 + 1e-12) throw std::domain_error("interpret_correlation: out of [-1, 1]");
    m = std::min(m, 1.0);
    if (m < 0.20) return CorrelationStrength::very_weak;
    if (m < 0.40) return CorrelationStrength::weak;
    if (m < 0.60) return CorrelationStrength::moderate;
    if (m < 0.80) return CorrelationStrength::strong;
    return CorrelationStrength::very_strong;
}

struct EquivalenceVerdict {
    bool theorem_equivalent = false;  // cosine similarity within 1% of unity
    bool strictly_equivalent = false;  // element-wise match within tolerance
    double cosine = 0.0;
    double max_abs_difference = 0.0;
};

/// Renders the equivalence verdict for a pair of feature vectors: the
/// theorem form (cosine similarity >= 0.99) and the strict form
/// (element-wise equality within 1e-9 absolute). Vectors with different
/// layouts or shapes are not comparable.
inline EquivalenceVerdict equivalence_verdict(const FeatureVector& a, const FeatureVector& b) {
    if (a.layout != b.layout || a.values.size() != b.values.size())
        throw std::invalid_argument("equivalence_verdict: incomparable feature vectors");
    EquivalenceVerdict verdict;
    verdict.cosine = cosine_similarity(a.values, b.values);
    verdict.theorem_equivalent = verdict.cosine >= kTheoremCosineThreshold;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        verdict.max_abs_difference =
            std::max(verdict.max_abs_difference, std::abs(a.values[i] - b.values[i]));
    verdict.strictly_equivalent = verdict.max_abs_difference <= kStrictMatchTolerance;
    return verdict;
}

struct SummaryStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std = 0.0;
    double median = 0.0;
};

/// Five-number summary used by every report table. The standard deviation
/// uses the population divisor N, matching the population fitness metric.
inline SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    SummaryStats s;
    s.min = sorted.front();
    s.max = sorted.back();
    s.mean = population_fitness_mean(values);
    s.std = population_fitness_std(values);
    const std::size_t n = sorted.size();
    s.median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return s;
}

}  // namespace nimeq

#endif
