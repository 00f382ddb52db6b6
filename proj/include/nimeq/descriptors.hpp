#ifndef NIMEQ_DESCRIPTORS_HPP
#define NIMEQ_DESCRIPTORS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nimeq/matrix.hpp"
#include "nimeq/optimizers.hpp"
#include "nimeq/problem.hpp"

namespace nimeq {

/// Net-displacement floor of the sinuosity index; closed paths divide by
/// this instead of zero so feature vectors stay finite.
inline constexpr double kSinuosityEpsilon = 1e-12;

/// Identifies the feature-vector element order: the generation-major
/// population block (fdc, diversity, fitness mean, fitness std per
/// generation) followed by the individual-major block (idt, ifiqr, ifm, isi
/// per individual). Written into every feature-vector file header; vectors
/// with different tags are never compared.
inline constexpr const char* kFeatureLayout = "genmajor-indmajor-v1";

/// Fitness-distance correlation: Pearson correlation between the population
/// fitness values and the distances to the known optimum, with population
/// (1/Np) normalization. A zero-variance input makes the correlation
/// undefined; the value is then 0 and *degenerate is set.
inline double fdc(std::span<const double> fitness, std::span<const double> distances,
                  bool* degenerate = nullptr) {
    if (fitness.size() != distances.size() || fitness.size() < 2)
        throw std::invalid_argument("fdc: need two equal-length samples of size >= 2");
    if (degenerate) *degenerate = false;
    const auto n = static_cast<double>(fitness.size());

    double mean_f = 0.0, mean_d = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        mean_f += fitness[i];
        mean_d += distances[i];
    }
    mean_f /= n;
    mean_d /= n;

    double cov = 0.0, var_f = 0.0, var_d = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        const double df = fitness[i] - mean_f;
        const double dd = distances[i] - mean_d;
        cov += df * dd;
        var_f += df * df;
        var_d += dd * dd;
    }
    cov /= n;
    var_f /= n;
    var_d /= n;

    if (var_f == 0.0 || var_d == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return cov / std::sqrt(var_f * var_d);
}

/// Population diversity: mean Euclidean distance of the individuals to the
/// population centroid, scaled by the search-space diagonal.
inline double population_diversity(const Matrix& positions, const ProblemSpec& spec) {
    if (positions.rows() < 1) throw std::invalid_argument("population_diversity: empty population");
    const std::size_t np = positions.rows();
    const std::size_t dim = positions.cols();

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < dim; ++j) centroid[j] += positions(i, j);
    for (double& c : centroid) c /= static_cast<double>(np);

    double total = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = positions(i, j) - centroid[j];
            sq += d * d;
        }
        total += std::sqrt(sq);
    }
    return total / (search_space_diagonal(spec) * static_cast<double>(np));
}

inline double population_fitness_mean(std::span<const double> fitness) {
    if (fitness.empty()) throw std::invalid_argument("population_fitness_mean: empty");
    double sum = 0.0;
    for (double f : fitness) sum += f;
    return sum / static_cast<double>(fitness.size());
}

/// Population standard deviation (divisor Np, not Np-1).
inline double population_fitness_std(std::span<const double> fitness) {
    const double mean = population_fitness_mean(fitness);
    double sq = 0.0;
    for (double f : fitness) sq += (f - mean) * (f - mean);
    return std::sqrt(sq / static_cast<double>(fitness.size()));
}

/// Individual distance traveled: arc length of one individual's trajectory
/// over the logged snapshots (rows of positions_over_time).
inline double idt(const Matrix& positions_over_time) {
    double total = 0.0;
    for (std::size_t t = 0; t + 1 < positions_over_time.rows(); ++t) {
        double sq = 0.0;
        for (std::size_t j = 0; j < positions_over_time.cols(); ++j) {
            const double d = positions_over_time(t + 1, j) - positions_over_time(t, j);
            sq += d * d;
        }
        total += std::sqrt(sq);
    }
    return total;
}

/// Quantile by linear interpolation between order statistics: the p-quantile
/// sits at rank p*(n-1) of the ascending sort. Fixed project-wide.
inline double interpolated_quantile(std::vector<double> sorted, double p) {
    const double rank = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(rank);
    const double frac = rank - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

/// Individual fitness inter-quartile range: Q3 - Q1 of one individual's
/// fitness series.
inline double ifiqr(std::span<const double> fitness_over_time) {
    if (fitness_over_time.empty()) throw std::invalid_argument("ifiqr: empty series");
    std::vector<double> sorted(fitness_over_time.begin(), fitness_over_time.end());
    std::sort(sorted.begin(), sorted.end());
    return interpolated_quantile(sorted, 0.75) - interpolated_quantile(sorted, 0.25);
}

/// Individual fitness mean over the series.
inline double ifm(std::span<const double> fitness_over_time) {
    return population_fitness_mean(fitness_over_time);
}

/// Individual sinuosity index: arc length over net displacement between the
/// first and last logged positions. 0 for a stationary individual; for a
/// closed path with nonzero arc length the displacement is floored at
/// kSinuosityEpsilon, giving a large finite value.
inline double isi(const Matrix& positions_over_time) {
    const double arc = idt(positions_over_time);
    if (arc == 0.0) return 0.0;
    double sq = 0.0;
    const std::size_t last = positions_over_time.rows() - 1;
    for (std::size_t j = 0; j < positions_over_time.cols(); ++j) {
        const double d = positions_over_time(0, j) - positions_over_time(last, j);
        sq += d * d;
    }
    return arc / std::max(std::sqrt(sq), kSinuosityEpsilon);
}

/// Flat behavioral descriptor of one run, of length exactly 4*(T + Np).
struct FeatureVector {
    std::vector<double> values;
    int generations = 0;      // T
    int population_size = 0;  // Np
    int dimension = 0;        // D (metadata only; not part of the length)
    std::string layout = kFeatureLayout;

    std::size_t expected_length() const {
        return 4 * static_cast<std::size_t>(generations + population_size);
    }
};

/// All eight metric series of one run: the population metrics indexed by
/// generation and the individual metrics indexed by individual.
struct MetricSeries {
    std::vector<double> fdc, diversity, fitness_mean, fitness_std;  // length T
    std::vector<double> idt, ifiqr, ifm, isi;                       // length Np
};

inline MetricSeries compute_metric_series(const TrajectoryLog& log, const ProblemSpec& spec) {
    const auto t_count = log.generations.size();
    if (t_count == 0 || t_count != static_cast<std::size_t>(log.config.max_generations))
        throw std::invalid_argument("compute_metric_series: incomplete trajectory log");
    const std::size_t np = log.generations.front().positions.rows();
    const std::size_t dim = log.generations.front().positions.cols();

    MetricSeries series;
    std::vector<double> distances(np);
    for (const auto& snap : log.generations) {
        for (std::size_t i = 0; i < np; ++i)
            distances[i] = distance_to_optimum(spec, snap.positions.row(i));
        series.fdc.push_back(fdc(snap.fitness, distances));
        series.diversity.push_back(population_diversity(snap.positions, spec));
        series.fitness_mean.push_back(population_fitness_mean(snap.fitness));
        series.fitness_std.push_back(population_fitness_std(snap.fitness));
    }

    Matrix path(t_count, dim);
    std::vector<double> fitness_path(t_count);
    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t t = 0; t < t_count; ++t) {
            path.set_row(t, log.generations[t].positions.row(i));
            fitness_path[t] = log.generations[t].fitness[i];
        }
        series.idt.push_back(idt(path));
        series.ifiqr.push_back(ifiqr(fitness_path));
        series.ifm.push_back(ifm(fitness_path));
        series.isi.push_back(isi(path));
    }
    return series;
}

/// Computes the four population metrics for every snapshot and the four
/// individual metrics for every individual, and packs them in the
/// kFeatureLayout order.
inline FeatureVector assemble_feature_vector(const TrajectoryLog& log, const ProblemSpec& spec) {
    const MetricSeries series = compute_metric_series(log, spec);
    const std::size_t t_count = series.fdc.size();
    const std::size_t np = series.idt.size();

    FeatureVector fv;
    fv.generations = static_cast<int>(t_count);
    fv.population_size = static_cast<int>(np);
    fv.dimension = log.config.problem.dimension;
    fv.values.reserve(4 * (t_count + np));
    for (std::size_t t = 0; t < t_count; ++t) {
        fv.values.push_back(series.fdc[t]);
        fv.values.push_back(series.diversity[t]);
        fv.values.push_back(series.fitness_mean[t]);
        fv.values.push_back(series.fitness_std[t]);
    }
    for (std::size_t i = 0; i < np; ++i) {
        fv.values.push_back(series.idt[i]);
        fv.values.push_back(series.ifiqr[i]);
        fv.values.push_back(series.ifm[i]);
        fv.values.push_back(series.isi[i]);
    }
    return fv;
}

}  // namespace nimeq

#endif
