#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nimeq/descriptors.hpp"
#include "nimeq/optimizers.hpp"
#include "nimeq/rng.hpp"

using namespace nimeq;

namespace {

// Independent correlation oracle straight from the definition: separate
// passes for the means, the covariance and each standard deviation.
double pearson_oracle(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (double v : x) mx += v;
    for (double v : y) my += v;
    mx /= n;
    my /= n;
    double cov = 0;
    for (std::size_t i = 0; i < x.size(); ++i) cov += (x[i] - mx) * (y[i] - my);
    cov /= n;
    double vx = 0, vy = 0;
    for (double v : x) vx += (v - mx) * (v - mx);
    for (double v : y) vy += (v - my) * (v - my);
    const double sx = std::sqrt(vx / n);
    const double sy = std::sqrt(vy / n);
    return cov / (sx * sy);
}

TrajectoryLog synthetic_log(const std::vector<Matrix>& position_frames,
                            const ProblemSpec& spec) {
    TrajectoryLog log;
    log.config.problem = spec;
    log.config.population_size = static_cast<int>(position_frames.front().rows());
    log.config.max_generations = static_cast<int>(position_frames.size());
    for (const auto& frame : position_frames) {
        GenerationSnapshot snap;
        snap.positions = frame;
        snap.fitness.resize(frame.rows());
        for (std::size_t i = 0; i < frame.rows(); ++i)
            snap.fitness[i] = spec.evaluate(frame.row(i));
        log.generations.push_back(std::move(snap));
    }
    return log;
}

Matrix random_positions(std::size_t np, std::size_t dim, Xoshiro256& rng, double lo = -10,
                        double hi = 10) {
    Matrix m(np, dim);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

}  // namespace

TEST_CASE("fdc of a vector with itself is 1 and with its negation -1") {
    std::vector<double> f{1.0, 5.0, 2.0, 8.0};
    std::vector<double> neg(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) neg[i] = -f[i];
    CHECK(fdc(f, f) == 1.0);
    CHECK(fdc(f, neg) == doctest::Approx(-1.0));
}

TEST_CASE("fdc matches the hand-evaluated case") {
    std::vector<double> f{1.0, 2.0, 3.0};
    std::vector<double> d{3.0, 2.0, 2.0};
    CHECK(fdc(f, d) == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("fdc degenerates to 0 with a flag on constant input") {
    std::vector<double> f{2.0, 2.0, 2.0};
    std::vector<double> d{1.0, 2.0, 3.0};
    bool degenerate = false;
    CHECK(fdc(f, d, &degenerate) == 0.0);
    CHECK(degenerate);
    CHECK(fdc(d, f, &degenerate) == 0.0);
    CHECK(degenerate);
}

TEST_CASE("fdc equals an independent Pearson oracle on random instances") {
    Xoshiro256 rng(123);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.below(9);
        std::vector<double> f(n), d(n);
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = rng.uniform(-10.0, 10.0);
            d[i] = rng.uniform(0.0, 10.0);
        }
        CHECK(std::abs(fdc(f, d) - pearson_oracle(f, d)) <= 1e-12);
    }
}

TEST_CASE("diversity of identical individuals is zero") {
    auto spec = make_sphere(3);
    Matrix positions(4, 3, 1.5);
    CHECK(population_diversity(positions, spec) == 0.0);
}

TEST_CASE("diversity of a symmetric pair") {
    auto spec = make_sphere(1, 0.0, 1.0);  // |L| = 1
    Matrix positions(2, 1);
    positions(0, 0) = 0.0;
    positions(1, 0) = 1.0;
    CHECK(population_diversity(positions, spec) == doctest::Approx(0.5));
}

TEST_CASE("diversity matches a brute-force centroid oracle") {
    auto spec = make_sphere(3);
    Xoshiro256 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const auto positions = random_positions(5, 3, rng);
        double oracle = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            double sq = 0.0;
            for (std::size_t j = 0; j < 3; ++j) {
                double centroid = 0.0;
                for (std::size_t k = 0; k < 5; ++k) centroid += positions(k, j);
                centroid /= 5.0;
                sq += (positions(i, j) - centroid) * (positions(i, j) - centroid);
            }
            oracle += std::sqrt(sq);
        }
        oracle /= search_space_diagonal(spec) * 5.0;
        CHECK(population_diversity(positions, spec) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("diversity is translation invariant and scales with the positions") {
    auto spec = make_sphere(2);
    Xoshiro256 rng(5);
    const auto positions = random_positions(6, 2, rng, -2.0, 2.0);
    const double base = population_diversity(positions, spec);

    Matrix shifted = positions;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 2; ++j) shifted(i, j) += 3.0;
    CHECK(population_diversity(shifted, spec) == doctest::Approx(base).epsilon(1e-12));

    Matrix scaled = positions;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 2; ++j) scaled(i, j) *= 2.5;
    CHECK(population_diversity(scaled, spec) == doctest::Approx(2.5 * base).epsilon(1e-12));

    // Scaling box and positions together leaves the metric unchanged.
    auto wide = make_sphere(2, -25.0, 25.0);
    CHECK(population_diversity(scaled, wide) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("population fitness mean and std") {
    std::vector<double> constant{3.0, 3.0, 3.0};
    CHECK(population_fitness_mean(constant) == doctest::Approx(3.0));
    CHECK(population_fitness_std(constant) == 0.0);

    std::vector<double> pair{-1.0, 1.0};
    CHECK(population_fitness_mean(pair) == doctest::Approx(0.0));
    CHECK(population_fitness_std(pair) == doctest::Approx(1.0));

    std::vector<double> four{1.0, 2.0, 3.0, 4.0};
    CHECK(population_fitness_mean(four) == doctest::Approx(2.5));
    CHECK(population_fitness_std(four) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
}

TEST_CASE("idt sums the step lengths") {
    Matrix still(4, 2, 1.0);
    CHECK(idt(still) == 0.0);

    Matrix line(5, 1);
    for (int t = 0; t < 5; ++t) line(t, 0) = t;
    CHECK(idt(line) == doctest::Approx(4.0));

    Matrix zigzag(3, 2);
    zigzag.set_row(0, std::vector<double>{0.0, 0.0});
    zigzag.set_row(1, std::vector<double>{1.0, 0.0});
    zigzag.set_row(2, std::vector<double>{1.0, 1.0});
    CHECK(idt(zigzag) == doctest::Approx(2.0));
}

TEST_CASE("ifiqr uses interpolated quartiles") {
    std::vector<double> constant{2.0, 2.0, 2.0, 2.0};
    CHECK(ifiqr(constant) == 0.0);

    std::vector<double> five{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(ifiqr(five) == doctest::Approx(2.0));

    std::vector<double> shuffled{4.0, 1.0, 5.0, 3.0, 2.0};
    CHECK(ifiqr(shuffled) == doctest::Approx(2.0));
}

TEST_CASE("ifm is the series mean and permutation invariant") {
    std::vector<double> c{7.0, 7.0};
    CHECK(ifm(c) == doctest::Approx(7.0));
    std::vector<double> two{0.0, 10.0};
    CHECK(ifm(two) == doctest::Approx(5.0));
    std::vector<double> reversed{10.0, 0.0};
    CHECK(ifm(reversed) == doctest::Approx(5.0));
}

TEST_CASE("isi distinguishes straight, closed and stationary paths") {
    Matrix straight(3, 2);
    straight.set_row(0, std::vector<double>{0.0, 0.0});
    straight.set_row(1, std::vector<double>{1.0, 0.0});
    straight.set_row(2, std::vector<double>{2.0, 0.0});
    CHECK(isi(straight) == doctest::Approx(1.0));

    Matrix loop(3, 1);
    loop(0, 0) = 0.0;
    loop(1, 0) = 1.0;
    loop(2, 0) = 0.0;
    CHECK(isi(loop) == doctest::Approx(2.0 / kSinuosityEpsilon));

    Matrix still(3, 1, 4.0);
    CHECK(isi(still) == 0.0);
}

TEST_CASE("idt and isi are order sensitive, ifm and ifiqr are not") {
    Matrix path(4, 1);
    path(0, 0) = 0.0;
    path(1, 0) = 3.0;
    path(2, 0) = 1.0;
    path(3, 0) = 2.0;
    Matrix sorted_path(4, 1);
    for (int t = 0; t < 4; ++t) sorted_path(t, 0) = t * 1.0;

    CHECK(idt(path) != idt(sorted_path));
    CHECK(isi(path) != isi(sorted_path));

    std::vector<double> series{0.0, 3.0, 1.0, 2.0};
    std::vector<double> sorted_series{0.0, 1.0, 2.0, 3.0};
    CHECK(ifm(series) == ifm(sorted_series));
    CHECK(ifiqr(series) == ifiqr(sorted_series));
}

TEST_CASE("feature vector length is 4(T+Np) over a shape grid") {
    auto spec = make_sphere(2);
    Xoshiro256 rng(31);
    for (auto [t, np] : {std::pair{1, 2}, {3, 5}, {10, 4}, {25, 20}}) {
        std::vector<Matrix> frames;
        for (int g = 0; g < t; ++g)
            frames.push_back(random_positions(static_cast<std::size_t>(np), 2, rng));
        const auto fv = assemble_feature_vector(synthetic_log(frames, spec), spec);
        CHECK(fv.values.size() == static_cast<std::size_t>(4 * (t + np)));
        CHECK(fv.values.size() == fv.expected_length());
        for (double v : fv.values) CHECK(std::isfinite(v));
    }
}

TEST_CASE("a frozen population yields zero motion descriptors") {
    auto spec = make_sphere(2);
    Xoshiro256 rng(8);
    const auto frame = random_positions(4, 2, rng);
    const std::vector<Matrix> frames(6, frame);
    const auto log = synthetic_log(frames, spec);
    const auto series = compute_metric_series(log, spec);

    for (double v : series.idt) CHECK(v == 0.0);
    for (double v : series.isi) CHECK(v == 0.0);
    for (double v : series.diversity) CHECK(v == doctest::Approx(series.diversity.front()));
    for (double v : series.fitness_std) CHECK(v == doctest::Approx(series.fitness_std.front()));
}

TEST_CASE("identical logs produce identical feature vectors") {
    RunConfig config;
    config.problem = make_sphere(3);
    config.population_size = 5;
    config.max_generations = 8;
    config.seed = 3;
    config.algorithm = AlgorithmId::fa;
    config.params = FaParams{0.5, 1.0, 0.5};
    const auto log = run_algorithm(config);
    const auto a = assemble_feature_vector(log, config.problem);
    const auto b = assemble_feature_vector(log, config.problem);
    CHECK(a.values == b.values);
    CHECK(a.layout == b.layout);
}

TEST_CASE("incomplete logs are rejected") {
    auto spec = make_sphere(2);
    Xoshiro256 rng(9);
    std::vector<Matrix> frames{random_positions(3, 2, rng)};
    auto log = synthetic_log(frames, spec);
    log.config.max_generations = 2;  // claims more snapshots than recorded
    CHECK_THROWS_AS(assemble_feature_vector(log, spec), std::invalid_argument);
}
