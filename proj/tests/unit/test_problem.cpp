#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nimeq/problem.hpp"
#include "nimeq/rng.hpp"

using namespace nimeq;

TEST_CASE("sphere at the origin is zero") {
    std::vector<double> x(10, 0.0);
    CHECK(sphere_eval(x) == 0.0);
}

TEST_CASE("sphere of all-ones is -D") {
    std::vector<double> x(10, 1.0);
    CHECK(sphere_eval(x) == doctest::Approx(-10.0));
}

TEST_CASE("sphere evaluates the closed form") {
    std::vector<double> x{1.0, 2.0};
    CHECK(sphere_eval(x) == doctest::Approx(-5.0));
}

TEST_CASE("sphere rejects non-finite input") {
    std::vector<double> x{1.0, std::nan("")};
    CHECK_THROWS_AS(sphere_eval(x), std::domain_error);
    x[1] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(sphere_eval(x), std::domain_error);
}

TEST_CASE("sphere is non-positive and permutation/sign invariant") {
    Xoshiro256 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(5);
        for (auto& v : x) v = rng.uniform(-10.0, 10.0);
        const double f = sphere_eval(x);
        CHECK(f <= 0.0);

        auto permuted = x;
        std::rotate(permuted.begin(), permuted.begin() + 2, permuted.end());
        CHECK(sphere_eval(permuted) == doctest::Approx(f));

        auto flipped = x;
        for (auto& v : flipped) v = -v;
        CHECK(sphere_eval(flipped) == doctest::Approx(f));
    }
}

TEST_CASE("distance to optimum") {
    auto spec = make_sphere(2);
    CHECK(distance_to_optimum(spec, spec.optimum_position) == 0.0);
    std::vector<double> x{3.0, 4.0};
    CHECK(distance_to_optimum(spec, x) == doctest::Approx(5.0));

    auto spec4 = make_sphere(4);
    std::vector<double> ones(4, 1.0);
    CHECK(distance_to_optimum(spec4, ones) == doctest::Approx(2.0));

    std::vector<double> wrong{1.0};
    CHECK_THROWS_AS(distance_to_optimum(spec, wrong), std::domain_error);
}

TEST_CASE("distance satisfies the triangle inequality on sampled triples") {
    auto spec = make_sphere(4);
    Xoshiro256 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> a(4), b(4);
        for (int j = 0; j < 4; ++j) {
            a[j] = rng.uniform(-10.0, 10.0);
            b[j] = rng.uniform(-10.0, 10.0);
        }
        double ab = 0.0;
        for (int j = 0; j < 4; ++j) ab += (a[j] - b[j]) * (a[j] - b[j]);
        ab = std::sqrt(ab);
        CHECK(distance_to_optimum(spec, a) <=
              distance_to_optimum(spec, b) + ab + 1e-12);
    }
}

TEST_CASE("search space diagonal") {
    CHECK(search_space_diagonal(make_sphere(1, -1.0, 1.0)) == doctest::Approx(2.0));
    CHECK(search_space_diagonal(make_sphere(4, 0.0, 1.0)) == doctest::Approx(2.0));
    CHECK(search_space_diagonal(make_sphere(10, -10.0, 10.0)) ==
          doctest::Approx(20.0 * std::sqrt(10.0)));
}

TEST_CASE("problems are selected by name") {
    auto spec = make_problem("sphere", 3);
    CHECK(spec.dimension == 3);
    CHECK(spec.evaluate(spec.optimum_position) == spec.optimum_fitness);
    CHECK_THROWS_AS(make_problem("rastrigin", 3), std::domain_error);
}

TEST_CASE("additional problems are registrable behind the same interface") {
    problem_registry()["negsum"] = [](int d, double lo, double hi) {
        ProblemSpec spec;
        spec.name = "negsum";
        spec.dimension = d;
        spec.lower_bound = lo;
        spec.upper_bound = hi;
        spec.optimum_position.assign(static_cast<std::size_t>(d), hi);
        spec.optimum_fitness = hi * d;
        spec.objective = [](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += v;
            return s;
        };
        return spec;
    };
    auto spec = make_problem("negsum", 2, 0.0, 1.0);
    CHECK(spec.evaluate(spec.optimum_position) == doctest::Approx(2.0));
    problem_registry().erase("negsum");
}

TEST_CASE("spec validation catches broken boxes") {
    auto spec = make_sphere(2);
    spec.lower_bound = 1.0;
    spec.upper_bound = -1.0;
    CHECK_THROWS_AS(spec.validate(), std::domain_error);

    spec = make_sphere(2);
    spec.optimum_position = {11.0, 0.0};
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
}
