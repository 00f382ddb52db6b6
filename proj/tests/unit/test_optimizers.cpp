#include <doctest.h>

#include <cmath>
#include <vector>

#include "nimeq/optimizers.hpp"

using namespace nimeq;

namespace {

RunConfig base_config(AlgorithmId id, int np = 4, int dim = 2, int gens = 5,
                      std::uint64_t seed = 1) {
    RunConfig config;
    config.problem = make_sphere(dim);
    config.population_size = np;
    config.max_generations = gens;
    config.seed = seed;
    config.algorithm = id;
    switch (id) {
        case AlgorithmId::acc_pso:
        case AlgorithmId::acc_fa: config.params = AccParams{0.5, 0.2}; break;
        case AlgorithmId::pso: config.params = PsoParams{0.7, 2.0, 2.0}; break;
        case AlgorithmId::fa:
        case AlgorithmId::fav2: config.params = FaParams{0.5, 1.0, 0.5}; break;
        case AlgorithmId::ba: config.params = BaParams{1.0, 0.1}; break;
    }
    return config;
}

/// Hand-built state over given 1-D-or-more positions, evaluated and with all
/// bests in place, for exercising single steps.
PopulationState make_state(const std::vector<std::vector<double>>& positions,
                           const ProblemSpec& problem) {
    RunConfig config;
    config.problem = problem;
    config.population_size = static_cast<int>(positions.size());
    config.max_generations = 1;
    config.seed = 1;
    PopulationState state = initialize_population(config);
    for (std::size_t i = 0; i < positions.size(); ++i) state.positions.set_row(i, positions[i]);
    for (std::size_t i = 0; i < positions.size(); ++i)
        state.fitness[i] = problem.evaluate(state.positions.row(i));
    state.personal_best_positions = state.positions;
    state.personal_best_fitness = state.fitness;
    state.mating_pool = state.positions;
    state.global_best_fitness = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (state.fitness[i] > state.global_best_fitness) {
            state.global_best_fitness = state.fitness[i];
            auto row = state.positions.row(i);
            state.global_best_position.assign(row.begin(), row.end());
        }
    }
    return state;
}

}  // namespace

TEST_CASE("initial populations are identical across algorithms for one seed") {
    const auto reference = initialize_population(base_config(AlgorithmId::acc_pso));
    for (AlgorithmId id : kAllAlgorithms) {
        const auto state = initialize_population(base_config(id));
        CHECK(state.positions == reference.positions);
        CHECK(state.fitness == reference.fitness);
    }
}

TEST_CASE("different seeds give different initial populations") {
    const auto a = initialize_population(base_config(AlgorithmId::pso, 4, 2, 5, 1));
    const auto b = initialize_population(base_config(AlgorithmId::pso, 4, 2, 5, 2));
    CHECK_FALSE(a.positions == b.positions);
}

TEST_CASE("initialization replays the generator stream row-major") {
    RunConfig config;
    config.problem = make_sphere(1, 0.0, 1.0);
    config.population_size = 2;
    config.max_generations = 1;
    config.seed = 1;
    const auto state = initialize_population(config);

    Xoshiro256 rng(1);
    CHECK(state.positions(0, 0) == rng.uniform(0.0, 1.0));
    CHECK(state.positions(1, 0) == rng.uniform(0.0, 1.0));
    CHECK(state.velocities(0, 0) == 0.0);
    CHECK(state.velocities(1, 0) == 0.0);
}

TEST_CASE("accelerated update collapses onto the global best at alpha=0, beta=1") {
    auto spec = make_sphere(2);
    auto state = make_state({{3.0, 4.0}, {1.0, 2.0}}, spec);
    Xoshiro256 rng(1);
    step_acc_pso(state, AccParams{0.0, 1.0}, spec, rng);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(state.positions(i, j) == doctest::Approx(1.0 + static_cast<double>(j)));
}

TEST_CASE("accelerated update is the identity at alpha=0, beta=0") {
    auto spec = make_sphere(2);
    auto state = make_state({{3.0, 4.0}, {1.0, 2.0}}, spec);
    const Matrix before = state.positions;
    Xoshiro256 rng(1);
    step_acc_fa(state, AccParams{0.0, 0.0}, spec, rng);
    CHECK(state.positions == before);
}

TEST_CASE("accelerated update halves the way to the best at beta=0.5") {
    auto spec = make_sphere(2);
    auto state = make_state({{0.0, 0.0}, {0.0, 0.0}}, spec);
    state.global_best_position = {2.0, 2.0};
    Xoshiro256 rng(1);
    step_acc_pso(state, AccParams{0.0, 0.5}, spec, rng);
    CHECK(state.positions(0, 0) == doctest::Approx(1.0));
    CHECK(state.positions(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("accelerated decay modes shrink the randomization over generations") {
    // Power decay with factor 0 keeps the full alpha in generation 0 and
    // removes it entirely afterwards, so the second step must be a no-op
    // once the population has collapsed onto the best.
    auto spec = make_sphere(2);
    auto state = make_state({{3.0, 3.0}, {2.0, 2.0}}, spec);
    AccParams params{0.8, 1.0, AccDecay::power, 0.0};
    Xoshiro256 rng(1);
    step_acc_pso(state, params, spec, rng);  // generation 0: jitter active
    step_acc_pso(state, params, spec, rng);  // generation 1: alpha = 0.8 * 0^1 = 0
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(state.positions(i, j) == state.global_best_position[j]);

    // Exponential decay at t generations scales alpha by exp(-gamma t).
    auto fresh = make_state({{0.0, 0.0}, {0.0, 0.0}}, spec);
    fresh.generation = 3;
    AccParams exp_params{1.0, 0.0, AccDecay::exponential, 0.5};
    Xoshiro256 rng_a(7), rng_b(7);
    step_acc_pso(fresh, exp_params, spec, rng_a);
    const double expected_alpha = 1.0 * std::exp(-0.5 * 3);
    const double eps = rng_b.uniform01();
    CHECK(fresh.positions(0, 0) == doctest::Approx(expected_alpha * (eps - 0.5)));
}

TEST_CASE("PSO's c1 scales the global-best term and c2 the personal-best term") {
    auto spec = make_sphere(1);

    auto state = make_state({{0.0}, {0.0}}, spec);
    state.global_best_position = {3.0};
    state.personal_best_positions.set_row(0, std::vector<double>{5.0});
    state.personal_best_positions.set_row(1, std::vector<double>{5.0});
    Xoshiro256 rng(9), replay(9);
    step_pso(state, PsoParams{0.0, 1.0, 0.0}, spec, rng);
    const double eps1 = replay.uniform01();
    (void)replay.uniform01();  // the unused personal-best draw
    CHECK(state.positions(0, 0) == doctest::Approx(eps1 * 3.0));  // pulled toward g only

    auto other = make_state({{0.0}, {0.0}}, spec);
    other.global_best_position = {3.0};
    other.personal_best_positions.set_row(0, std::vector<double>{5.0});
    other.personal_best_positions.set_row(1, std::vector<double>{5.0});
    Xoshiro256 rng2(9), replay2(9);
    step_pso(other, PsoParams{0.0, 0.0, 1.0}, spec, rng2);
    (void)replay2.uniform01();
    const double eps2 = replay2.uniform01();
    CHECK(other.positions(0, 0) == doctest::Approx(eps2 * 5.0));  // pulled toward pbest only
}

TEST_CASE("the two accelerated algorithms share whole trajectories") {
    for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
        for (auto [alpha, beta] : {std::pair{0.5, 0.2}, {0.9, 0.8}, {0.1, 1.0}}) {
            auto pso_config = base_config(AlgorithmId::acc_pso, 5, 3, 12, seed);
            pso_config.params = AccParams{alpha, beta};
            auto fa_config = pso_config;
            fa_config.algorithm = AlgorithmId::acc_fa;

            const auto a = run_algorithm(pso_config);
            const auto b = run_algorithm(fa_config);
            REQUIRE(a.generations.size() == b.generations.size());
            for (std::size_t t = 0; t < a.generations.size(); ++t) {
                CHECK(a.generations[t].positions == b.generations[t].positions);
                CHECK(a.generations[t].fitness == b.generations[t].fitness);
            }
        }
    }
}

TEST_CASE("PSO with zeroed coefficients freezes the population") {
    auto spec = make_sphere(2);
    auto state = make_state({{3.0, 4.0}, {1.0, 2.0}}, spec);
    const Matrix before = state.positions;
    Xoshiro256 rng(1);
    step_pso(state, PsoParams{0.0, 0.0, 0.0}, spec, rng);
    CHECK(state.positions == before);
    CHECK(state.velocities(0, 0) == 0.0);
}

TEST_CASE("PSO pure inertia carries the velocity through") {
    auto spec = make_sphere(2);
    auto state = make_state({{0.0, 0.0}, {5.0, 5.0}}, spec);
    state.velocities.set_row(0, std::vector<double>{1.0, 0.0});
    Xoshiro256 rng(1);
    step_pso(state, PsoParams{1.0, 0.0, 0.0}, spec, rng);
    CHECK(state.positions(0, 0) == doctest::Approx(1.0));
    CHECK(state.positions(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("PSO stays put when everyone sits on both bests with zero velocity") {
    auto spec = make_sphere(2);
    auto state = make_state({{1.0, 1.0}, {1.0, 1.0}}, spec);
    const Matrix before = state.positions;
    Xoshiro256 rng(1);
    step_pso(state, PsoParams{0.9, 2.5, 2.5}, spec, rng);
    CHECK(state.positions == before);
}

TEST_CASE("FA with equal fitness never moves") {
    auto spec = make_sphere(1);
    auto state = make_state({{2.0}, {-2.0}}, spec);  // both at fitness -4
    const Matrix before = state.positions;
    Xoshiro256 rng(1);
    step_fa(state, FaParams{0.0, 1.0, 0.5}, spec, rng);
    CHECK(state.positions == before);
}

TEST_CASE("FA half-step toward the brighter neighbor") {
    auto spec = make_sphere(1);
    auto state = make_state({{1.0}, {0.0}}, spec);  // f(0) = 0 is brighter
    Xoshiro256 rng(1);
    step_fa(state, FaParams{0.0, 0.5, 0.0}, spec, rng);
    CHECK(state.positions(0, 0) == doctest::Approx(0.5));
    CHECK(state.positions(1, 0) == 0.0);
}

TEST_CASE("FA sweep uses positions as they move (full collapse semantics)") {
    // Brightness order f2 > f1 > f0; with beta0=1, gamma=0, alpha=0 every
    // firefly lands exactly on the last brighter one it saw, at that moment.
    auto spec = make_sphere(1);
    auto state = make_state({{3.0}, {1.0}, {2.0}}, spec);
    Xoshiro256 rng(1);
    step_fa(state, FaParams{0.0, 1.0, 0.0}, spec, rng);
    // i=0 first jumps onto x1=1, then onto x2=2; i=2 then jumps onto x1=1.
    CHECK(state.positions(0, 0) == 2.0);
    CHECK(state.positions(1, 0) == 1.0);
    CHECK(state.positions(2, 0) == 1.0);
}

TEST_CASE("FA randomization factor decays by 0.98 per generation") {
    auto config = base_config(AlgorithmId::fa, 4, 2, 1);
    Xoshiro256 rng(config.seed);
    auto state = initialize_population(config, rng);
    CHECK(state.fa_alpha == doctest::Approx(0.5));
    step_fa(state, std::get<FaParams>(config.params), config.problem, rng);
    CHECK(state.fa_alpha == doctest::Approx(0.5 * 0.98));
}

TEST_CASE("FAv2 replacement accepts only improvements") {
    auto spec = make_sphere(1);
    auto state = make_state({{5.0}, {2.0}}, spec);  // f = -25, -4
    state.mating_pool.set_row(0, std::vector<double>{1.0});  // f = -1, better
    state.mating_pool.set_row(1, std::vector<double>{3.0});  // f = -9, worse
    state.fa_alpha = 0.0;
    Xoshiro256 rng(1);
    step_fav2(state, FaParams{0.0, 1.0, 0.0}, spec, rng);

    CHECK(state.positions(0, 0) == 1.0);  // replaced
    CHECK(state.positions(1, 0) == 2.0);  // kept
    CHECK(state.fitness[0] == doctest::Approx(-1.0));
    CHECK(state.fitness[1] == doctest::Approx(-4.0));
    CHECK(state.global_best_fitness == doctest::Approx(-1.0));
    // Pool regenerated from the elitist positions: only i=1 has a brighter
    // neighbor (i=0), so y1 = x1 + (x0 - x1) = 1 and y0 keeps its old value.
    CHECK(state.mating_pool(1, 0) == 1.0);
    CHECK(state.mating_pool(0, 0) == 1.0);
}

TEST_CASE("FAv2 with an identical mating pool changes nothing") {
    auto spec = make_sphere(2);
    auto state = make_state({{3.0, 0.0}, {1.0, 1.0}}, spec);
    const auto fitness_before = state.fitness;
    state.fa_alpha = 0.0;
    Xoshiro256 rng(1);
    step_fav2(state, FaParams{0.0, 1.0, 0.5}, spec, rng);
    CHECK(state.fitness == fitness_before);
}

TEST_CASE("BA degenerate frequency interval pins every frequency") {
    auto spec = make_sphere(1);
    auto state = make_state({{2.0}, {2.0}}, spec);
    state.loudness = {0.5, 0.5};
    state.pulse_rate = {1.0, 1.0};
    state.frequency = {0.0, 0.0};
    BaParams params{1.0, 0.1, 3.0, 3.0};
    Xoshiro256 rng(1);
    step_ba(state, params, spec, rng);
    CHECK(state.frequency[0] == 3.0);
    CHECK(state.frequency[1] == 3.0);
    // Everyone sat on the best with zero velocity and pulse rate 1, so the
    // move and the Gaussian walk both had no effect.
    CHECK(state.positions(0, 0) == 2.0);
    CHECK(state.positions(1, 0) == 2.0);
}

TEST_CASE("BA zero loudness blocks the acceptance branch") {
    auto spec = make_sphere(1);
    auto state = make_state({{2.0}, {3.0}}, spec);
    state.fitness = {-1e9, -1e9};  // any trial improves, but loudness gates it
    state.loudness = {0.0, 0.0};
    state.pulse_rate = {1.0, 1.0};
    state.frequency = {0.0, 0.0};
    Xoshiro256 rng(1);
    step_ba(state, BaParams{0.0, 0.1}, spec, rng);
    CHECK(state.fitness[0] == -1e9);
    CHECK(state.fitness[1] == -1e9);
    CHECK(state.loudness[0] == 0.0);
    CHECK(state.pulse_rate[0] == 1.0);
}

TEST_CASE("BA zero-fitness fidelity flag reproduces the literal initialization") {
    auto config = base_config(AlgorithmId::ba);
    std::get<BaParams>(config.params).zero_fitness_init = true;
    const auto state = initialize_population(config);
    for (double f : state.fitness) CHECK(f == 0.0);
}

TEST_CASE("a run has exactly T snapshots") {
    auto config = base_config(AlgorithmId::acc_pso, 4, 2, 1);
    CHECK(run_algorithm(config).generations.size() == 1);
    config.max_generations = 17;
    CHECK(run_algorithm(config).generations.size() == 17);
}

TEST_CASE("runs are pure functions of their configuration") {
    for (AlgorithmId id : kAllAlgorithms) {
        const auto config = base_config(id, 5, 3, 10, 42);
        const auto a = run_algorithm(config);
        const auto b = run_algorithm(config);
        REQUIRE(a.generations.size() == b.generations.size());
        for (std::size_t t = 0; t < a.generations.size(); ++t) {
            CHECK(a.generations[t].positions == b.generations[t].positions);
            CHECK(a.generations[t].fitness == b.generations[t].fitness);
        }
        CHECK(a.final_best_fitness == b.final_best_fitness);
    }
}

TEST_CASE("global best never decreases and positions stay inside the box") {
    for (AlgorithmId id : kAllAlgorithms) {
        CAPTURE(algorithm_name(id));
        auto config = base_config(id, 6, 4, 30, 5);
        Xoshiro256 rng(config.seed);
        auto state = initialize_population(config, rng);
        double best = state.global_best_fitness;
        for (int t = 0; t < config.max_generations; ++t) {
            step_algorithm(state, config, rng);
            CHECK(state.global_best_fitness >= best);
            best = state.global_best_fitness;
            for (std::size_t i = 0; i < state.size(); ++i)
                for (std::size_t j = 0; j < state.dim(); ++j) {
                    CHECK(state.positions(i, j) >= config.problem.lower_bound);
                    CHECK(state.positions(i, j) <= config.problem.upper_bound);
                }
        }
    }
}

TEST_CASE("run config validation") {
    auto config = base_config(AlgorithmId::pso);
    config.population_size = 1;
    CHECK_THROWS_AS(config.validate(), std::domain_error);
    config = base_config(AlgorithmId::pso);
    config.max_generations = 0;
    CHECK_THROWS_AS(config.validate(), std::domain_error);
    config = base_config(AlgorithmId::pso);
    config.params = PsoParams{std::nan(""), 2.0, 2.0};
    CHECK_THROWS_AS(config.validate(), std::domain_error);
}
