#ifndef NIMEQ_OPTIMIZERS_HPP
#define NIMEQ_OPTIMIZERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nimeq/matrix.hpp"
#include "nimeq/params.hpp"
#include "nimeq/problem.hpp"
#include "nimeq/rng.hpp"

namespace nimeq {

/// Everything a single run needs. Runs are pure functions of this struct:
/// identical configs (including the seed) give identical trajectories.
struct RunConfig {
    ProblemSpec problem;
    int population_size = 20;  // Np
    int max_generations = 500;  // T
    std::uint64_t seed = 1;
    AlgorithmId algorithm = AlgorithmId::acc_pso;
    AlgorithmParams params = AccParams{};

    void validate() const {
        problem.validate();
        if (population_size < 2)
            throw std::domain_error("run config: population size must be at least 2");
        if (max_generations < 1)
            throw std::domain_error("run config: generation count must be at least 1");
        validate_params(algorithm, params);
    }
};

struct PopulationState {
    Matrix positions;   // Np x D
    Matrix velocities;  // Np x D, used by PSO and BA
    std::vector<double> fitness;

    Matrix personal_best_positions;  // PSO
    std::vector<double> personal_best_fitness;

    std::vector<double> global_best_position;
    double global_best_fitness = 0.0;

    // BA per-individual state
    std::vector<double> loudness;
    std::vector<double> pulse_rate;
    std::vector<double> frequency;

    // FA family
    double fa_alpha = 0.0;  // current (decaying) randomization factor
    Matrix mating_pool;     // FAv2 candidate population

    int generation = 0;  // completed generations

    std::size_t size() const { return positions.rows(); }
    std::size_t dim() const { return positions.cols(); }
};

struct GenerationSnapshot {
    Matrix positions;
    std::vector<double> fitness;
};

/// Per-run behavior record: one snapshot per generation, taken at the fixed
/// sampling point right after the generation's step completes.
struct TrajectoryLog {
    RunConfig config;
    std::vector<GenerationSnapshot> generations;
    std::vector<double> final_best_position;
    double final_best_fitness = 0.0;
};

namespace detail {

inline double clamp_to_box(double v, const ProblemSpec& p) {
    return std::clamp(v, p.lower_bound, p.upper_bound);
}

inline void clamp_row(std::span<double> row, const ProblemSpec& p) {
    for (double& v : row) v = clamp_to_box(v, p);
}

inline void evaluate_all(PopulationState& state, const ProblemSpec& problem) {
    for (std::size_t i = 0; i < state.size(); ++i)
        state.fitness[i] = problem.evaluate(state.positions.row(i));
}

inline void update_global_best(PopulationState& state) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state.fitness[i] > state.global_best_fitness) {
            state.global_best_fitness = state.fitness[i];
            const auto row = state.positions.row(i);
            state.global_best_position.assign(row.begin(), row.end());
        }
    }
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        sum += d * d;
    }
    return sum;
}

/// Randomization factor of the accelerated update at generation t (0-based).
inline double acc_alpha_at(const AccParams& p, int t) {
    switch (p.decay) {
        case AccDecay::none: return p.alpha;
        case AccDecay::exponential: return p.alpha * std::exp(-p.decay_gamma * t);
        case AccDecay::power: return p.alpha * std::pow(p.decay_gamma, t);
    }
    throw std::logic_error("acc_alpha_at: bad decay mode");
}

/// Shared move of the two accelerated algorithms. Their update equations are
/// term rearrangements of each other, so one expression serves both; this is
/// what makes equal seeds produce identical trajectories for the pair. One
/// uniform is consumed per coordinate, row-major.
inline void acc_move(PopulationState& state, const AccParams& params,
                     const ProblemSpec& problem, Xoshiro256& rng) {
    const double alpha = acc_alpha_at(params, state.generation);
    const double beta = params.beta;
    for (std::size_t i = 0; i < state.size(); ++i) {
        auto row = state.positions.row(i);
        for (std::size_t j = 0; j < state.dim(); ++j) {
            const double eps = rng.uniform01();
            row[j] = (1.0 - beta) * row[j] + beta * state.global_best_position[j] +
                     alpha * (eps - 0.5);
        }
        clamp_row(row, problem);
    }
}

}  // namespace detail

/// Draws the initial population uniformly from the problem box in a fixed
/// row-major order (individual 0 coordinate 0, ..., last individual last
/// coordinate) before anything algorithm-specific touches the generator.
/// Algorithm-specific state is then set up without consuming randomness, so
/// every algorithm sees the exact same initial population for a given seed.
inline PopulationState initialize_population(const RunConfig& config, Xoshiro256& rng) {
    const auto np = static_cast<std::size_t>(config.population_size);
    const auto dim = static_cast<std::size_t>(config.problem.dimension);

    PopulationState state;
    state.positions = Matrix(np, dim);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            state.positions(i, j) = rng.uniform(config.problem.lower_bound,
                                                config.problem.upper_bound);

    state.velocities = Matrix(np, dim, 0.0);
    state.fitness.resize(np);
    detail::evaluate_all(state, config.problem);

    state.global_best_fitness = -std::numeric_limits<double>::infinity();
    detail::update_global_best(state);

    state.personal_best_positions = state.positions;
    state.personal_best_fitness = state.fitness;
    state.mating_pool = state.positions;

    if (config.algorithm == AlgorithmId::ba) {
        const auto& ba = std::get<BaParams>(config.params);
        state.loudness.assign(np, ba.loudness0);
        state.pulse_rate.assign(np, ba.gamma);
        state.frequency.assign(np, 0.0);
        if (ba.zero_fitness_init) std::fill(state.fitness.begin(), state.fitness.end(), 0.0);
    }
    if (config.algorithm == AlgorithmId::fa || config.algorithm == AlgorithmId::fav2)
        state.fa_alpha = std::get<FaParams>(config.params).alpha;

    return state;
}

inline PopulationState initialize_population(const RunConfig& config) {
    Xoshiro256 rng(config.seed);
    return initialize_population(config, rng);
}

/// Accelerated PSO, position form: x' = (1-beta)x + beta*g + alpha*(eps-1/2).
inline void step_acc_pso(PopulationState& state, const AccParams& params,
                         const ProblemSpec& problem, Xoshiro256& rng) {
    detail::acc_move(state, params, problem, rng);
    detail::evaluate_all(state, problem);
    detail::update_global_best(state);
    ++state.generation;
}

/// Accelerated FA: x' = x + beta*(g - x) + alpha*(eps-1/2), with g the global
/// best. Algebraically identical to the accelerated PSO update; evaluated in
/// the same operation order so equal seeds yield equal trajectories.
inline void step_acc_fa(PopulationState& state, const AccParams& params,
                        const ProblemSpec& problem, Xoshiro256& rng) {
    detail::acc_move(state, params, problem, rng);
    detail::evaluate_all(state, problem);
    detail::update_global_best(state);
    ++state.generation;
}

/// Canonical PSO with inertia weight. Velocities and positions are updated
/// synchronously for the whole population against the bests of the previous
/// evaluation, then everyone is re-evaluated and personal/global bests
/// updated one-to-one. Two uniforms per coordinate: the global-best epsilon,
/// then the personal-best epsilon.
inline void step_pso(PopulationState& state, const PsoParams& params,
                     const ProblemSpec& problem, Xoshiro256& rng) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        auto pos = state.positions.row(i);
        auto vel = state.velocities.row(i);
        const auto pbest = state.personal_best_positions.row(i);
        for (std::size_t j = 0; j < state.dim(); ++j) {
            const double eps1 = rng.uniform01();
            const double eps2 = rng.uniform01();
            vel[j] = params.inertia * vel[j] +
                     params.c1 * eps1 * (state.global_best_position[j] - pos[j]) +
                     params.c2 * eps2 * (pbest[j] - pos[j]);
            pos[j] += vel[j];
        }
        detail::clamp_row(pos, problem);
    }
    detail::evaluate_all(state, problem);
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state.fitness[i] > state.personal_best_fitness[i]) {
            state.personal_best_fitness[i] = state.fitness[i];
            state.personal_best_positions.set_row(i, state.positions.row(i));
            if (state.fitness[i] > state.global_best_fitness) {
                state.global_best_fitness = state.fitness[i];
                const auto row = state.positions.row(i);
                state.global_best_position.assign(row.begin(), row.end());
            }
        }
    }
    ++state.generation;
}

/// Firefly algorithm, literal double-loop sweep: every firefly i moves toward
/// every brighter j in turn, using the positions as they mutate during the
/// sweep. Brightness comes from the previous evaluation; the population is
/// re-evaluated once per generation, after the sweep. The randomization
/// factor decays by 0.98 each generation.
inline void step_fa(PopulationState& state, const FaParams& params,
                    const ProblemSpec& problem, Xoshiro256& rng) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        auto xi = state.positions.row(i);
        for (std::size_t j = 0; j < state.size(); ++j) {
            if (!(state.fitness[j] > state.fitness[i])) continue;
            const auto xj = state.positions.row(j);
            const double r2 = detail::squared_distance(xi, xj);
            const double attractiveness = params.beta0 * std::exp(-params.gamma * r2);
            for (std::size_t d = 0; d < state.dim(); ++d) {
                const double eps = rng.uniform01();
                xi[d] += attractiveness * (xj[d] - xi[d]) + state.fa_alpha * (eps - 0.5);
            }
            detail::clamp_row(xi, problem);
        }
    }
    state.fa_alpha *= kFaAlphaDecay;
    detail::evaluate_all(state, problem);
    detail::update_global_best(state);
    ++state.generation;
}

/// Two-population firefly variant. Each generation first evaluates the
/// mating-pool candidates and lets them replace their parents one-to-one,
/// then regenerates the mating pool with the pairwise attraction rule applied
/// to the (fixed) elitist positions: y_i is rewritten for every brighter
/// neighbor of i, so the last attraction wins. Individuals with no brighter
/// neighbor keep their previous candidate.
inline void step_fav2(PopulationState& state, const FaParams& params,
                      const ProblemSpec& problem, Xoshiro256& rng) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double trial = problem.evaluate(state.mating_pool.row(i));
        if (trial > state.fitness[i]) {
            state.positions.set_row(i, state.mating_pool.row(i));
            state.fitness[i] = trial;
            if (state.fitness[i] > state.global_best_fitness) {
                state.global_best_fitness = state.fitness[i];
                const auto row = state.positions.row(i);
                state.global_best_position.assign(row.begin(), row.end());
            }
        }
    }
    for (std::size_t i = 0; i < state.size(); ++i) {
        const auto xi = state.positions.row(i);
        for (std::size_t j = 0; j < state.size(); ++j) {
            if (!(state.fitness[j] > state.fitness[i])) continue;
            const auto xj = state.positions.row(j);
            const double r2 = detail::squared_distance(xi, xj);
            const double attractiveness = params.beta0 * std::exp(-params.gamma * r2);
            auto yi = state.mating_pool.row(i);
            for (std::size_t d = 0; d < state.dim(); ++d) {
                const double eps = rng.uniform01();
                yi[d] = xi[d] + attractiveness * (xj[d] - xi[d]) + state.fa_alpha * (eps - 0.5);
            }
            detail::clamp_row(yi, problem);
        }
    }
    state.fa_alpha *= kFaAlphaDecay;
    ++state.generation;
}

/// Bat algorithm, sequential per-individual sweep. Each bat in turn: evaluate
/// its current position; accept the value into its sticky fitness with
/// probability given by its loudness (updating loudness and pulse rate);
/// update the global best; move with a frequency-scaled velocity away from
/// the best; then with probability 1 - pulse_rate replace the position by a
/// Gaussian walk around the best scaled by the mean pulse rate.
inline void step_ba(PopulationState& state, const BaParams& params,
                    const ProblemSpec& problem, Xoshiro256& rng) {
    const auto np = state.size();
    for (std::size_t i = 0; i < np; ++i) {
        auto pos = state.positions.row(i);
        const double trial = problem.evaluate(pos);

        if (trial > state.fitness[i] && rng.uniform01() < state.loudness[i]) {
            state.fitness[i] = trial;
            state.loudness[i] *= kBaLoudnessDecay;
            state.pulse_rate[i] *= 1.0 - std::exp(-params.gamma * (state.generation + 1));
        }
        if (trial > state.global_best_fitness) {
            state.global_best_fitness = trial;
            state.global_best_position.assign(pos.begin(), pos.end());
        }

        state.frequency[i] = params.q_min + (params.q_max - params.q_min) * rng.uniform01();
        auto vel = state.velocities.row(i);
        for (std::size_t j = 0; j < state.dim(); ++j) {
            vel[j] += (pos[j] - state.global_best_position[j]) * state.frequency[i];
            pos[j] += vel[j];
        }
        detail::clamp_row(pos, problem);

        if (rng.uniform01() > state.pulse_rate[i]) {
            double mean_rate = 0.0;
            for (double r : state.pulse_rate) mean_rate += r;
            mean_rate /= static_cast<double>(np);
            for (std::size_t j = 0; j < state.dim(); ++j)
                pos[j] = state.global_best_position[j] + rng.normal01() * mean_rate;
            detail::clamp_row(pos, problem);
        }
    }
    ++state.generation;
}

inline void step_algorithm(PopulationState& state, const RunConfig& config, Xoshiro256& rng) {
    switch (config.algorithm) {
        case AlgorithmId::acc_pso:
            step_acc_pso(state, std::get<AccParams>(config.params), config.problem, rng);
            return;
        case AlgorithmId::acc_fa:
            step_acc_fa(state, std::get<AccParams>(config.params), config.problem, rng);
            return;
        case AlgorithmId::pso:
            step_pso(state, std::get<PsoParams>(config.params), config.problem, rng);
            return;
        case AlgorithmId::fa:
            step_fa(state, std::get<FaParams>(config.params), config.problem, rng);
            return;
        case AlgorithmId::fav2:
            step_fav2(state, std::get<FaParams>(config.params), config.problem, rng);
            return;
        case AlgorithmId::ba:
            step_ba(state, std::get<BaParams>(config.params), config.problem, rng);
            return;
    }
    throw std::logic_error("step_algorithm: bad id");
}

/// Runs the configured algorithm for exactly T generations and records a
/// snapshot of positions and fitness after every generation's step.
inline TrajectoryLog run_algorithm(const RunConfig& config) {
    config.validate();
    Xoshiro256 rng(config.seed);
    PopulationState state = initialize_population(config, rng);

    TrajectoryLog log;
    log.config = config;
    log.generations.reserve(static_cast<std::size_t>(config.max_generations));
    for (int t = 0; t < config.max_generations; ++t) {
        step_algorithm(state, config, rng);
        log.generations.push_back({state.positions, state.fitness});
    }
    log.final_best_position = state.global_best_position;
    log.final_best_fitness = state.global_best_fitness;
    return log;
}

}  // namespace nimeq

#endif
