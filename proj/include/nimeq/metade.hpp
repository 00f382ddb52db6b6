#ifndef NIMEQ_METADE_HPP
#define NIMEQ_METADE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nimeq/descriptors.hpp"
#include "nimeq/optimizers.hpp"
#include "nimeq/params.hpp"
#include "nimeq/rng.hpp"
#include "nimeq/similarity.hpp"

namespace nimeq {

/// One tuner individual: a hyper-parameter genotype (one gene per tunable
/// parameter of the controlled algorithm) and its behavioral fitness.
struct MetaIndividual {
    std::vector<double> genes;
    double fitness = -std::numeric_limits<double>::infinity();
};

/// DE/rand/1 donor: x_r1 + F * (x_r2 - x_r3) with r1, r2, r3 distinct and
/// different from the target index.
inline std::vector<double> de_mutate_rand1(std::span<const MetaIndividual> population,
                                           std::size_t target, double weight, Xoshiro256& rng) {
    if (population.size() < 4)
        throw std::invalid_argument("de_mutate_rand1: population must hold at least 4 vectors");
    std::size_t r1, r2, r3;
    do r1 = rng.below(population.size()); while (r1 == target);
    do r2 = rng.below(population.size()); while (r2 == target || r2 == r1);
    do r3 = rng.below(population.size()); while (r3 == target || r3 == r1 || r3 == r2);

    std::vector<double> donor(population[r1].genes);
    for (std::size_t j = 0; j < donor.size(); ++j)
        donor[j] += weight * (population[r2].genes[j] - population[r3].genes[j]);
    return donor;
}

inline std::vector<double> de_mutate_rand1(const std::vector<std::vector<double>>& genes,
                                           std::size_t target, double weight, Xoshiro256& rng) {
    std::vector<MetaIndividual> population(genes.size());
    for (std::size_t i = 0; i < genes.size(); ++i) population[i].genes = genes[i];
    return de_mutate_rand1(std::span<const MetaIndividual>(population), target, weight, rng);
}

/// Binomial crossover: each gene comes from the donor with probability CR,
/// and the forced index j_rand always does, so the trial never equals the
/// target vector verbatim.
inline std::vector<double> de_bin_crossover(std::span<const double> target,
                                            std::span<const double> donor, double crossover_rate,
                                            Xoshiro256& rng) {
    if (target.size() != donor.size() || target.empty())
        throw std::invalid_argument("de_bin_crossover: length mismatch");
    const std::size_t forced = rng.below(target.size());
    std::vector<double> trial(target.begin(), target.end());
    for (std::size_t j = 0; j < target.size(); ++j) {
        const bool take = rng.uniform01() < crossover_rate;
        if (take || j == forced) trial[j] = donor[j];
    }
    return trial;
}

/// Clamps every gene into its feasible interval.
inline void repair_to_domain(std::vector<double>& genes,
                             std::span<const HyperParamDomain> domains) {
    if (genes.size() != domains.size())
        throw std::invalid_argument("repair_to_domain: domain count mismatch");
    for (std::size_t j = 0; j < genes.size(); ++j)
        genes[j] = std::clamp(genes[j], domains[j].lower, domains[j].upper);
}

/// Configuration of one tuning campaign: evolve hyper-parameter vectors for
/// the controlled algorithm so that its behavior matches the reference
/// feature vector as closely as possible (cosine similarity, maximized).
/// Every candidate run reuses the shared run seed baked into run_template,
/// which is what keeps initial populations identical to the reference run's.
struct MetaConfig {
    int population_size = 10;  // needs >= 4 for the rand/1 difference
    int generations = 20;
    double weight = 0.5;          // F
    double crossover_rate = 0.9;  // CR
    std::uint64_t seed = 1;

    AlgorithmId controlled = AlgorithmId::acc_fa;
    RunConfig run_template;       // algorithm/params fields are overwritten per candidate
    FeatureVector reference;

    /// Runs the controlled algorithm with the given parameters and returns
    /// its feature vector. Defaults to the in-process path; the harness
    /// swaps in a subprocess-protocol evaluator when configured.
    std::function<FeatureVector(const AlgorithmParams&)> evaluator;

    /// Observer invoked after every candidate evaluation (1-based launch
    /// sequence number); the harness uses it to persist candidate vectors.
    std::function<void(std::uint64_t, const FeatureVector&, double)> on_candidate;

    void validate() const {
        if (population_size < 4)
            throw std::invalid_argument("meta config: population size must be at least 4");
        if (generations < 0) throw std::invalid_argument("meta config: negative generations");
        if (!(weight > 0.0 && weight <= 2.0))
            throw std::invalid_argument("meta config: F must lie in (0, 2]");
        if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
            throw std::invalid_argument("meta config: CR must lie in [0, 1]");
        if (reference.values.empty()) throw std::invalid_argument("meta config: empty reference");
    }
};

inline FeatureVector in_process_evaluation(const MetaConfig& config,
                                           const AlgorithmParams& params) {
    RunConfig run = config.run_template;
    run.algorithm = config.controlled;
    run.params = params;
    return assemble_feature_vector(run_algorithm(run), run.problem);
}

/// Maps genes to controlled-algorithm parameters, runs it with the shared
/// seed and scores the resulting feature vector against the reference. A
/// failed run scores negative infinity instead of aborting the campaign.
inline std::pair<double, FeatureVector> evaluate_candidate(std::span<const double> genes,
                                                           const MetaConfig& config,
                                                           std::string* error = nullptr) {
    const AlgorithmParams params = params_from_genes(config.controlled, genes);
    try {
        FeatureVector fv = config.evaluator ? config.evaluator(params)
                                            : in_process_evaluation(config, params);
        if (fv.layout != config.reference.layout ||
            fv.values.size() != config.reference.values.size())
            throw std::runtime_error("candidate feature vector incomparable with reference");
        const double sim = cosine_similarity(config.reference.values, fv.values);
        return {sim, std::move(fv)};
    } catch (const std::exception& e) {
        if (error) *error = e.what();
        return {-std::numeric_limits<double>::infinity(), FeatureVector{}};
    }
}

struct MetaResult {
    std::vector<double> best_genes;
    AlgorithmParams best_params;
    FeatureVector best_fv;
    double best_fitness = -std::numeric_limits<double>::infinity();
    std::vector<double> history;  // best fitness after initialization and each generation
    std::uint64_t launches = 0;   // controlled-algorithm runs: Np * (T + 1)
    std::vector<std::string> warnings;
};

/// DE/rand/1/bin over the controlled algorithm's hyper-parameter box with
/// one-to-one survivor selection (ties accepted, so the search can drift
/// across plateaus). Trials for a generation are created first and selection
/// is applied synchronously at its end, which keeps results independent of
/// evaluation order.
inline MetaResult run_metade(const MetaConfig& config) {
    config.validate();
    const auto domains = tunable_domains(config.controlled);
    const std::size_t q = domains.size();
    const auto np = static_cast<std::size_t>(config.population_size);

    Xoshiro256 rng(derive_stream_seed(config.seed, 0x3e7aULL));
    MetaResult result;

    auto score = [&](std::span<const double> genes) {
        std::string error;
        auto [fitness, fv] = evaluate_candidate(genes, config, &error);
        ++result.launches;
        if (!error.empty())
            result.warnings.push_back("launch " + std::to_string(result.launches) + ": " + error);
        if (config.on_candidate) config.on_candidate(result.launches, fv, fitness);
        if (fitness > result.best_fitness) {
            result.best_fitness = fitness;
            result.best_genes.assign(genes.begin(), genes.end());
            result.best_fv = fv;
        }
        return fitness;
    };

    std::vector<MetaIndividual> population(np);
    for (auto& individual : population) {
        individual.genes.resize(q);
        for (std::size_t j = 0; j < q; ++j)
            individual.genes[j] = rng.uniform(domains[j].lower, domains[j].upper);
        individual.fitness = score(individual.genes);
    }
    result.history.push_back(result.best_fitness);

    for (int gen = 0; gen < config.generations; ++gen) {
        std::vector<std::vector<double>> trials(np);
        for (std::size_t i = 0; i < np; ++i) {
            auto donor = de_mutate_rand1(std::span<const MetaIndividual>(population), i,
                                         config.weight, rng);
            trials[i] = de_bin_crossover(population[i].genes, donor, config.crossover_rate, rng);
            repair_to_domain(trials[i], domains);
        }
        for (std::size_t i = 0; i < np; ++i) {
            const double trial_fitness = score(trials[i]);
            if (trial_fitness >= population[i].fitness) {
                population[i].genes = std::move(trials[i]);
                population[i].fitness = trial_fitness;
            }
        }
        result.history.push_back(result.best_fitness);
    }

    if (result.best_genes.empty())
        result.best_genes = population.front().genes;  // every launch failed
    result.best_params = params_from_genes(config.controlled, result.best_genes);
    return result;
}

}  // namespace nimeq

#endif
