#ifndef NIMEQ_PARAMS_HPP
#define NIMEQ_PARAMS_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nimeq {

enum class AlgorithmId { acc_pso, acc_fa, pso, fa, fav2, ba };

inline constexpr AlgorithmId kAllAlgorithms[] = {
    AlgorithmId::acc_pso, AlgorithmId::acc_fa, AlgorithmId::pso,
    AlgorithmId::fa,      AlgorithmId::fav2,   AlgorithmId::ba,
};

inline std::string_view algorithm_name(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::acc_pso: return "accPSO";
        case AlgorithmId::acc_fa: return "accFA";
        case AlgorithmId::pso: return "PSO";
        case AlgorithmId::fa: return "FA";
        case AlgorithmId::fav2: return "FAv2";
        case AlgorithmId::ba: return "BA";
    }
    throw std::logic_error("algorithm_name: bad id");
}

inline AlgorithmId algorithm_from_name(std::string_view name) {
    for (AlgorithmId id : kAllAlgorithms)
        if (algorithm_name(id) == name) return id;
    throw std::domain_error("unknown algorithm: " + std::string(name));
}

/// How the single-equation accelerated update's randomization factor evolves
/// over generations. Fixed by default; the decaying modes shrink it as
/// alpha0*exp(-gamma*t) or alpha0*gamma^t.
enum class AccDecay { none, exponential, power };

/// Accelerated PSO / accelerated FA: randomization scale alpha and
/// attraction weight beta.
struct AccParams {
    double alpha = 0.5;
    double beta = 0.2;
    AccDecay decay = AccDecay::none;
    double decay_gamma = 0.7;
};

/// Canonical PSO. c1 scales the global-best term and c2 the personal-best
/// term, following the velocity update equation as written.
struct PsoParams {
    double inertia = 0.7;  // w
    double c1 = 2.0;
    double c2 = 2.0;
};

/// Firefly algorithm (also the two-population variant): randomization alpha
/// (decays by 0.98 each generation), base attractiveness beta0, absorption
/// coefficient gamma.
struct FaParams {
    double alpha = 0.5;
    double beta0 = 1.0;
    double gamma = 0.5;
};

/// Bat algorithm: initial loudness and the pulse-rate constant gamma (also
/// the initial pulse rate). Frequency bounds are fixed configuration, not
/// tuned. The loudness decay multiplier is a fixed 0.98 per acceptance.
/// zero_fitness_init reproduces the literal pseudo-code initialization
/// (fitness = 0 for everyone) instead of evaluating the initial population.
struct BaParams {
    double loudness0 = 1.0;  // A0
    double gamma = 0.1;
    double q_min = 0.0;
    double q_max = 2.0;
    bool zero_fitness_init = false;
};

inline constexpr double kBaLoudnessDecay = 0.98;
inline constexpr double kFaAlphaDecay = 0.98;

using AlgorithmParams = std::variant<AccParams, PsoParams, FaParams, BaParams>;

enum class ControlKind { fixed, deterministic, metaphor };

/// One tunable hyper-parameter: its feasible interval plus the (purely
/// informational) kind of in-run control the algorithm applies to it.
struct HyperParamDomain {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    ControlKind control = ControlKind::fixed;
};

/// Feasible domains of the tunable hyper-parameters, per algorithm. These
/// are the boxes the meta-optimizer searches.
inline std::vector<HyperParamDomain> tunable_domains(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::acc_pso:
        case AlgorithmId::acc_fa:
            return {{"alpha", 0.1, 1.0, ControlKind::fixed},
                    {"beta", 0.1, 1.0, ControlKind::fixed}};
        case AlgorithmId::pso:
            return {{"w", 0.4, 0.9, ControlKind::fixed},
                    {"c1", 1.5, 2.5, ControlKind::fixed},
                    {"c2", 1.5, 2.5, ControlKind::fixed}};
        case AlgorithmId::fa:
        case AlgorithmId::fav2:
            return {{"alpha", 0.1, 1.0, ControlKind::deterministic},
                    {"beta0", 0.5, 1.5, ControlKind::metaphor},
                    {"gamma", 0.1, 1.0, ControlKind::fixed}};
        case AlgorithmId::ba:
            return {{"A0", 0.7, 1.2, ControlKind::deterministic},
                    {"gamma", 0.1, 0.3, ControlKind::metaphor}};
    }
    throw std::logic_error("tunable_domains: bad id");
}

/// Genotype -> phenotype mapping: one gene per tunable hyper-parameter, in
/// the order reported by tunable_domains().
inline AlgorithmParams params_from_genes(AlgorithmId id, std::span<const double> genes) {
    const auto domains = tunable_domains(id);
    if (genes.size() != domains.size())
        throw std::invalid_argument("params_from_genes: gene count mismatch");
    switch (id) {
        case AlgorithmId::acc_pso:
        case AlgorithmId::acc_fa:
            return AccParams{genes[0], genes[1]};
        case AlgorithmId::pso:
            return PsoParams{genes[0], genes[1], genes[2]};
        case AlgorithmId::fa:
        case AlgorithmId::fav2:
            return FaParams{genes[0], genes[1], genes[2]};
        case AlgorithmId::ba:
            return BaParams{genes[0], genes[1]};
    }
    throw std::logic_error("params_from_genes: bad id");
}

inline std::vector<double> genes_from_params(AlgorithmId id, const AlgorithmParams& params) {
    switch (id) {
        case AlgorithmId::acc_pso:
        case AlgorithmId::acc_fa: {
            const auto& p = std::get<AccParams>(params);
            return {p.alpha, p.beta};
        }
        case AlgorithmId::pso: {
            const auto& p = std::get<PsoParams>(params);
            return {p.inertia, p.c1, p.c2};
        }
        case AlgorithmId::fa:
        case AlgorithmId::fav2: {
            const auto& p = std::get<FaParams>(params);
            return {p.alpha, p.beta0, p.gamma};
        }
        case AlgorithmId::ba: {
            const auto& p = std::get<BaParams>(params);
            return {p.loudness0, p.gamma};
        }
    }
    throw std::logic_error("genes_from_params: bad id");
}

/// Manual settings may sit outside the tuning domains but must be finite.
inline void validate_params(AlgorithmId id, const AlgorithmParams& params) {
    for (double g : genes_from_params(id, params))
        if (!std::isfinite(g)) throw std::domain_error("algorithm parameters must be finite");
    if (const auto* ba = std::get_if<BaParams>(&params)) {
        if (!std::isfinite(ba->q_min) || !std::isfinite(ba->q_max) || ba->q_min > ba->q_max)
            throw std::domain_error("BA frequency interval invalid");
    }
}

}  // namespace nimeq

#endif
