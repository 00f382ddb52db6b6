#ifndef NIMEQ_PROBLEM_HPP
#define NIMEQ_PROBLEM_HPP

#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nimeq {

/// Box-constrained continuous maximization problem with a known optimum.
/// The box is uniform: the same [lower, upper] interval on every coordinate.
struct ProblemSpec {
    std::string name;
    int dimension = 0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    std::vector<double> optimum_position;
    double optimum_fitness = 0.0;
    bool maximize = true;
    std::function<double(std::span<const double>)> objective;

    double evaluate(std::span<const double> x) const { return objective(x); }

    void validate() const {
        if (dimension < 1) throw std::domain_error("problem: dimension must be positive");
        if (!(lower_bound < upper_bound)) throw std::domain_error("problem: lower bound must be below upper bound");
        if (optimum_position.size() != static_cast<std::size_t>(dimension))
            throw std::domain_error("problem: optimum/dimension mismatch");
        for (double v : optimum_position)
            if (v < lower_bound || v > upper_bound)
                throw std::domain_error("problem: optimum outside the box");
        if (objective(optimum_position) != optimum_fitness)
            throw std::domain_error("problem: optimum fitness does not match evaluation");
    }
};

/// Sphere objective in maximization form: f(x) = -sum(x_i^2), maximum 0 at
/// the origin. Rejects non-finite inputs.
inline double sphere_eval(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) {
        if (!std::isfinite(v)) throw std::domain_error("sphere_eval: non-finite input");
        sum += v * v;
    }
    return -sum;
}

/// Euclidean distance from x to the problem's known optimum (the FDC input).
inline double distance_to_optimum(const ProblemSpec& spec, std::span<const double> x) {
    if (x.size() != spec.optimum_position.size())
        throw std::domain_error("distance_to_optimum: dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - spec.optimum_position[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

/// Length of the search-space diagonal |L| = sqrt(sum (ub-lb)^2), the
/// normalizer of the population diversity metric.
inline double search_space_diagonal(const ProblemSpec& spec) {
    const double edge = spec.upper_bound - spec.lower_bound;
    return edge * std::sqrt(static_cast<double>(spec.dimension));
}

inline ProblemSpec make_sphere(int dimension, double lower = -10.0, double upper = 10.0) {
    ProblemSpec spec;
    spec.name = "sphere";
    spec.dimension = dimension;
    spec.lower_bound = lower;
    spec.upper_bound = upper;
    spec.optimum_position.assign(static_cast<std::size_t>(dimension), 0.0);
    spec.optimum_fitness = 0.0;
    spec.maximize = true;
    spec.objective = [](std::span<const double> x) { return sphere_eval(x); };
    return spec;
}

/// Registry mapping a problem name to a factory over (dimension, lower,
/// upper). Run configurations select problems by name; further problems can
/// be registered behind the same interface.
using ProblemFactory = std::function<ProblemSpec(int, double, double)>;

inline std::map<std::string, ProblemFactory>& problem_registry() {
    static std::map<std::string, ProblemFactory> registry = {
        {"sphere", [](int d, double lo, double hi) { return make_sphere(d, lo, hi); }},
    };
    return registry;
}

inline ProblemSpec make_problem(const std::string& name, int dimension,
                                double lower = -10.0, double upper = 10.0) {
    auto it = problem_registry().find(name);
    if (it == problem_registry().end())
        throw std::domain_error("unknown problem: " + name);
    ProblemSpec spec = it->second(dimension, lower, upper);
    spec.validate();
    return spec;
}

}  // namespace nimeq

#endif
