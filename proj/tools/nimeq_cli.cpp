// Workflow front end: case studies, reference campaigns, single runs and
// tuning campaigns, feature-vector comparison and plot-ready metric CSVs.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "nimeq/nimeq.hpp"

namespace fs = std::filesystem;
using namespace nimeq;

namespace {

AlgorithmParams params_from_values(AlgorithmId id, const std::vector<double>& values) {
    const auto domains = tunable_domains(id);
    if (values.size() != domains.size()) {
        std::string names;
        for (const auto& d : domains) names += (names.empty() ? "" : ",") + d.name;
        throw CLI::ValidationError("--params", std::string(algorithm_name(id)) + " needs " +
                                                   std::to_string(domains.size()) +
                                                   " values (" + names + ")");
    }
    return params_from_genes(id, values);
}

std::vector<double> default_params(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::acc_pso:
        case AlgorithmId::acc_fa: return {0.5, 0.2};
        case AlgorithmId::pso: return {0.5, 1.5, 1.5};
        case AlgorithmId::fa:
        case AlgorithmId::fav2: return {0.5, 1.0, 0.5};
        case AlgorithmId::ba: return {1.0, 0.1};
    }
    throw std::logic_error("default_params: bad id");
}

struct RunShape {
    int np = 0, gens = 0, dim = 0;  // 0 = keep the preset/default

    void apply(CaseStudyConfig& config) const {
        if (np) config.scale.population_size = np;
        if (gens) config.scale.generations = gens;
        if (dim) config.scale.dimension = dim;
    }
    RunConfig make(AlgorithmId algorithm) const {
        RunConfig run;
        run.problem = make_problem("sphere", dim ? dim : 10);
        run.population_size = np ? np : 20;
        run.max_generations = gens ? gens : 500;
        run.algorithm = algorithm;
        return run;
    }
};

void add_shape_options(CLI::App* cmd, RunShape& shape) {
    cmd->add_option("--np", shape.np, "Population size");
    cmd->add_option("--gens", shape.gens, "Generations per run");
    cmd->add_option("--dim", shape.dim, "Problem dimension");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Behavioral-equivalence laboratory for nature-inspired metaheuristics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file (sections per subcommand)");

    // --- study -------------------------------------------------------------
    std::string study_id = "CS1", study_scale = "desk";
    fs::path study_out;
    int study_seeds = 0, meta_np = 0, meta_gens = 0, workers = 1;
    std::uint64_t seed_base = 0;
    fs::path subprocess_binary;
    bool no_candidates = false;
    RunShape study_shape;
    auto* study = app.add_subcommand("study", "Run a full case study and write its reports");
    study->configurable();
    study->add_option("--id", study_id, "Case study: CS1, CS2, CS3 or CS4");
    study->add_option("--scale", study_scale, "Scale preset: desk or paper");
    study->add_option("--out", study_out, "Output directory")->required();
    study->add_option("--seeds", study_seeds, "Override the preset's independent-run count");
    add_shape_options(study, study_shape);
    study->add_option("--meta-np", meta_np, "Tuner population size");
    study->add_option("--meta-gens", meta_gens, "Tuner generations");
    study->add_option("--seed-base", seed_base, "Run seeds are seed-base+1 .. seed-base+N");
    study->add_option("--workers", workers, "Concurrent seed campaigns");
    study->add_option("--subprocess", subprocess_binary,
                      "Evaluate candidates through this optimizer binary instead of in-process");
    study->add_flag("--no-candidates", no_candidates, "Skip persisting per-candidate vectors");

    // --- control -----------------------------------------------------------
    std::string alg_name = "accPSO";
    std::vector<double> param_values;
    fs::path control_out;
    int control_seeds = 10;
    RunShape control_shape;
    auto* control = app.add_subcommand("control", "Run a reference campaign only");
    control->add_option("--algorithm", alg_name, "Control algorithm")->required();
    control->add_option("--params", param_values, "Algorithm parameters")->delimiter(',');
    control->add_option("--seeds", control_seeds, "Independent runs (seeds 1..N)");
    control->add_option("--out", control_out, "Output directory")->required();
    add_shape_options(control, control_shape);

    // --- run ---------------------------------------------------------------
    std::string run_alg = "accPSO";
    std::vector<double> run_params;
    std::uint64_t run_seed = 1;
    fs::path run_out;
    bool ba_zero_init = false;
    RunShape run_shape;
    auto* run = app.add_subcommand("run", "One run, one feature-vector file");
    run->add_option("--algorithm", run_alg, "Algorithm name")->required();
    run->add_option("--params", run_params, "Algorithm parameters")->delimiter(',');
    run->add_option("--seed", run_seed, "Run seed");
    run->add_option("--out", run_out, "Feature-vector file to write")->required();
    run->add_flag("--ba-zero-init", ba_zero_init,
                  "BA fidelity mode: start the per-bat acceptance fitness at zero instead of "
                  "evaluating the initial population");
    add_shape_options(run, run_shape);

    // --- tune --------------------------------------------------------------
    std::string tune_alg = "accFA";
    fs::path tune_reference, tune_out;
    std::uint64_t tune_run_seed = 1, tune_meta_seed = 1;
    int tune_np = 10, tune_gens = 20;
    RunShape tune_shape;
    auto* tune = app.add_subcommand("tune", "One tuning campaign against a reference vector");
    tune->add_option("--reference", tune_reference, "Reference feature-vector file")->required();
    tune->add_option("--algorithm", tune_alg, "Controlled algorithm")->required();
    tune->add_option("--run-seed", tune_run_seed, "Shared run seed (the reference run's seed)");
    tune->add_option("--meta-seed", tune_meta_seed, "Tuner seed");
    tune->add_option("--meta-np", tune_np, "Tuner population size");
    tune->add_option("--meta-gens", tune_gens, "Tuner generations");
    tune->add_option("--out", tune_out, "Where to write the best feature vector");
    add_shape_options(tune, tune_shape);

    // --- compare -----------------------------------------------------------
    fs::path compare_a, compare_b;
    auto* compare = app.add_subcommand("compare", "Similarity metrics and verdict for two files");
    compare->add_option("first", compare_a, "Feature-vector file")->required();
    compare->add_option("second", compare_b, "Feature-vector file")->required();

    // --- metrics -----------------------------------------------------------
    std::vector<std::string> metric_specs;
    fs::path metrics_out;
    std::uint64_t metrics_seed = 1;
    RunShape metrics_shape;
    auto* metrics = app.add_subcommand("metrics", "Per-metric CSVs for a set of algorithms");
    metrics->add_option("--spec", metric_specs,
                        "Algorithm spec 'name:p1,p2[,p3]'; repeatable. Default: all six "
                        "algorithms at their study settings");
    metrics->add_option("--out", metrics_out, "Output directory")->required();
    metrics->add_option("--seed", metrics_seed, "Shared run seed");
    add_shape_options(metrics, metrics_shape);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*study) {
            CaseStudyConfig config = make_case_study(study_id, scale_preset(study_scale));
            if (study_seeds) config.scale.seeds = study_seeds;
            study_shape.apply(config);
            if (meta_np) config.scale.meta_population = meta_np;
            if (meta_gens) config.scale.meta_generations = meta_gens;
            config.seed_base = seed_base;
            config.output_dir = study_out;
            config.persist_candidates = !no_candidates;
            config.workers = workers;
            if (!subprocess_binary.empty()) {
                config.subprocess = true;
                config.optimizer_binary = subprocess_binary;
            }
            const CaseStudyReport report = run_case_study(config);
            write_reports(report);
            std::cout << render_parameter_table(report) << '\n'
                      << render_similarity_table(report);
            std::cout << "reports written to " << config.output_dir.string() << '\n';
        } else if (*control) {
            const AlgorithmId id = algorithm_from_name(alg_name);
            CaseStudyConfig config;
            config.nia = {id};
            config.control = id;
            config.control_params = params_from_values(
                id, param_values.empty() ? default_params(id) : param_values);
            config.scale = desk_scale();
            config.scale.seeds = control_seeds;
            control_shape.apply(config);
            run_control_campaign(config, control_out);
            std::cout << control_seeds << " reference vectors written to "
                      << control_out.string() << '\n';
        } else if (*run) {
            const AlgorithmId id = algorithm_from_name(run_alg);
            RunConfig config = run_shape.make(id);
            config.params = params_from_values(
                id, run_params.empty() ? default_params(id) : run_params);
            config.seed = run_seed;
            if (ba_zero_init) {
                if (id != AlgorithmId::ba)
                    throw CLI::ValidationError("--ba-zero-init", "only applies to BA");
                std::get<BaParams>(config.params).zero_fitness_init = true;
            }
            write_feature_vector(run_one(config), run_out);
            std::cout << "feature vector written to " << run_out.string() << '\n';
        } else if (*tune) {
            const AlgorithmId id = algorithm_from_name(tune_alg);
            MetaConfig config;
            config.population_size = tune_np;
            config.generations = tune_gens;
            config.seed = tune_meta_seed;
            config.controlled = id;
            config.run_template = tune_shape.make(id);
            config.run_template.seed = tune_run_seed;
            config.reference = read_feature_vector(tune_reference);
            const MetaResult result = run_metade(config);
            std::cout << "best cosine similarity: " << format_double(result.best_fitness, "%.6f")
                      << "\nbest parameters:";
            const auto domains = tunable_domains(id);
            for (std::size_t j = 0; j < domains.size(); ++j)
                std::cout << ' ' << domains[j].name << '='
                          << format_double(result.best_genes[j], "%.4f");
            std::cout << "\nlaunches: " << result.launches << '\n';
            if (!tune_out.empty()) {
                write_feature_vector(result.best_fv, tune_out);
                std::cout << "best feature vector written to " << tune_out.string() << '\n';
            }
        } else if (*compare) {
            const FeatureVector a = read_feature_vector(compare_a);
            const FeatureVector b = read_feature_vector_as(compare_b, a.layout);
            const auto verdict = equivalence_verdict(a, b);
            const double rho = spearman_rho(a.values, b.values);
            std::cout << "Sim_cos   = " << format_double(verdict.cosine, "%.6f") << " ("
                      << to_string(interpret_correlation(verdict.cosine)) << ")\n"
                      << "Sim_SMAPE = "
                      << format_double(smape_similarity(a.values, b.values), "%.6f") << '\n'
                      << "Spearman  = " << format_double(rho, "%.6f") << " ("
                      << to_string(interpret_correlation(rho)) << ")\n"
                      << "max |diff| = " << format_double(verdict.max_abs_difference, "%.3g")
                      << '\n'
                      << "equivalent (cosine >= 0.99): "
                      << (verdict.theorem_equivalent ? "yes" : "no") << '\n'
                      << "strictly equivalent (element-wise, 1e-9): "
                      << (verdict.strictly_equivalent ? "yes" : "no") << '\n';
        } else if (*metrics) {
            std::vector<std::pair<std::string, TrajectoryLog>> logs;
            std::vector<std::pair<AlgorithmId, std::vector<double>>> specs;
            if (metric_specs.empty()) {
                for (AlgorithmId id : kAllAlgorithms) specs.emplace_back(id, default_params(id));
            } else {
                for (const auto& raw : metric_specs) {
                    const auto colon = raw.find(':');
                    if (colon == std::string::npos)
                        throw CLI::ValidationError("--spec", "expected 'name:p1,p2[,p3]'");
                    const AlgorithmId id = algorithm_from_name(raw.substr(0, colon));
                    std::vector<double> values;
                    std::istringstream rest(raw.substr(colon + 1));
                    std::string item;
                    while (std::getline(rest, item, ',')) values.push_back(std::stod(item));
                    specs.emplace_back(id, std::move(values));
                }
            }
            for (const auto& [id, values] : specs) {
                RunConfig config = metrics_shape.make(id);
                config.params = params_from_values(id, values);
                config.seed = metrics_seed;
                logs.emplace_back(std::string(algorithm_name(id)), run_algorithm(config));
            }
            emit_metric_csv(logs, metrics_out);
            std::cout << "metric CSVs written to " << metrics_out.string() << '\n';
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
