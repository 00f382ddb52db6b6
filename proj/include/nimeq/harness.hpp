#ifndef NIMEQ_HARNESS_HPP
#define NIMEQ_HARNESS_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nimeq/classifiers.hpp"
#include "nimeq/cli_protocol.hpp"
#include "nimeq/descriptors.hpp"
#include "nimeq/fv_io.hpp"
#include "nimeq/metade.hpp"
#include "nimeq/optimizers.hpp"
#include "nimeq/similarity.hpp"

namespace nimeq {

namespace fs = std::filesystem;

inline std::string format_double(double v, const char* spec = "%.17g") {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, spec, v);
    return buffer;
}

/// Experiment sizes. The desk preset finishes a whole case study in seconds;
/// the paper preset is the full campaign size, only practical on serious
/// hardware budgets.
struct ScalePreset {
    std::string name;
    int population_size;
    int generations;
    int dimension;
    int seeds;  // N independent runs / reference vectors
    int meta_population;
    int meta_generations;
};

// The desk horizon of 200 generations is the shortest at which the full-scale
// qualitative similarity picture (which algorithm imitates which, and how
// strongly) is preserved; shorter runs have not diverged enough yet.
inline ScalePreset desk_scale() { return {"desk", 10, 200, 10, 10, 10, 20}; }
inline ScalePreset paper_scale() { return {"paper", 20, 500, 10, 151, 20, 500}; }

inline ScalePreset scale_preset(const std::string& name) {
    if (name == "desk") return desk_scale();
    if (name == "paper") return paper_scale();
    throw std::domain_error("unknown scale preset: " + name);
}

struct CaseStudyConfig {
    std::string id;  // CS1..CS4
    std::vector<AlgorithmId> nia;
    AlgorithmId control = AlgorithmId::acc_pso;
    AlgorithmParams control_params = AccParams{0.5, 0.2};
    ScalePreset scale = desk_scale();

    std::string problem = "sphere";
    double box_lower = -10.0;
    double box_upper = 10.0;
    std::uint64_t seed_base = 0;  // run seeds are seed_base + 1 .. seed_base + N

    double meta_weight = 0.5;
    double meta_crossover = 0.9;

    fs::path output_dir;
    bool persist_candidates = true;
    bool subprocess = false;       // evaluate candidates through the optimizer binary
    fs::path optimizer_binary;     // required when subprocess is set
    int workers = 1;               // seed-level fan-out

    RunConfig base_run_config(AlgorithmId algorithm) const {
        RunConfig run;
        run.problem = make_problem(problem, scale.dimension, box_lower, box_upper);
        run.population_size = scale.population_size;
        run.max_generations = scale.generations;
        run.algorithm = algorithm;
        return run;
    }
};

/// The four predefined study setups. CS1 pits the two accelerated algorithms
/// against each other; CS2 widens the set under the accelerated PSO control;
/// CS3 uses canonical PSO as control and adds the two-population firefly;
/// CS4 puts the bat algorithm in control.
inline CaseStudyConfig make_case_study(const std::string& id,
                                       const ScalePreset& scale = desk_scale()) {
    CaseStudyConfig config;
    config.id = id;
    config.scale = scale;
    if (id == "CS1") {
        config.nia = {AlgorithmId::acc_pso, AlgorithmId::acc_fa};
        config.control = AlgorithmId::acc_pso;
        config.control_params = AccParams{0.5, 0.2};
    } else if (id == "CS2") {
        config.nia = {AlgorithmId::acc_pso, AlgorithmId::pso, AlgorithmId::fa, AlgorithmId::ba};
        config.control = AlgorithmId::acc_pso;
        config.control_params = AccParams{0.5, 0.2};
    } else if (id == "CS3") {
        config.nia = {AlgorithmId::pso, AlgorithmId::acc_pso, AlgorithmId::fa, AlgorithmId::fav2,
                      AlgorithmId::ba};
        config.control = AlgorithmId::pso;
        config.control_params = PsoParams{0.5, 1.5, 1.5};
    } else if (id == "CS4") {
        config.nia = {AlgorithmId::ba, AlgorithmId::acc_pso, AlgorithmId::pso, AlgorithmId::fa,
                      AlgorithmId::fav2};
        config.control = AlgorithmId::ba;
        config.control_params = BaParams{1.0, 0.1};
    } else {
        throw std::domain_error("unknown case study: " + id);
    }
    return config;
}

/// One optimizer run followed by feature extraction.
inline FeatureVector run_one(const RunConfig& config) {
    return assemble_feature_vector(run_algorithm(config), config.problem);
}

// ---------------------------------------------------------------------------
// Subprocess evaluation (the passing-parameter protocol in action)
// ---------------------------------------------------------------------------

/// Launches the standalone optimizer binary with protocol switches and reads
/// the feature-vector file it leaves behind. Used to exercise exactly the
/// interface an externally integrated algorithm would implement.
struct SubprocessRunner {
    fs::path binary;
    fs::path workdir;

    FeatureVector operator()(AlgorithmId algorithm, const AlgorithmParams& params,
                             const RunConfig& run) const {
        fs::create_directories(workdir);
        const auto genes = genes_from_params(algorithm, params);
        std::ostringstream cmd;
        cmd << '"' << binary.string() << '"' << ' ' << algorithm_name(algorithm);
        const char switches[] = {'a', 'b', 'c'};
        for (std::size_t j = 0; j < genes.size(); ++j)
            cmd << " -" << switches[j] << format_double(genes[j]);
        cmd << " -n" << genes.size();
        cmd << " -g" << run.max_generations << " -d" << run.problem.dimension;
        cmd << " -p" << run.population_size << " -r1 -s" << run.seed;
        cmd << " -f\"" << workdir.string() << '"';

        const int status = std::system(cmd.str().c_str());
        if (status != 0)
            throw std::runtime_error("optimizer subprocess failed (status " +
                                     std::to_string(status) + "): " + cmd.str());
        const fs::path produced =
            workdir / (std::string(algorithm_name(algorithm)) + "." + std::to_string(run.seed));
        return read_feature_vector(produced);
    }
};

// ---------------------------------------------------------------------------
// Campaigns
// ---------------------------------------------------------------------------

/// Runs the control algorithm once per seed and writes the reference
/// feature-vector files "<Alg1>.<seed>" into output_dir.
inline std::vector<FeatureVector> run_control_campaign(const CaseStudyConfig& config,
                                                       const fs::path& output_dir) {
    fs::create_directories(output_dir);
    std::vector<FeatureVector> references;
    references.reserve(static_cast<std::size_t>(config.scale.seeds));
    for (int s = 1; s <= config.scale.seeds; ++s) {
        RunConfig run = config.base_run_config(config.control);
        run.params = config.control_params;
        run.seed = config.seed_base + static_cast<std::uint64_t>(s);
        FeatureVector fv = run_one(run);
        write_feature_vector(
            fv, output_dir / (std::string(algorithm_name(config.control)) + "." +
                              std::to_string(run.seed)));
        references.push_back(std::move(fv));
    }
    return references;
}

struct SeedOutcome {
    std::uint64_t seed = 0;
    std::vector<double> best_genes;
    double sim_cos = 0.0;
    double sim_smape = 0.0;
    double rho = 0.0;
    double run_quality = 0.0;  // final best objective value of the tuned run
    FeatureVector best_fv;
    std::vector<double> history;
    std::uint64_t launches = 0;
    std::vector<std::string> warnings;
};

struct AlgorithmCampaign {
    AlgorithmId algorithm = AlgorithmId::acc_pso;
    bool control_role = false;
    std::vector<SeedOutcome> outcomes;

    std::vector<std::pair<std::string, SummaryStats>> parameter_stats;
    SummaryStats quality_stats;
    SummaryStats sim_cos_stats;
    SummaryStats sim_smape_stats;
    SummaryStats rho_stats;
    std::optional<MlSimilarityResult> knn, svm, rf;  // controlled role only
    int theorem_equivalent_seeds = 0;
    int strictly_equivalent_seeds = 0;
};

struct CaseStudyReport {
    CaseStudyConfig config;
    std::vector<FeatureVector> references;
    std::vector<AlgorithmCampaign> campaigns;

    const AlgorithmCampaign& campaign(AlgorithmId id) const {
        for (const auto& c : campaigns)
            if (c.algorithm == id) return c;
        throw std::out_of_range("no campaign for algorithm");
    }
};

namespace detail {

/// Meta-optimizer stream for (algorithm, run seed); fixed derivation keeps
/// whole studies reproducible.
inline std::uint64_t campaign_meta_seed(AlgorithmId algorithm, std::uint64_t run_seed) {
    return derive_stream_seed(run_seed, 0x4d455441ULL + static_cast<std::uint64_t>(algorithm));
}

inline SeedOutcome tune_one_seed(const CaseStudyConfig& config, AlgorithmId algorithm,
                                 std::uint64_t run_seed, const FeatureVector& reference) {
    MetaConfig meta;
    meta.population_size = config.scale.meta_population;
    meta.generations = config.scale.meta_generations;
    meta.weight = config.meta_weight;
    meta.crossover_rate = config.meta_crossover;
    meta.seed = campaign_meta_seed(algorithm, run_seed);
    meta.controlled = algorithm;
    meta.run_template = config.base_run_config(algorithm);
    meta.run_template.seed = run_seed;
    meta.reference = reference;

    const std::string alg_name(algorithm_name(algorithm));
    fs::path candidate_dir;
    if (config.persist_candidates && !config.output_dir.empty()) {
        candidate_dir = config.output_dir / "candidates" / alg_name /
                        ("seed_" + std::to_string(run_seed));
        fs::create_directories(candidate_dir);
        meta.on_candidate = [&](std::uint64_t seq, const FeatureVector& fv, double) {
            if (fv.values.empty()) return;  // failed launch; nothing to persist
            write_feature_vector(fv, candidate_dir / (alg_name + "." + std::to_string(seq)));
        };
    }
    if (config.subprocess) {
        SubprocessRunner runner{config.optimizer_binary,
                                config.output_dir / "subprocess" / alg_name /
                                    ("seed_" + std::to_string(run_seed))};
        meta.evaluator = [&, runner](const AlgorithmParams& params) {
            return runner(algorithm, params, meta.run_template);
        };
    }

    MetaResult tuned = run_metade(meta);

    SeedOutcome outcome;
    outcome.seed = run_seed;
    outcome.best_genes = tuned.best_genes;
    outcome.sim_cos = tuned.best_fitness;
    outcome.best_fv = std::move(tuned.best_fv);
    outcome.history = std::move(tuned.history);
    outcome.launches = tuned.launches;
    outcome.warnings = std::move(tuned.warnings);
    if (outcome.best_fv.values.empty()) {
        // Every launch of this campaign failed; leave the cells marked.
        outcome.sim_smape = std::numeric_limits<double>::quiet_NaN();
        outcome.rho = std::numeric_limits<double>::quiet_NaN();
        outcome.run_quality = std::numeric_limits<double>::quiet_NaN();
        return outcome;
    }
    outcome.sim_smape = smape_similarity(reference.values, outcome.best_fv.values);
    outcome.rho = spearman_rho(reference.values, outcome.best_fv.values);

    // Re-run the winner in-process to recover the phenotype quality its
    // feature vector cannot carry.
    RunConfig best_run = meta.run_template;
    best_run.algorithm = algorithm;
    best_run.params = tuned.best_params;
    outcome.run_quality = run_algorithm(best_run).final_best_fitness;
    return outcome;
}

template <typename Fn>
inline std::vector<SeedOutcome> map_seeds(int count, int workers, Fn&& fn) {
    std::vector<SeedOutcome> outcomes(static_cast<std::size_t>(count));
    if (workers <= 1) {
        for (int s = 0; s < count; ++s) outcomes[static_cast<std::size_t>(s)] = fn(s);
        return outcomes;
    }
    std::vector<std::future<SeedOutcome>> futures;
    futures.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s)
        futures.push_back(std::async(std::launch::async, [&fn, s] { return fn(s); }));
    for (int s = 0; s < count; ++s) outcomes[static_cast<std::size_t>(s)] = futures[s].get();
    return outcomes;
}

inline std::vector<double> column(const std::vector<SeedOutcome>& outcomes,
                                  double (*pick)(const SeedOutcome&)) {
    std::vector<double> v;
    v.reserve(outcomes.size());
    for (const auto& o : outcomes) v.push_back(pick(o));
    return v;
}

}  // namespace detail

/// Full workflow of one case study: reference campaign, one tuning campaign
/// per algorithm and seed (the control algorithm itself is self-tuned to fill
/// the report's control rows), similarity statistics over the best vectors
/// and classifier-based separability over the paired sample.
inline CaseStudyReport run_case_study(const CaseStudyConfig& config) {
    if (config.subprocess && (config.optimizer_binary.empty() || config.output_dir.empty()))
        throw std::invalid_argument(
            "case study: subprocess mode needs the optimizer binary and an output directory");
    CaseStudyReport report;
    report.config = config;

    const fs::path reference_dir =
        config.output_dir.empty() ? fs::path() : config.output_dir / "reference";
    if (config.output_dir.empty()) {
        // In-memory campaign (used by tests): regenerate references without files.
        for (int s = 1; s <= config.scale.seeds; ++s) {
            RunConfig run = config.base_run_config(config.control);
            run.params = config.control_params;
            run.seed = config.seed_base + static_cast<std::uint64_t>(s);
            report.references.push_back(run_one(run));
        }
    } else {
        report.references = run_control_campaign(config, reference_dir);
    }

    for (AlgorithmId algorithm : config.nia) {
        AlgorithmCampaign campaign;
        campaign.algorithm = algorithm;
        campaign.control_role = (algorithm == config.control);

        campaign.outcomes = detail::map_seeds(
            config.scale.seeds, config.workers, [&](int index) {
                const auto run_seed = config.seed_base + static_cast<std::uint64_t>(index + 1);
                return detail::tune_one_seed(config, algorithm, run_seed,
                                             report.references[static_cast<std::size_t>(index)]);
            });

        if (!config.output_dir.empty()) {
            const fs::path best_dir = config.output_dir / "best";
            fs::create_directories(best_dir);
            for (const auto& outcome : campaign.outcomes)
                if (!outcome.best_fv.values.empty())
                    write_feature_vector(outcome.best_fv,
                                         best_dir / (std::string(algorithm_name(algorithm)) +
                                                     "." + std::to_string(outcome.seed)));
        }

        const auto domains = tunable_domains(algorithm);
        for (std::size_t j = 0; j < domains.size(); ++j) {
            std::vector<double> values;
            values.reserve(campaign.outcomes.size());
            for (const auto& o : campaign.outcomes) values.push_back(o.best_genes[j]);
            campaign.parameter_stats.emplace_back(domains[j].name, summarize(values));
        }
        campaign.quality_stats = summarize(
            detail::column(campaign.outcomes, [](const SeedOutcome& o) { return o.run_quality; }));
        campaign.sim_cos_stats = summarize(
            detail::column(campaign.outcomes, [](const SeedOutcome& o) { return o.sim_cos; }));
        campaign.sim_smape_stats = summarize(
            detail::column(campaign.outcomes, [](const SeedOutcome& o) { return o.sim_smape; }));
        campaign.rho_stats = summarize(
            detail::column(campaign.outcomes, [](const SeedOutcome& o) { return o.rho; }));

        bool complete = true;
        for (const auto& outcome : campaign.outcomes) complete &= !outcome.best_fv.values.empty();
        for (std::size_t index = 0; index < campaign.outcomes.size(); ++index) {
            if (campaign.outcomes[index].best_fv.values.empty()) continue;
            const auto verdict =
                equivalence_verdict(report.references[index], campaign.outcomes[index].best_fv);
            campaign.theorem_equivalent_seeds += verdict.theorem_equivalent;
            campaign.strictly_equivalent_seeds += verdict.strictly_equivalent;
        }

        if (!campaign.control_role && complete) {
            PairedSample sample;
            sample.control = report.references;
            for (const auto& o : campaign.outcomes) {
                sample.controlled.push_back(o.best_fv);
                sample.seeds.push_back(o.seed);
            }
            const int folds = std::min(10, config.scale.seeds);
            const auto model_seed =
                derive_stream_seed(config.seed_base, 0x4d4cULL + static_cast<std::uint64_t>(algorithm));
            campaign.knn = ml_similarity(sample, MlMethod::knn, folds, model_seed);
            campaign.svm = ml_similarity(sample, MlMethod::svm, folds, model_seed);
            campaign.rf = ml_similarity(sample, MlMethod::rf, folds, model_seed);
        }
        report.campaigns.push_back(std::move(campaign));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

namespace detail {

inline const char* kStatNames[] = {"Min", "Max", "Mean", "StDev", "Median"};

inline double stat_value(const SummaryStats& s, int which) {
    switch (which) {
        case 0: return s.min;
        case 1: return s.max;
        case 2: return s.mean;
        case 3: return s.std;
        case 4: return s.median;
    }
    throw std::logic_error("stat_value: bad index");
}

inline std::string fixed4(double v) { return format_double(v, "%.4f"); }

}  // namespace detail

/// Similarity table: five statistic rows per
/// controlled algorithm over the three statistical metrics, with the
/// classifier similarities reported as mean/spread only.
inline std::string render_similarity_table(const CaseStudyReport& report) {
    std::ostringstream out;
    out << "Similarity metrics, study " << report.config.id << " (control "
        << algorithm_name(report.config.control) << ", scale " << report.config.scale.name
        << ", N=" << report.config.scale.seeds << ")\n";
    out << "Algorithm  Stat    Sim_cos   Sim_SMAPE  Spearman  Sim_kNN   Sim_SVM   Sim_RF\n";
    for (const auto& campaign : report.campaigns) {
        if (campaign.control_role) continue;
        for (int stat = 0; stat < 5; ++stat) {
            char line[160];
            const bool ml_row = (stat == 2 || stat == 3);
            std::string knn = "n/a", svm = "n/a", rf = "n/a";
            if (ml_row && campaign.knn) {
                knn = detail::fixed4(stat == 2 ? campaign.knn->similarity : campaign.knn->fold_std);
                svm = detail::fixed4(stat == 2 ? campaign.svm->similarity : campaign.svm->fold_std);
                rf = detail::fixed4(stat == 2 ? campaign.rf->similarity : campaign.rf->fold_std);
            }
            std::snprintf(line, sizeof line, "%-10s %-7s %-9s %-10s %-9s %-9s %-9s %-9s\n",
                          std::string(algorithm_name(campaign.algorithm)).c_str(),
                          detail::kStatNames[stat],
                          detail::fixed4(detail::stat_value(campaign.sim_cos_stats, stat)).c_str(),
                          detail::fixed4(detail::stat_value(campaign.sim_smape_stats, stat)).c_str(),
                          detail::fixed4(detail::stat_value(campaign.rho_stats, stat)).c_str(),
                          knn.c_str(), svm.c_str(), rf.c_str());
            out << line;
        }
        const double mean_cos = campaign.sim_cos_stats.mean;
        out << "  strength(mean Sim_cos): "
            << (std::isfinite(mean_cos) && std::abs(mean_cos) <= 1.0 + 1e-12
                    ? to_string(interpret_correlation(mean_cos))
                    : "n/a")
            << "; theorem-equivalent seeds: " << campaign.theorem_equivalent_seeds << "/"
            << campaign.outcomes.size()
            << "; strictly equivalent: " << campaign.strictly_equivalent_seeds << "/"
            << campaign.outcomes.size();
        std::size_t failed_launches = 0;
        for (const auto& outcome : campaign.outcomes) failed_launches += outcome.warnings.size();
        if (failed_launches > 0) out << "; failed launches: " << failed_launches;
        out << "\n";
        if (campaign.knn) {
            out << "  alternative 1-A reading: kNN "
                << detail::fixed4(campaign.knn->one_minus_accuracy) << ", SVM "
                << detail::fixed4(campaign.svm->one_minus_accuracy) << ", RF "
                << detail::fixed4(campaign.rf->one_minus_accuracy) << "\n";
        }
    }
    return out.str();
}

inline std::string render_similarity_csv(const CaseStudyReport& report) {
    std::ostringstream out;
    out << "algorithm,statistic,Sim_cos,Sim_SMAPE,Spearman,Sim_kNN,Sim_SVM,Sim_RF\n";
    for (const auto& campaign : report.campaigns) {
        if (campaign.control_role) continue;
        for (int stat = 0; stat < 5; ++stat) {
            out << algorithm_name(campaign.algorithm) << ',' << detail::kStatNames[stat] << ','
                << format_double(detail::stat_value(campaign.sim_cos_stats, stat)) << ','
                << format_double(detail::stat_value(campaign.sim_smape_stats, stat)) << ','
                << format_double(detail::stat_value(campaign.rho_stats, stat)) << ',';
            if (campaign.knn && (stat == 2 || stat == 3)) {
                const bool mean_row = (stat == 2);
                out << format_double(mean_row ? campaign.knn->similarity : campaign.knn->fold_std)
                    << ','
                    << format_double(mean_row ? campaign.svm->similarity : campaign.svm->fold_std)
                    << ','
                    << format_double(mean_row ? campaign.rf->similarity : campaign.rf->fold_std);
            } else {
                out << ",,";
            }
            out << '\n';
        }
        if (campaign.knn) {
            out << algorithm_name(campaign.algorithm) << ",1-A,,,,"
                << format_double(campaign.knn->one_minus_accuracy) << ','
                << format_double(campaign.svm->one_minus_accuracy) << ','
                << format_double(campaign.rf->one_minus_accuracy) << '\n';
        }
    }
    return out.str();
}

/// Parameter table: tuned-value statistics per hyper-parameter plus the
/// final objective quality row, control section first.
inline std::string render_parameter_table(const CaseStudyReport& report) {
    std::ostringstream out;
    out << "Tuned parameter settings, study " << report.config.id << " (scale "
        << report.config.scale.name << ")\n";
    out << "Role        Algorithm  Metric   Min        Max        Mean       StDev      Median\n";
    auto emit = [&](const AlgorithmCampaign& campaign) {
        auto row = [&](const std::string& metric, const SummaryStats& s) {
            char line[200];
            std::snprintf(line, sizeof line, "%-11s %-10s %-8s %-10s %-10s %-10s %-10s %-10s\n",
                          campaign.control_role ? "Control" : "Controlled",
                          std::string(algorithm_name(campaign.algorithm)).c_str(), metric.c_str(),
                          detail::fixed4(s.min).c_str(), detail::fixed4(s.max).c_str(),
                          detail::fixed4(s.mean).c_str(), detail::fixed4(s.std).c_str(),
                          detail::fixed4(s.median).c_str());
            out << line;
        };
        for (const auto& [name, stats] : campaign.parameter_stats) row(name, stats);
        row("Fitness", campaign.quality_stats);
    };
    for (const auto& campaign : report.campaigns)
        if (campaign.control_role) emit(campaign);
    for (const auto& campaign : report.campaigns)
        if (!campaign.control_role) emit(campaign);
    return out.str();
}

inline std::string render_parameter_csv(const CaseStudyReport& report) {
    std::ostringstream out;
    out << "role,algorithm,parameter,statistic,value\n";
    auto emit = [&](const AlgorithmCampaign& campaign) {
        auto rows = [&](const std::string& metric, const SummaryStats& s) {
            for (int stat = 0; stat < 5; ++stat)
                out << (campaign.control_role ? "Control" : "Controlled") << ','
                    << algorithm_name(campaign.algorithm) << ',' << metric << ','
                    << detail::kStatNames[stat] << ','
                    << format_double(detail::stat_value(s, stat)) << '\n';
        };
        for (const auto& [name, stats] : campaign.parameter_stats) rows(name, stats);
        rows("Fitness", campaign.quality_stats);
    };
    for (const auto& campaign : report.campaigns)
        if (campaign.control_role) emit(campaign);
    for (const auto& campaign : report.campaigns)
        if (!campaign.control_role) emit(campaign);
    return out.str();
}

inline void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

/// Writes the four report files of a study into its output directory.
inline void write_reports(const CaseStudyReport& report) {
    const fs::path dir = report.config.output_dir;
    if (dir.empty()) return;
    fs::create_directories(dir);
    write_text_file(dir / ("similarity_" + report.config.id + ".txt"),
                    render_similarity_table(report));
    write_text_file(dir / ("similarity_" + report.config.id + ".csv"),
                    render_similarity_csv(report));
    write_text_file(dir / ("parameters_" + report.config.id + ".txt"),
                    render_parameter_table(report));
    write_text_file(dir / ("parameters_" + report.config.id + ".csv"),
                    render_parameter_csv(report));
}

// ---------------------------------------------------------------------------
// Plot-ready metric CSVs
// ---------------------------------------------------------------------------

/// One CSV per descriptive metric: the population metrics have one row per
/// generation and the individual metrics one row per individual, with one
/// column per algorithm. All logs must share the same run shape.
inline void emit_metric_csv(const std::vector<std::pair<std::string, TrajectoryLog>>& logs,
                            const fs::path& directory) {
    if (logs.empty()) throw std::invalid_argument("emit_metric_csv: no logs");
    fs::create_directories(directory);

    std::vector<MetricSeries> series;
    series.reserve(logs.size());
    for (const auto& [name, log] : logs) {
        series.push_back(compute_metric_series(log, log.config.problem));
        if (series.back().fdc.size() != series.front().fdc.size() ||
            series.back().idt.size() != series.front().idt.size())
            throw std::invalid_argument("emit_metric_csv: logs have different shapes");
    }

    auto write_block = [&](const std::string& metric, const char* index_name,
                           std::vector<double> MetricSeries::* member) {
        std::ofstream out(directory / (metric + ".csv"));
        if (!out) throw std::runtime_error("emit_metric_csv: cannot open output");
        out << index_name;
        for (const auto& [name, log] : logs) out << ',' << name;
        out << '\n';
        const std::size_t rows = (series.front().*member).size();
        for (std::size_t r = 0; r < rows; ++r) {
            out << (r + 1);
            for (const auto& s : series) out << ',' << format_double((s.*member)[r]);
            out << '\n';
        }
    };

    write_block("fdc", "generation", &MetricSeries::fdc);
    write_block("diversity", "generation", &MetricSeries::diversity);
    write_block("fitness_mean", "generation", &MetricSeries::fitness_mean);
    write_block("fitness_std", "generation", &MetricSeries::fitness_std);
    write_block("idt", "individual", &MetricSeries::idt);
    write_block("ifiqr", "individual", &MetricSeries::ifiqr);
    write_block("ifm", "individual", &MetricSeries::ifm);
    write_block("isi", "individual", &MetricSeries::isi);
}

// ---------------------------------------------------------------------------
// Standalone optimizer entry point (the Table-style switch protocol)
// ---------------------------------------------------------------------------

/// Body of the standalone optimizer process: runs the named algorithm -r
/// times with consecutive seeds starting at -s and writes one feature-vector
/// file "<algorithm>.<seed>" per run into the -f directory. Returns the
/// process exit code.
inline int standalone_optimizer_main(const std::string& algorithm, const CliInvocation& inv,
                                     std::ostream& err = std::cerr) {
    try {
        const AlgorithmId id = algorithm_from_name(algorithm);
        const auto params = inv.algorithm_params();
        const auto domains = tunable_domains(id);
        if (params.size() != domains.size())
            throw UsageError(std::string(algorithm_name(id)) + " takes " +
                             std::to_string(domains.size()) + " parameters, got " +
                             std::to_string(params.size()));

        RunConfig run;
        run.problem = make_problem("sphere", static_cast<int>(inv.integer('d')));
        run.max_generations = static_cast<int>(inv.integer('g'));
        run.population_size = static_cast<int>(inv.integer_or('p', 20));
        run.algorithm = id;
        run.params = params_from_genes(id, params);

        const fs::path out_dir = inv.require('f');
        const long runs = inv.integer_or('r', 1);
        const long base_seed = inv.integer('s');
        if (runs < 1) throw UsageError("switch -r must be at least 1");

        fs::create_directories(out_dir);
        for (long r = 0; r < runs; ++r) {
            run.seed = static_cast<std::uint64_t>(base_seed + r);
            write_feature_vector(run_one(run),
                                 out_dir / (algorithm + "." + std::to_string(run.seed)));
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace nimeq

#endif
