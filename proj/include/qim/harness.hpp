#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qim/generators.hpp"
#include "qim/graph_io.hpp"
#include "qim/metrics.hpp"
#include "qim/permtest.hpp"

namespace qim {

/// One two-sample simulation scenario: a generator per group, the sample
/// sizes, the metric, and the Monte Carlo budget.
struct ScenarioConfig {
    GeneratorSpec group_a;
    GeneratorSpec group_b;
    int n_a = 20;
    int n_b = 20;
    int reps = 100;
    int perms = 500;
    int pseudo_count = 1;
    double alpha = 0.05;
    QimParams metric{};
    bool mr = false;
    std::uint64_t seed = 0;
};

/// Rejection-rate estimate over the replicates. p <= alpha counts as a
/// rejection. Failed replicates (at most 1% tolerated) carry NaN entries and
/// are excluded from the rate.
struct PowerReport {
    double rejection_rate = 0.0;
    double ci95_lo = 0.0;  // Wilson score interval
    double ci95_hi = 0.0;
    std::vector<double> p_values;  // one per replicate
    std::vector<double> f0_values;
    double wall_time_sec = 0.0;
};

PowerReport run_scenario(const ScenarioConfig& cfg, int workers = 1);

/// One (kappa, coupling) cell of a sweep. All cells of one sweep share the
/// replicate graphs and permutation seeds, so cells are directly paired.
struct SweepCell {
    double kappa = 0.0;
    Metric metric = Metric::qim;  // qim (product) or qim_plus
    PowerReport report;
};

std::vector<SweepCell> kappa_sweep(const ScenarioConfig& base, std::span<const double> kappas,
                                   bool include_product, bool include_plus, int workers = 1);

/// Sampling check of the squared-Euclidean pseudo-F against its large-sample
/// chi-squared_v / v limit: reps datasets of i.i.d. standard normal
/// v-vectors, group B shifted by a vector of squared norm shift_norm2
/// (0 = null). Reports moments of F, a one-sample KS test against the null
/// limit, and a two-sample KS test of permuted F against observed F.
struct TheoryCheckReport {
    int dim = 0;
    int n_a = 0;
    int n_b = 0;
    int reps = 0;
    double shift_norm2 = 0.0;
    double mean_f = 0.0;
    double var_f = 0.0;
    double ks_stat = 0.0;
    double ks_p = 1.0;
    double perm_ks_stat = 0.0;
    double perm_ks_p = 1.0;
};

TheoryCheckReport theory_check_euclidean(int v, int n_a, int n_b, int reps, std::uint64_t seed,
                                         double shift_norm2 = 0.0, int workers = 1);

// -- presets ----------------------------------------------------------------

/// Optional knobs a preset may consume; inapplicable knobs are an error.
struct PresetKnobs {
    std::optional<double> density;    // shared edge density (1.a, 1.c, 2.c base, 3.*)
    std::optional<double> density_b;  // group B density (2.c)
    std::optional<double> mean_b;     // group B mean weight (2.a, 2.b)
    std::optional<int> m;             // attachment edges per step (1.b, 1.d)
    std::optional<int> vertices;      // node count (1.d, 3.b)
    std::optional<int> samples;       // per-group sample size (3.c)
};

std::vector<std::string> preset_names();
ScenarioConfig scenario_preset(const std::string& name, const PresetKnobs& knobs = {});

// -- scenario config files ----------------------------------------------------

/// Key-value scenario file ("key = value" lines, # comments). Keys mirror
/// ScenarioConfig: a.family, a.v, a.p, a.m, a.mu, a.sigma2, a.corr, the same
/// under b.*, and n_a, n_b, reps, perms, pseudo_count, alpha, metric, kappa,
/// mr, seed.
ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig parse_scenario_config_file(const std::filesystem::path& path);
std::string serialize_scenario_config(const ScenarioConfig& cfg);

// -- two-group comparison ------------------------------------------------------

struct GraphGroups {
    std::vector<AdjacencyMatrix> a;
    std::vector<AdjacencyMatrix> b;
};

/// Reads every regular file of a directory (sorted by name) as a graph.
std::vector<AdjacencyMatrix> load_graph_dir(const std::filesystem::path& dir,
                                            const GraphReadOptions& options = {});

GraphGroups load_groups_from_dirs(const std::filesystem::path& dir_a,
                                  const std::filesystem::path& dir_b,
                                  const GraphReadOptions& options = {});

GraphGroups load_groups_from_manifest(const std::filesystem::path& manifest,
                                      const GraphReadOptions& options = {});

/// Runs the configured pipeline on two in-memory groups.
TestResult compare_groups(std::span<const AdjacencyMatrix> group_a,
                          std::span<const AdjacencyMatrix> group_b, const QimParams& params,
                          bool mr, int perm_count, int pseudo_count, std::uint64_t seed,
                          int workers = 1);

// -- reports -------------------------------------------------------------------

// JSON emitters shared by the CLI and the test suites. Outputs are
// deterministic for a fixed seed at any worker count (wall time is excluded).
std::string scenario_report_json(const ScenarioConfig& cfg, const PowerReport& report);
std::string scenario_report_csv(const PowerReport& report, double alpha);
std::string sweep_report_json(const ScenarioConfig& cfg, const std::vector<SweepCell>& cells);
std::string sweep_report_csv(const std::vector<SweepCell>& cells);
std::string test_result_json(const TestResult& result);
std::string test_result_csv(const TestResult& result);
std::string theory_report_json(const TheoryCheckReport& report);

}  // namespace qim
