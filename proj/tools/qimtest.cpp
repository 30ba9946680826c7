// Command-line front end: two-sample network comparison, simulation
// scenarios, kappa sweeps, and diagnostics.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qim/distance.hpp"
#include "qim/gof.hpp"
#include "qim/harness.hpp"
#include "qim/metrics.hpp"
#include "qim/parallel.hpp"
#include "qim/rng.hpp"

namespace {

struct CommonOpts {
    std::string metric = "qim";
    std::string variant = "product";
    double kappa = 1.0;
    int perms = 1000;
    int pseudo_count = 1;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    bool mr = false;
    bool abs_weights = false;
    int workers = 1;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--metric", o.metric, "Distance: qed|im|qim|qim-plus|euclidean")
        ->check(CLI::IsMember({"qed", "im", "qim", "qim-plus", "euclidean"}));
    cmd->add_option("--variant", o.variant, "QIM coupling: product|plus")
        ->check(CLI::IsMember({"product", "plus"}));
    cmd->add_option("--kappa", o.kappa, "Weight of the spectral term (default 1)");
    cmd->add_option("--perms", o.perms, "Number of permutations (default 1000)");
    cmd->add_option("--pseudo-count", o.pseudo_count, "Pseudo-count added to the p-value (default 1)");
    cmd->add_option("--alpha", o.alpha, "Significance level (default 0.05)");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_flag("--mr", o.mr, "Apply the mutual-remoteness transform");
    cmd->add_flag("--abs", o.abs_weights, "Take |weights| on the spectral side of signed graphs");
    cmd->add_option("--workers", o.workers, "Worker threads (default 1, 0 = all cores)");
    cmd->add_option("--format", o.format, "Output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "Write the report to a file instead of stdout");
}

qim::QimParams make_params(const CommonOpts& o) {
    qim::QimParams p;
    p.metric = qim::metric_from_string(o.metric);
    if (p.metric == qim::Metric::qim && o.variant == "plus") p.metric = qim::Metric::qim_plus;
    p.kappa = o.kappa;
    p.abs_weights = o.abs_weights;
    return p;
}

int effective_workers(const CommonOpts& o) {
    return o.workers == 0 ? qim::hardware_workers() : o.workers;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write output file: " + o.out);
    f << text;
}

struct InputOpts {
    std::string input_format = "adjacency-csv";
    int nodes = 0;
    bool symmetrize = false;
    std::string manifest;
};

void add_input(CLI::App* cmd, InputOpts& o) {
    cmd->add_option("--input-format", o.input_format, "Graph file format: adjacency-csv|edgelist")
        ->check(CLI::IsMember({"adjacency-csv", "edgelist"}));
    cmd->add_option("--nodes", o.nodes, "Node count (required for edgelist input)");
    cmd->add_flag("--symmetrize", o.symmetrize, "Average the two triangles of asymmetric input");
    cmd->add_option("--manifest", o.manifest, "CSV manifest with columns path,group (A|B)");
}

qim::GraphReadOptions make_read_options(const InputOpts& o) {
    qim::GraphReadOptions r;
    r.format = qim::graph_format_from_string(o.input_format);
    r.symmetrize = o.symmetrize;
    r.nodes = o.nodes;
    return r;
}

struct ScenarioOpts {
    std::string preset;
    std::string config_file;
    int reps = -1;
    bool full = false;
    // preset knobs
    double density = -1.0, density_b = -1.0, mean_b = -1.0;
    int m = -1, vertices = -1, samples = -1;
};

void add_scenario(CLI::App* cmd, ScenarioOpts& s) {
    cmd->add_option("--preset", s.preset,
                    "Named scenario: 1.a 1.b 1.c 1.d 2.a 2.b 2.c 3.a 3.b 3.c 4");
    cmd->add_option("--config", s.config_file, "Scenario config file (key = value lines)");
    cmd->add_option("--reps", s.reps, "Replicates (default per preset)");
    cmd->add_flag("--full", s.full, "Full-scale run: 1000 replicates, 1000 permutations");
    cmd->add_option("--density", s.density, "Edge density knob");
    cmd->add_option("--density-b", s.density_b, "Group B edge density knob (preset 2.c)");
    cmd->add_option("--mean-b", s.mean_b, "Group B mean edge weight knob (presets 2.a, 2.b)");
    cmd->add_option("--m", s.m, "Attachment edges per step knob (presets 1.b, 1.d)");
    cmd->add_option("--vertices", s.vertices, "Node count knob (presets 1.d, 3.b)");
    cmd->add_option("--samples", s.samples, "Per-group sample size knob (preset 3.c)");
}

qim::ScenarioConfig build_scenario(const ScenarioOpts& s, const CommonOpts& o,
                                   const CLI::App* cmd) {
    qim::ScenarioConfig cfg;
    if (!s.config_file.empty()) {
        cfg = qim::parse_scenario_config_file(s.config_file);
    } else if (!s.preset.empty()) {
        qim::PresetKnobs knobs;
        if (s.density >= 0) knobs.density = s.density;
        if (s.density_b >= 0) knobs.density_b = s.density_b;
        if (s.mean_b >= 0) knobs.mean_b = s.mean_b;
        if (s.m >= 0) knobs.m = s.m;
        if (s.vertices >= 0) knobs.vertices = s.vertices;
        if (s.samples >= 0) knobs.samples = s.samples;
        cfg = qim::scenario_preset(s.preset, knobs);
    } else {
        throw CLI::ValidationError("simulate", "pass --preset or --config");
    }
    // Command-line overrides beat both preset and file values.
    if (cmd->count("--metric")) cfg.metric.metric = qim::metric_from_string(o.metric);
    if (cmd->count("--variant")) {
        if (o.variant == "plus" && cfg.metric.metric == qim::Metric::qim)
            cfg.metric.metric = qim::Metric::qim_plus;
        if (o.variant == "product" && cfg.metric.metric == qim::Metric::qim_plus)
            cfg.metric.metric = qim::Metric::qim;
    }
    if (cmd->count("--kappa")) cfg.metric.kappa = o.kappa;
    if (cmd->count("--abs")) cfg.metric.abs_weights = o.abs_weights;
    if (cmd->count("--perms")) cfg.perms = o.perms;
    if (cmd->count("--pseudo-count")) cfg.pseudo_count = o.pseudo_count;
    if (cmd->count("--alpha")) cfg.alpha = o.alpha;
    if (cmd->count("--seed")) cfg.seed = o.seed;
    if (cmd->count("--mr")) cfg.mr = o.mr;
    if (s.reps > 0) cfg.reps = s.reps;
    if (s.full) {
        cfg.reps = 1000;
        cfg.perms = 1000;
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-sample permutation testing for network data"};
    app.require_subcommand(1);

    // compare
    auto* compare = app.add_subcommand("compare", "Test two groups of graph files");
    CommonOpts compare_common;
    InputOpts compare_input;
    std::string dir_a, dir_b;
    compare->add_option("group-a", dir_a, "Directory with group A graphs");
    compare->add_option("group-b", dir_b, "Directory with group B graphs");
    add_common(compare, compare_common);
    add_input(compare, compare_input);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run a two-sample power/type-I scenario");
    CommonOpts sim_common;
    ScenarioOpts sim_scenario;
    add_common(simulate, sim_common);
    add_scenario(simulate, sim_scenario);

    // sweep-kappa
    auto* sweep = app.add_subcommand("sweep-kappa", "Power across kappa values and couplings");
    CommonOpts sweep_common;
    ScenarioOpts sweep_scenario;
    std::vector<double> sweep_kappas;
    std::string sweep_couplings = "both";
    add_common(sweep, sweep_common);
    add_scenario(sweep, sweep_scenario);
    sweep->add_option("--kappas", sweep_kappas,
                      "Kappa grid (default 0 0.001 0.01 0.1 1 10 100 1000)");
    sweep->add_option("--couplings", sweep_couplings, "product|plus|both")
        ->check(CLI::IsMember({"product", "plus", "both"}));

    // theory-check
    auto* theory = app.add_subcommand("theory-check",
                                      "Euclidean pseudo-F against its chi-squared limit");
    CommonOpts theory_common;
    int theory_dim = 5, theory_na = 100, theory_nb = 100, theory_reps = 500;
    double theory_shift = 0.0;
    theory->add_option("--dim", theory_dim, "Vector dimension (default 5)");
    theory->add_option("--na", theory_na, "Group A size (default 100)");
    theory->add_option("--nb", theory_nb, "Group B size (default 100)");
    theory->add_option("--reps", theory_reps, "Datasets (default 500)");
    theory->add_option("--shift", theory_shift, "Squared norm of the group B mean shift");
    add_common(theory, theory_common);

    // distmat
    auto* distmat = app.add_subcommand("distmat", "Pairwise distance matrix of graph files");
    CommonOpts dist_common;
    InputOpts dist_input;
    std::string dist_dir;
    bool dist_squared = false;
    distmat->add_option("graphs", dist_dir, "Directory with graph files");
    distmat->add_flag("--squared", dist_squared, "Emit squared distances");
    add_common(distmat, dist_common);
    add_input(distmat, dist_input);

    // gamma-star
    auto* gstar = app.add_subcommand("gamma-star", "Lorentzian width calibration per node count");
    std::vector<int> gstar_nodes;
    gstar->add_option("--nodes", gstar_nodes, "Node counts")->required();

    // gen
    auto* gen = app.add_subcommand("gen", "Write sample graphs from a generator");
    std::string gen_family = "er", gen_corr = "identity", gen_out_dir = ".";
    int gen_v = 20, gen_m = 1, gen_count = 1;
    double gen_p = 0.1, gen_mu = 0.0, gen_sigma2 = 0.0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--family", gen_family, "er|bipartite|ba|weighted-er|weighted-bipartite|mvn-full")
        ->check(CLI::IsMember({"er", "bipartite", "ba", "weighted-er", "weighted-bipartite",
                               "mvn-full"}));
    gen->add_option("--v", gen_v, "Node count");
    gen->add_option("--p", gen_p, "Edge density");
    gen->add_option("--m", gen_m, "Attachment edges per step");
    gen->add_option("--mu", gen_mu, "Mean edge weight");
    gen->add_option("--sigma2", gen_sigma2, "Edge weight variance");
    gen->add_option("--corr", gen_corr, "identity|toeplitz-bartlett")
        ->check(CLI::IsMember({"identity", "toeplitz-bartlett"}));
    gen->add_option("--count", gen_count, "Number of graphs");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out-dir", gen_out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compare->parsed()) {
            const auto read = make_read_options(compare_input);
            qim::GraphGroups groups;
            if (!compare_input.manifest.empty()) {
                groups = qim::load_groups_from_manifest(compare_input.manifest, read);
            } else if (!dir_a.empty() && !dir_b.empty()) {
                groups = qim::load_groups_from_dirs(dir_a, dir_b, read);
            } else {
                throw std::runtime_error("compare: pass two directories or --manifest");
            }
            const auto result = qim::compare_groups(
                groups.a, groups.b, make_params(compare_common), compare_common.mr,
                compare_common.perms, compare_common.pseudo_count, compare_common.seed,
                effective_workers(compare_common));
            emit(compare_common, compare_common.format == "csv" ? qim::test_result_csv(result)
                                                                : qim::test_result_json(result));
        } else if (simulate->parsed()) {
            const auto cfg = build_scenario(sim_scenario, sim_common, simulate);
            const auto report = qim::run_scenario(cfg, effective_workers(sim_common));
            std::cerr << "rejection rate " << report.rejection_rate << " over " << cfg.reps
                      << " replicates in " << report.wall_time_sec << " s\n";
            emit(sim_common, sim_common.format == "csv"
                                 ? qim::scenario_report_csv(report, cfg.alpha)
                                 : qim::scenario_report_json(cfg, report));
        } else if (sweep->parsed()) {
            auto cfg = build_scenario(sweep_scenario, sweep_common, sweep);
            std::vector<double> kappas = sweep_kappas;
            if (kappas.empty()) kappas = {0.0, 0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};
            const bool product = sweep_couplings != "plus";
            const bool plus = sweep_couplings != "product";
            const auto cells =
                qim::kappa_sweep(cfg, kappas, product, plus, effective_workers(sweep_common));
            emit(sweep_common, sweep_common.format == "csv"
                                   ? qim::sweep_report_csv(cells)
                                   : qim::sweep_report_json(cfg, cells));
        } else if (theory->parsed()) {
            const auto report = qim::theory_check_euclidean(
                theory_dim, theory_na, theory_nb, theory_reps, theory_common.seed, theory_shift,
                effective_workers(theory_common));
            emit(theory_common, qim::theory_report_json(report));
        } else if (distmat->parsed()) {
            const auto read = make_read_options(dist_input);
            std::vector<qim::AdjacencyMatrix> graphs;
            if (!dist_input.manifest.empty()) {
                auto groups = qim::load_groups_from_manifest(dist_input.manifest, read);
                graphs = std::move(groups.a);
                graphs.insert(graphs.end(), groups.b.begin(), groups.b.end());
            } else if (!dist_dir.empty()) {
                graphs = qim::load_graph_dir(dist_dir, read);
            } else {
                throw std::runtime_error("distmat: pass a directory or --manifest");
            }
            Eigen::MatrixXd d = qim::pairwise_distances(graphs, make_params(dist_common),
                                                        effective_workers(dist_common));
            if (dist_squared) d = d.cwiseProduct(d);
            std::ostringstream out;
            out.precision(17);
            for (Eigen::Index i = 0; i < d.rows(); ++i) {
                for (Eigen::Index j = 0; j < d.cols(); ++j) {
                    if (j) out << ',';
                    out << d(i, j);
                }
                out << '\n';
            }
            emit(dist_common, out.str());
        } else if (gstar->parsed()) {
            std::ostringstream out;
            out.precision(17);
            out << "n,gamma_star\n";
            for (const int n : gstar_nodes) out << n << ',' << qim::gamma_star(n) << '\n';
            std::cout << out.str();
        } else if (gen->parsed()) {
            qim::GeneratorSpec spec;
            spec.family = qim::family_from_string(gen_family);
            spec.v = gen_v;
            spec.p = gen_p;
            spec.m = gen_m;
            spec.mu = gen_mu;
            spec.sigma2 = gen_sigma2;
            spec.corr = qim::corr_from_string(gen_corr);
            std::filesystem::create_directories(gen_out_dir);
            for (int i = 0; i < gen_count; ++i) {
                const auto g = qim::generate(spec, qim::derive_seed(gen_seed, static_cast<std::uint64_t>(i)));
                std::ostringstream name;
                name << gen_family << "_" << std::setw(4) << std::setfill('0') << i << ".csv";
                qim::write_adjacency_csv(g, std::filesystem::path(gen_out_dir) / name.str());
            }
            std::cerr << "wrote " << gen_count << " graphs to " << gen_out_dir << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
