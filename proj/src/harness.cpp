#include "qim/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qim/gof.hpp"
#include "qim/parallel.hpp"
#include "qim/remoteness.hpp"
#include "qim/rng.hpp"

namespace qim {

namespace {

using nlohmann::json;

// Seed stream tags so graphs, permutations, and theory-check draws never
// collide.
enum SeedTag : std::uint64_t { kGroupA = 0, kGroupB = 1, kPermutations = 2 };

std::vector<AdjacencyMatrix> generate_replicate(const ScenarioConfig& cfg, std::uint64_t rep) {
    std::vector<AdjacencyMatrix> samples;
    samples.reserve(static_cast<std::size_t>(cfg.n_a + cfg.n_b));
    for (int g = 0; g < cfg.n_a; ++g)
        samples.push_back(generate(cfg.group_a, derive_seed(cfg.seed, rep, kGroupA, static_cast<std::uint64_t>(g))));
    for (int g = 0; g < cfg.n_b; ++g)
        samples.push_back(generate(cfg.group_b, derive_seed(cfg.seed, rep, kGroupB, static_cast<std::uint64_t>(g))));
    return samples;
}

void wilson_interval(std::size_t hits, std::size_t total, double& lo, double& hi) {
    if (total == 0) {
        lo = 0.0;
        hi = 1.0;
        return;
    }
    const double z = 1.959963984540054;
    const double n = static_cast<double>(total);
    const double phat = static_cast<double>(hits) / n;
    const double denom = 1.0 + z * z / n;
    const double center = phat + z * z / (2.0 * n);
    const double margin = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n));
    lo = std::max(0.0, (center - margin) / denom);
    hi = std::min(1.0, (center + margin) / denom);
}

PowerReport summarize(std::vector<double> p_values, std::vector<double> f0_values, double alpha,
                      double elapsed) {
    PowerReport report;
    report.p_values = std::move(p_values);
    report.f0_values = std::move(f0_values);
    report.wall_time_sec = elapsed;
    std::size_t hits = 0, valid = 0;
    for (const double p : report.p_values) {
        if (std::isnan(p)) continue;
        ++valid;
        hits += (p <= alpha);
    }
    report.rejection_rate = valid == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(valid);
    wilson_interval(hits, valid, report.ci95_lo, report.ci95_hi);
    return report;
}

void check_config(const ScenarioConfig& cfg) {
    if (cfg.reps < 1) throw std::invalid_argument("scenario: reps must be >= 1");
    if (cfg.perms < 1) throw std::invalid_argument("scenario: perms must be >= 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("scenario: alpha must be in (0,1)");
    if (cfg.n_a < 2 || cfg.n_b < 2) throw std::invalid_argument("scenario: need at least 2 samples per group");
}

json spec_to_json(const GeneratorSpec& s) {
    return json{{"family", to_string(s.family)}, {"v", s.v},       {"p", s.p},
                {"m", s.m},                      {"mu", s.mu},     {"sigma2", s.sigma2},
                {"corr", to_string(s.corr)}};
}

json config_to_json(const ScenarioConfig& cfg) {
    return json{{"group_a", spec_to_json(cfg.group_a)},
                {"group_b", spec_to_json(cfg.group_b)},
                {"n_a", cfg.n_a},
                {"n_b", cfg.n_b},
                {"reps", cfg.reps},
                {"perms", cfg.perms},
                {"pseudo_count", cfg.pseudo_count},
                {"alpha", cfg.alpha},
                {"metric", to_string(cfg.metric.metric)},
                {"kappa", cfg.metric.kappa},
                {"mr", cfg.mr},
                {"seed", cfg.seed}};
}

json report_to_json(const PowerReport& report) {
    json reps = json::array();
    for (std::size_t i = 0; i < report.p_values.size(); ++i) {
        reps.push_back(json{{"p_value", report.p_values[i]}, {"f0", report.f0_values[i]}});
    }
    return json{{"rejection_rate", report.rejection_rate},
                {"ci95", json::array({report.ci95_lo, report.ci95_hi})},
                {"per_replicate", std::move(reps)}};
}

}  // namespace

PowerReport run_scenario(const ScenarioConfig& cfg, int workers) {
    check_config(cfg);
    const auto start = std::chrono::steady_clock::now();
    const auto reps = static_cast<std::size_t>(cfg.reps);
    std::vector<double> p_values(reps, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> f0_values(reps, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::string> failures(reps);

    parallel_for(reps, workers, [&](std::size_t r) {
        try {
            const std::vector<AdjacencyMatrix> samples = generate_replicate(cfg, r);
            const std::uint64_t test_seed = derive_seed(cfg.seed, r, kPermutations);
            const TestResult t =
                cfg.mr ? mr_test(samples, cfg.n_a, cfg.metric, cfg.perms, cfg.pseudo_count,
                                 test_seed)
                       : permutation_test(distance_matrix(samples, cfg.n_a, cfg.metric),
                                          cfg.perms, cfg.pseudo_count, test_seed);
            p_values[r] = t.p_value;
            f0_values[r] = t.f0;
        } catch (const std::exception& e) {
            failures[r] = e.what();
        }
    });

    std::size_t failed = 0;
    std::string first_failure;
    for (std::size_t r = 0; r < reps; ++r) {
        if (!failures[r].empty()) {
            ++failed;
            if (first_failure.empty())
                first_failure = "replicate " + std::to_string(r) + ": " + failures[r];
        }
    }
    if (failed * 100 > reps) {
        throw std::runtime_error("scenario aborted, " + std::to_string(failed) + "/" +
                                 std::to_string(reps) + " replicates failed; first: " +
                                 first_failure);
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summarize(std::move(p_values), std::move(f0_values), cfg.alpha, elapsed);
}

std::vector<SweepCell> kappa_sweep(const ScenarioConfig& base, std::span<const double> kappas,
                                   bool include_product, bool include_plus, int workers) {
    check_config(base);
    if (kappas.empty()) throw std::invalid_argument("kappa_sweep: empty kappa list");
    for (const double k : kappas)
        if (k < 0.0) throw std::invalid_argument("kappa_sweep: kappa must be >= 0");
    if (!include_product && !include_plus) {
        throw std::invalid_argument("kappa_sweep: select at least one coupling");
    }

    std::vector<SweepCell> cells;
    for (const double k : kappas) {
        if (include_product) cells.push_back({k, Metric::qim, {}});
        if (include_plus) cells.push_back({k, Metric::qim_plus, {}});
    }

    const bool any_spectral =
        std::any_of(kappas.begin(), kappas.end(), [](double k) { return k != 0.0; });
    const auto reps = static_cast<std::size_t>(base.reps);
    const int n = base.n_a + base.n_b;

    // cell-major results
    std::vector<std::vector<double>> cell_p(cells.size(), std::vector<double>(reps));
    std::vector<std::vector<double>> cell_f0(cells.size(), std::vector<double>(reps));

    parallel_for(reps, workers, [&](std::size_t r) {
        const std::vector<AdjacencyMatrix> samples = generate_replicate(base, r);
        const std::uint64_t test_seed = derive_seed(base.seed, r, kPermutations);

        // The edge-level and spectral distances are computed once per
        // replicate; every (kappa, coupling) cell reuses them.
        const Eigen::MatrixXd da = pairwise_distances(samples, QimParams{Metric::qed, 0.0});
        Eigen::MatrixXd im = Eigen::MatrixXd::Zero(n, n);
        if (any_spectral) {
            QimParams im_params{Metric::im, 0.0, base.metric.abs_weights};
            im = pairwise_distances(samples, im_params);
        }

        for (std::size_t c = 0; c < cells.size(); ++c) {
            const double kappa = cells[c].kappa;
            Eigen::MatrixXd raw;
            if (cells[c].metric == Metric::qim) {
                raw = (da.array() * (1.0 + kappa * im.array())).matrix();
            } else {
                raw = da + kappa * im;
            }
            const DistanceMatrix d =
                base.mr ? remoteness_distance_matrix(raw, base.n_a)
                        : make_distance_matrix(raw.cwiseProduct(raw), base.n_a);
            const TestResult t = permutation_test(d, base.perms, base.pseudo_count, test_seed);
            cell_p[c][r] = t.p_value;
            cell_f0[c][r] = t.f0;
        }
    });

    for (std::size_t c = 0; c < cells.size(); ++c) {
        cells[c].report = summarize(std::move(cell_p[c]), std::move(cell_f0[c]), base.alpha, 0.0);
    }
    return cells;
}

TheoryCheckReport theory_check_euclidean(int v, int n_a, int n_b, int reps, std::uint64_t seed,
                                         double shift_norm2, int workers) {
    if (v < 1) throw std::invalid_argument("theory_check: dimension must be >= 1");
    if (n_a < 2 || n_b < 2) throw std::invalid_argument("theory_check: groups need >= 2 samples");
    if (reps < 2) throw std::invalid_argument("theory_check: need >= 2 replicates");
    if (shift_norm2 < 0.0) throw std::invalid_argument("theory_check: shift must be >= 0");

    const int n = n_a + n_b;
    const double shift = std::sqrt(shift_norm2);
    std::vector<double> f0(static_cast<std::size_t>(reps));
    std::vector<double> fperm(static_cast<std::size_t>(reps));

    parallel_for(static_cast<std::size_t>(reps), workers, [&](std::size_t r) {
        std::mt19937_64 rng(derive_seed(seed, r));
        NormalSampler normal(rng);
        Eigen::MatrixXd x(n, v);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < v; ++j) x(i, j) = normal();
        for (int i = n_a; i < n; ++i) x(i, 0) += shift;

        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double sq = (x.row(i) - x.row(j)).squaredNorm();
                d(i, j) = sq;
                d(j, i) = sq;
            }
        }
        const DistanceMatrix dm = make_distance_matrix(std::move(d), n_a);
        f0[r] = f_statistic(dm);
        const std::vector<int> perm = random_permutation(n, rng);
        fperm[r] = f_statistic(permute_distance_matrix(dm, perm));
    });

    TheoryCheckReport report;
    report.dim = v;
    report.n_a = n_a;
    report.n_b = n_b;
    report.reps = reps;
    report.shift_norm2 = shift_norm2;
    double mean = 0.0;
    for (const double f : f0) mean += f;
    mean /= static_cast<double>(reps);
    double var = 0.0;
    for (const double f : f0) var += (f - mean) * (f - mean);
    var /= static_cast<double>(reps - 1);
    report.mean_f = mean;
    report.var_f = var;

    // Null limit of the statistic is chi-squared_v scaled by 1/v.
    const auto limit_cdf = [v](double x) { return chi_squared_cdf(v, v * x); };
    const KsResult ks = ks_one_sample(f0, limit_cdf);
    report.ks_stat = ks.statistic;
    report.ks_p = ks.p_value;
    const KsResult perm_ks = ks_two_sample(fperm, f0);
    report.perm_ks_stat = perm_ks.statistic;
    report.perm_ks_p = perm_ks.p_value;
    return report;
}

// -- presets ----------------------------------------------------------------

namespace {

void reject_unused_knobs(const std::string& name, const PresetKnobs& knobs,
                         bool density, bool density_b, bool mean_b, bool m, bool vertices,
                         bool samples) {
    if ((knobs.density && !density) || (knobs.density_b && !density_b) ||
        (knobs.mean_b && !mean_b) || (knobs.m && !m) || (knobs.vertices && !vertices) ||
        (knobs.samples && !samples)) {
        throw std::invalid_argument("preset " + name + " does not accept that knob");
    }
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"1.a", "1.b", "1.c", "1.d", "2.a", "2.b", "2.c", "3.a", "3.b", "3.c", "4"};
}

ScenarioConfig scenario_preset(const std::string& name, const PresetKnobs& knobs) {
    ScenarioConfig cfg;
    cfg.metric = QimParams{Metric::qim, 1.0, false};
    cfg.n_a = cfg.n_b = 20;
    cfg.reps = 100;
    cfg.perms = 500;
    cfg.alpha = 0.05;

    auto& a = cfg.group_a;
    auto& b = cfg.group_b;
    a.v = b.v = 20;

    if (name == "1.a" || name == "4") {
        reject_unused_knobs(name, knobs, true, false, false, false, false, false);
        const double density = knobs.density.value_or(0.10);
        a = {GraphFamily::er, 20, density};
        b = {GraphFamily::bipartite, 20, density};
    } else if (name == "1.b") {
        reject_unused_knobs(name, knobs, false, false, false, true, false, false);
        const int m = knobs.m.value_or(1);
        b = {GraphFamily::ba, 20, 0.0, m};
        a = {GraphFamily::er, 20, matched_er_p_for_ba(20, m)};
    } else if (name == "1.c") {
        reject_unused_knobs(name, knobs, true, false, false, false, false, false);
        const double density = knobs.density.value_or(0.5);
        a = {GraphFamily::er, 20, density};
        b = a;
    } else if (name == "1.d") {
        reject_unused_knobs(name, knobs, false, false, false, true, true, false);
        const int v = knobs.vertices.value_or(20);
        const int m = knobs.m.value_or(1);
        a = {GraphFamily::ba, v, 0.0, m};
        b = a;
    } else if (name == "2.a" || name == "2.b") {
        reject_unused_knobs(name, knobs, false, false, true, false, false, false);
        const CorrKind corr =
            name == "2.a" ? CorrKind::identity : CorrKind::toeplitz_bartlett;
        a = {GraphFamily::mvn_full, 20, 1.0, 1, 10.0, 1.0, corr};
        b = a;
        b.mu = knobs.mean_b.value_or(10.25);
    } else if (name == "2.c") {
        reject_unused_knobs(name, knobs, true, true, false, false, false, false);
        const double density_a = knobs.density.value_or(0.5);
        a = {GraphFamily::weighted_er, 20, density_a, 1, 4.0, 0.25, CorrKind::identity};
        b = a;
        b.p = knobs.density_b.value_or(0.45);
    } else if (name == "3.a" || name == "3.b" || name == "3.c") {
        reject_unused_knobs(name, knobs, true, false, false, false, name == "3.b",
                            name == "3.c");
        const double density = knobs.density.value_or(0.1);
        int v = 20;
        if (name == "3.b") v = knobs.vertices.value_or(100);
        if (name == "3.c") cfg.n_a = cfg.n_b = knobs.samples.value_or(100);
        a = {GraphFamily::weighted_er, v, density, 1, 4.0, 0.25, CorrKind::identity};
        b = {GraphFamily::weighted_bipartite, v, density, 1, 4.0, 0.25, CorrKind::identity};
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return cfg;
}

// -- scenario config files ------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

void apply_spec_key(GeneratorSpec& spec, const std::string& key, const std::string& value) {
    if (key == "family") spec.family = family_from_string(value);
    else if (key == "v") spec.v = std::stoi(value);
    else if (key == "p") spec.p = std::stod(value);
    else if (key == "m") spec.m = std::stoi(value);
    else if (key == "mu") spec.mu = std::stod(value);
    else if (key == "sigma2") spec.sigma2 = std::stod(value);
    else if (key == "corr") spec.corr = corr_from_string(value);
    else throw std::invalid_argument("unknown generator key: " + key);
}

}  // namespace

ScenarioConfig parse_scenario_config(std::istream& in) {
    ScenarioConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("scenario config line " + std::to_string(lineno) +
                                     ": expected 'key = value'");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        try {
            if (key.rfind("a.", 0) == 0) apply_spec_key(cfg.group_a, key.substr(2), value);
            else if (key.rfind("b.", 0) == 0) apply_spec_key(cfg.group_b, key.substr(2), value);
            else if (key == "n_a") cfg.n_a = std::stoi(value);
            else if (key == "n_b") cfg.n_b = std::stoi(value);
            else if (key == "reps") cfg.reps = std::stoi(value);
            else if (key == "perms") cfg.perms = std::stoi(value);
            else if (key == "pseudo_count") cfg.pseudo_count = std::stoi(value);
            else if (key == "alpha") cfg.alpha = std::stod(value);
            else if (key == "metric") cfg.metric.metric = metric_from_string(value);
            else if (key == "kappa") cfg.metric.kappa = std::stod(value);
            else if (key == "abs_weights") cfg.metric.abs_weights = parse_bool(value);
            else if (key == "mr") cfg.mr = parse_bool(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else throw std::invalid_argument("unknown key: " + key);
        } catch (const std::exception& e) {
            throw std::runtime_error("scenario config line " + std::to_string(lineno) + ": " +
                                     e.what());
        }
    }
    return cfg;
}

ScenarioConfig parse_scenario_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario config: " + path.string());
    return parse_scenario_config(in);
}

std::string serialize_scenario_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    const auto emit_spec = [&out](const char* prefix, const GeneratorSpec& s) {
        out << prefix << ".family = " << to_string(s.family) << '\n';
        out << prefix << ".v = " << s.v << '\n';
        out << prefix << ".p = " << s.p << '\n';
        out << prefix << ".m = " << s.m << '\n';
        out << prefix << ".mu = " << s.mu << '\n';
        out << prefix << ".sigma2 = " << s.sigma2 << '\n';
        out << prefix << ".corr = " << to_string(s.corr) << '\n';
    };
    emit_spec("a", cfg.group_a);
    emit_spec("b", cfg.group_b);
    out << "n_a = " << cfg.n_a << '\n';
    out << "n_b = " << cfg.n_b << '\n';
    out << "reps = " << cfg.reps << '\n';
    out << "perms = " << cfg.perms << '\n';
    out << "pseudo_count = " << cfg.pseudo_count << '\n';
    out << "alpha = " << cfg.alpha << '\n';
    out << "metric = " << to_string(cfg.metric.metric) << '\n';
    out << "kappa = " << cfg.metric.kappa << '\n';
    out << "abs_weights = " << (cfg.metric.abs_weights ? "true" : "false") << '\n';
    out << "mr = " << (cfg.mr ? "true" : "false") << '\n';
    out << "seed = " << cfg.seed << '\n';
    return out.str();
}

// -- two-group comparison --------------------------------------------------------

std::vector<AdjacencyMatrix> load_graph_dir(const std::filesystem::path& dir,
                                            const GraphReadOptions& options) {
    if (!std::filesystem::is_directory(dir)) {
        throw std::runtime_error("not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<AdjacencyMatrix> graphs;
    graphs.reserve(files.size());
    for (const auto& f : files) graphs.push_back(read_graph(f, options));
    return graphs;
}

GraphGroups load_groups_from_dirs(const std::filesystem::path& dir_a,
                                  const std::filesystem::path& dir_b,
                                  const GraphReadOptions& options) {
    return {load_graph_dir(dir_a, options), load_graph_dir(dir_b, options)};
}

GraphGroups load_groups_from_manifest(const std::filesystem::path& manifest,
                                      const GraphReadOptions& options) {
    GraphGroups groups;
    for (const auto& entry : read_manifest(manifest)) {
        auto& bucket = entry.group == 'A' ? groups.a : groups.b;
        bucket.push_back(read_graph(entry.path, options));
    }
    return groups;
}

TestResult compare_groups(std::span<const AdjacencyMatrix> group_a,
                          std::span<const AdjacencyMatrix> group_b, const QimParams& params,
                          bool mr, int perm_count, int pseudo_count, std::uint64_t seed,
                          int workers) {
    if (group_a.size() < 2 || group_b.size() < 2) {
        throw std::invalid_argument("each group needs at least 2 graphs, got " +
                                    std::to_string(group_a.size()) + " and " +
                                    std::to_string(group_b.size()));
    }
    std::vector<AdjacencyMatrix> samples(group_a.begin(), group_a.end());
    samples.insert(samples.end(), group_b.begin(), group_b.end());
    const int n_a = static_cast<int>(group_a.size());
    if (mr) return mr_test(samples, n_a, params, perm_count, pseudo_count, seed, workers);
    return permutation_test(distance_matrix(samples, n_a, params, workers), perm_count,
                            pseudo_count, seed, workers);
}

// -- reports ----------------------------------------------------------------------

std::string scenario_report_json(const ScenarioConfig& cfg, const PowerReport& report) {
    json j{{"config", config_to_json(cfg)}, {"report", report_to_json(report)}};
    return j.dump(2) + "\n";
}

std::string scenario_report_csv(const PowerReport& report, double alpha) {
    std::ostringstream out;
    out << "replicate,p_value,f0,reject\n";
    for (std::size_t i = 0; i < report.p_values.size(); ++i) {
        out << i << ',' << report.p_values[i] << ',' << report.f0_values[i] << ','
            << (report.p_values[i] <= alpha ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string sweep_report_json(const ScenarioConfig& cfg, const std::vector<SweepCell>& cells) {
    json grid = json::array();
    for (const auto& cell : cells) {
        grid.push_back(json{{"kappa", cell.kappa},
                            {"coupling", cell.metric == Metric::qim ? "product" : "plus"},
                            {"report", report_to_json(cell.report)}});
    }
    json j{{"config", config_to_json(cfg)}, {"cells", std::move(grid)}};
    return j.dump(2) + "\n";
}

std::string sweep_report_csv(const std::vector<SweepCell>& cells) {
    std::ostringstream out;
    out << "kappa,coupling,rejection_rate,ci95_lo,ci95_hi\n";
    for (const auto& cell : cells) {
        out << cell.kappa << ',' << (cell.metric == Metric::qim ? "product" : "plus") << ','
            << cell.report.rejection_rate << ',' << cell.report.ci95_lo << ','
            << cell.report.ci95_hi << '\n';
    }
    return out.str();
}

std::string test_result_json(const TestResult& result) {
    return json(result).dump(2) + "\n";
}

std::string test_result_csv(const TestResult& result) {
    std::ostringstream out;
    out.precision(17);
    out << "f0,p_value,perm_count,pseudo_count,seed,perm_mean,perm_var,mu_within,mu_between,"
           "delta_mu\n";
    out << result.f0 << ',' << result.p_value << ',' << result.perm_count << ','
        << result.pseudo_count << ',' << result.seed << ',' << result.perm_mean << ','
        << result.perm_var << ',' << result.moments.mu_within << ',' << result.moments.mu_between
        << ',' << result.moments.delta_mu << '\n';
    return out.str();
}

std::string theory_report_json(const TheoryCheckReport& r) {
    json j{{"dim", r.dim},
           {"n_a", r.n_a},
           {"n_b", r.n_b},
           {"reps", r.reps},
           {"shift_norm2", r.shift_norm2},
           {"mean_f", r.mean_f},
           {"var_f", r.var_f},
           {"ks_stat", r.ks_stat},
           {"ks_p", r.ks_p},
           {"perm_ks_stat", r.perm_ks_stat},
           {"perm_ks_p", r.perm_ks_p}};
    return j.dump(2) + "\n";
}

}  // namespace qim
