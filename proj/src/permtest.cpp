#include "qim/permtest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qim/parallel.hpp"
#include "qim/rng.hpp"

namespace qim {

namespace {

struct PairSums {
    double all = 0.0;
    double within_a = 0.0;
    double within_b = 0.0;
};

// Sums of upper-triangle entries over the pooled sample and the two groups
// defined by membership[] (true = group A).
PairSums pair_sums(const Eigen::MatrixXd& e, const std::vector<bool>& membership) {
    PairSums s;
    const int n = static_cast<int>(e.rows());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = e(i, j);
            s.all += d;
            if (membership[static_cast<std::size_t>(i)] && membership[static_cast<std::size_t>(j)])
                s.within_a += d;
            else if (!membership[static_cast<std::size_t>(i)] &&
                     !membership[static_cast<std::size_t>(j)])
                s.within_b += d;
        }
    }
    return s;
}

double f_from_sums(const PairSums& s, int n_a, int n_b) {
    const int n = n_a + n_b;
    const double within = s.within_a / n_a + s.within_b / n_b;
    const double numerator = s.all / n - within;
    const double denominator = within / (n - 2);
    if (denominator == 0.0) {
        return numerator > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    return numerator / denominator;
}

// F of the matrix relabeled so that the member set of group A becomes
// {perm[0..n_a)}. Only the member set matters, not the order.
double permuted_f(const DistanceMatrix& d, std::span<const int> perm) {
    const int n = d.n();
    std::vector<bool> in_a(static_cast<std::size_t>(n), false);
    for (int i = 0; i < d.n_a; ++i) in_a[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = true;
    return f_from_sums(pair_sums(d.entries, in_a), d.n_a, d.n_b);
}

}  // namespace

void to_json(nlohmann::json& j, const TestResult& r) {
    j = nlohmann::json{{"f0", r.f0},
                       {"p_value", r.p_value},
                       {"perm_count", r.perm_count},
                       {"pseudo_count", r.pseudo_count},
                       {"seed", r.seed},
                       {"perm_mean", r.perm_mean},
                       {"perm_var", r.perm_var},
                       {"mu_within", r.moments.mu_within},
                       {"mu_between", r.moments.mu_between},
                       {"delta_mu", r.moments.delta_mu}};
}

double f_statistic(const DistanceMatrix& d) {
    std::vector<bool> in_a(static_cast<std::size_t>(d.n()), false);
    std::fill(in_a.begin(), in_a.begin() + d.n_a, true);
    return f_from_sums(pair_sums(d.entries, in_a), d.n_a, d.n_b);
}

MomentEstimates moment_estimates(const DistanceMatrix& d) {
    double sum_w = 0.0, sum2_w = 0.0, sum_b = 0.0, sum2_b = 0.0;
    std::size_t count_w = 0, count_b = 0;
    const int n = d.n();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double e = d.entries(i, j);
            const bool cross = (i < d.n_a) != (j < d.n_a);
            if (cross) {
                sum_b += e;
                sum2_b += e * e;
                ++count_b;
            } else {
                sum_w += e;
                sum2_w += e * e;
                ++count_w;
            }
        }
    }
    MomentEstimates m;
    m.mu_within = sum_w / static_cast<double>(count_w);
    m.mu_between = sum_b / static_cast<double>(count_b);
    m.delta_mu = m.mu_between - m.mu_within;
    m.var_within = sum2_w / static_cast<double>(count_w) - m.mu_within * m.mu_within;
    m.var_between = sum2_b / static_cast<double>(count_b) - m.mu_between * m.mu_between;
    // Guard tiny negative round-off.
    m.var_within = std::max(0.0, m.var_within);
    m.var_between = std::max(0.0, m.var_between);
    m.delta_var = m.var_between - m.var_within;
    return m;
}

double p_value_from_scores(double f0, std::span<const double> permuted_f, int pseudo_count) {
    if (pseudo_count <= 0) throw std::invalid_argument("pseudo_count must be positive");
    std::size_t exceed = 0;
    for (const double f : permuted_f) exceed += (f >= f0);
    return (static_cast<double>(pseudo_count) + static_cast<double>(exceed)) /
           (static_cast<double>(permuted_f.size()) + static_cast<double>(pseudo_count));
}

TestResult permutation_test(const DistanceMatrix& d, int perm_count, int pseudo_count,
                            std::uint64_t seed, int workers) {
    if (perm_count < 1) throw std::invalid_argument("perm_count must be >= 1");
    if (pseudo_count <= 0) throw std::invalid_argument("pseudo_count must be positive");

    TestResult result;
    result.f0 = f_statistic(d);
    result.perm_count = perm_count;
    result.pseudo_count = pseudo_count;
    result.seed = seed;
    result.moments = moment_estimates(d);

    std::vector<double> scores(static_cast<std::size_t>(perm_count));
    parallel_for(scores.size(), workers, [&](std::size_t k) {
        std::mt19937_64 rng(derive_seed(seed, k));
        const std::vector<int> perm = random_permutation(d.n(), rng);
        scores[k] = permuted_f(d, perm);
    });

    result.p_value = p_value_from_scores(result.f0, scores, pseudo_count);
    // Fixed-order reduction keeps the moments bitwise reproducible.
    double mean = 0.0;
    for (const double f : scores) mean += f;
    mean /= static_cast<double>(scores.size());
    double var = 0.0;
    for (const double f : scores) var += (f - mean) * (f - mean);
    var /= static_cast<double>(scores.size());
    result.perm_mean = mean;
    result.perm_var = var;
    return result;
}

std::vector<double> exhaustive_f_values(const DistanceMatrix& d) {
    const int n = d.n();
    if (n > 8) {
        throw std::invalid_argument("exhaustive enumeration is limited to n <= 8");
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> out;
    do {
        out.push_back(permuted_f(d, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

double exhaustive_p_value(const DistanceMatrix& d, int pseudo_count) {
    const std::vector<double> scores = exhaustive_f_values(d);
    return p_value_from_scores(f_statistic(d), scores, pseudo_count);
}

double exhaustive_randomized_test(const DistanceMatrix& d, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
    std::vector<double> scores = exhaustive_f_values(d);
    const double f0 = f_statistic(d);
    const auto total = static_cast<double>(scores.size());
    std::sort(scores.begin(), scores.end());
    const auto k = static_cast<std::size_t>(std::ceil(total * (1.0 - alpha)));
    const double critical = scores[k - 1];  // k-th order statistic
    if (f0 > critical) return 1.0;
    if (f0 < critical) return 0.0;
    double above = 0.0, at = 0.0;
    for (const double f : scores) {
        above += (f > critical);
        at += (f == critical);
    }
    return (total * alpha - above) / at;
}

}  // namespace qim
