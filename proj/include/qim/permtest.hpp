#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qim/distance.hpp"

namespace qim {

/// Empirical first and second moments of the within-group (both groups
/// pooled) and between-group squared-distance entries.
struct MomentEstimates {
    double mu_within = 0.0;
    double mu_between = 0.0;
    double delta_mu = 0.0;
    double var_within = 0.0;
    double var_between = 0.0;
    double delta_var = 0.0;
};

struct TestResult {
    double f0 = 0.0;
    double p_value = 1.0;
    int perm_count = 0;
    int pseudo_count = 1;
    std::uint64_t seed = 0;
    double perm_mean = 0.0;
    double perm_var = 0.0;
    MomentEstimates moments;
};

void to_json(nlohmann::json& j, const TestResult& r);

/// Pseudo-F ratio of between-group to within-group squared distances:
///
///       (1/n) S_all - (1/nA) S_A - (1/nB) S_B
///   F = -------------------------------------- ,
///       (1/(n-2)) ((1/nA) S_A + (1/nB) S_B)
///
/// where S_all, S_A, S_B sum entries over unordered pairs of the pooled
/// sample, group A, and group B. A zero denominator yields +inf when the
/// numerator is positive and 1 when the whole matrix is zero.
double f_statistic(const DistanceMatrix& d);

MomentEstimates moment_estimates(const DistanceMatrix& d);

/// p-value (c + #{f >= f0}) / (K + c); ties count toward rejection.
double p_value_from_scores(double f0, std::span<const double> permuted_f, int pseudo_count);

/// Monte Carlo permutation test with perm_count uniformly random
/// relabelings. The k-th permutation is a pure function of (seed, k), so the
/// result is identical at any worker count.
TestResult permutation_test(const DistanceMatrix& d, int perm_count, int pseudo_count,
                            std::uint64_t seed, int workers = 1);

/// F for every one of the n! permutations (enumeration order of
/// std::next_permutation). Guarded to n <= 8.
std::vector<double> exhaustive_f_values(const DistanceMatrix& d);

/// p-value over the full permutation group, same tie rule as the Monte
/// Carlo path.
double exhaustive_p_value(const DistanceMatrix& d, int pseudo_count);

/// Rejection probability of the level-alpha randomized permutation test:
/// 1 above the critical order statistic, 0 below, and the tie-splitting
/// fraction exactly at it. Averaged over all relabelings of d this equals
/// alpha identically, which the tests verify.
double exhaustive_randomized_test(const DistanceMatrix& d, double alpha);

}  // namespace qim
