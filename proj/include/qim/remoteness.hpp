#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>

#include "qim/distance.hpp"
#include "qim/permtest.hpp"

namespace qim {

/// Mutual remoteness over a pooled sample: entries in [0, 1], symmetric,
/// zero diagonal by convention.
struct RemotenessMatrix {
    Eigen::MatrixXd entries;
};

/// Empirical mutual proximity over S points with raw pairwise distances:
///
///   MP[i][j] = |{k : d(i,k) > d(i,j)} intersect {k : d(j,k) > d(j,i)}| / S
///
/// with k ranging over all S points (the self terms never pass the strict
/// inequality). Ties break toward non-exceedance. Requires S >= 3. Depends
/// only on distance ranks, so any strictly increasing transform of the
/// distances leaves it unchanged.
Eigen::MatrixXd mutual_proximity(const Eigen::MatrixXd& raw_distances);

/// MR = 1 - MP off the diagonal; diagonal forced to 0.
RemotenessMatrix mutual_remoteness(const Eigen::MatrixXd& mp);

/// Squared mutual remoteness entries with the group split attached, ready
/// for the pseudo-F machinery.
DistanceMatrix remoteness_distance_matrix(const Eigen::MatrixXd& raw_distances, int n_a);

/// Full pipeline: metric distances -> MP -> MR -> squared MR entries ->
/// permutation test.
TestResult mr_test(std::span<const AdjacencyMatrix> samples, int n_a, const QimParams& params,
                   int perm_count, int pseudo_count, std::uint64_t seed, int workers = 1);

}  // namespace qim
