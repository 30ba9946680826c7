#pragma once

#include <Eigen/Dense>
#include <span>

#include "qim/adjacency.hpp"
#include "qim/metrics.hpp"

namespace qim {

/// Squared pairwise distance matrix over a pooled two-group sample. Group A
/// occupies indices [0, n_a), group B the rest. Entries are symmetric with a
/// zero diagonal; both groups need at least two members.
struct DistanceMatrix {
    int n_a = 0;
    int n_b = 0;
    Eigen::MatrixXd entries;

    int n() const { return n_a + n_b; }
};

/// Validates and wraps an externally built matrix of squared distances.
DistanceMatrix make_distance_matrix(Eigen::MatrixXd squared_entries, int n_a);

/// Raw (unsquared) pairwise distances under the configured metric, computed
/// once per unordered pair. Spectral contexts are built once per graph, so
/// the eigensolver runs n times rather than n^2.
Eigen::MatrixXd pairwise_distances(std::span<const AdjacencyMatrix> samples,
                                   const QimParams& params, int workers = 1);

/// Squared pairwise distances with the group split attached.
DistanceMatrix distance_matrix(std::span<const AdjacencyMatrix> samples, int n_a,
                               const QimParams& params, int workers = 1);

/// Relabels the matrix by perm: entries'[i][j] = entries[perm[i]][perm[j]].
/// The group split is unchanged. perm must be a bijection on {0..n-1}.
DistanceMatrix permute_distance_matrix(const DistanceMatrix& d, std::span<const int> perm);

}  // namespace qim
