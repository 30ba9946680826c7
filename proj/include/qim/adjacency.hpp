#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qim {

/// Dense weighted adjacency matrix of a simple undirected network.
///
/// Construction validates and canonicalizes the input: the matrix must be
/// square, finite, symmetric within 1e-9 relative tolerance, and have a
/// diagonal below 1e-12 in absolute value. The stored matrix is exactly
/// symmetric (triangles averaged) with an exactly zero diagonal. Instances
/// are immutable and safe to share across threads.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;
    explicit AdjacencyMatrix(Eigen::MatrixXd weights);

    int node_count() const { return static_cast<int>(weights_.rows()); }
    const Eigen::MatrixXd& weights() const { return weights_; }
    double weight(int i, int j) const { return weights_(i, j); }

    /// Number of undirected edges (nonzero upper-triangle entries).
    int edge_count() const;
    bool has_negative_weights() const { return weights_.size() > 0 && weights_.minCoeff() < 0.0; }

    friend bool operator==(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
        return a.weights_.rows() == b.weights_.rows() && a.weights_ == b.weights_;
    }

private:
    Eigen::MatrixXd weights_;
};

/// Column-stacking chart W -> w of length v^2. Undirected edges appear twice.
std::vector<double> vectorize(const AdjacencyMatrix& g);

/// Weighted graph Laplacian L = diag(strengths) - W.
Eigen::MatrixXd laplacian(const AdjacencyMatrix& g);

/// Entrywise absolute value of the weights (for spectral use on signed graphs).
AdjacencyMatrix abs_weights(const AdjacencyMatrix& g);

}  // namespace qim
