#include "qim/adjacency.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qim {

namespace {

constexpr double kDiagonalTol = 1e-12;
constexpr double kSymmetryTol = 1e-9;

}  // namespace

AdjacencyMatrix::AdjacencyMatrix(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
    const auto rows = weights_.rows();
    if (rows == 0 || weights_.cols() != rows) {
        throw std::invalid_argument("adjacency matrix must be square and nonempty, got " +
                                    std::to_string(rows) + "x" + std::to_string(weights_.cols()));
    }
    if (!weights_.allFinite()) {
        throw std::invalid_argument("adjacency matrix contains NaN or Inf entries");
    }
    const double scale = std::max(1.0, weights_.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (std::abs(weights_(i, i)) >= kDiagonalTol) {
            throw std::invalid_argument("self-loop at node " + std::to_string(i) +
                                        " (diagonal entry " + std::to_string(weights_(i, i)) + ")");
        }
        weights_(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < rows; ++j) {
            const double gap = std::abs(weights_(i, j) - weights_(j, i));
            if (gap > kSymmetryTol * scale) {
                throw std::invalid_argument("asymmetric entry at (" + std::to_string(i) + "," +
                                            std::to_string(j) + "): " +
                                            std::to_string(weights_(i, j)) + " vs " +
                                            std::to_string(weights_(j, i)));
            }
            const double w = 0.5 * (weights_(i, j) + weights_(j, i));
            weights_(i, j) = w;
            weights_(j, i) = w;
        }
    }
}

int AdjacencyMatrix::edge_count() const {
    int count = 0;
    for (Eigen::Index i = 0; i < weights_.rows(); ++i)
        for (Eigen::Index j = i + 1; j < weights_.cols(); ++j)
            if (weights_(i, j) != 0.0) ++count;
    return count;
}

std::vector<double> vectorize(const AdjacencyMatrix& g) {
    const auto& w = g.weights();
    // Eigen stores column-major, so the raw buffer is already the
    // column-stacked vector.
    return std::vector<double>(w.data(), w.data() + w.size());
}

Eigen::MatrixXd laplacian(const AdjacencyMatrix& g) {
    const auto& w = g.weights();
    Eigen::MatrixXd l = -w;
    l.diagonal() = w.rowwise().sum();
    return l;
}

AdjacencyMatrix abs_weights(const AdjacencyMatrix& g) {
    return AdjacencyMatrix(g.weights().cwiseAbs());
}

}  // namespace qim
