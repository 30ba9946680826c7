#pragma once

#include <Eigen/Dense>

#include "qim/adjacency.hpp"

namespace qim {

/// Eigenvalues of a graph Laplacian together with the vibration frequencies
/// psi_i = sqrt(eps_i). Both vectors are ascending; round-off negatives are
/// clamped to zero before the square root.
struct LaplacianSpectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::VectorXd frequencies;
};

/// Full spectrum of a symmetric matrix (symmetry checked to 1e-9 relative).
/// Throws std::runtime_error if the eigensolver fails to converge and
/// std::domain_error if an eigenvalue is negative beyond round-off, which
/// for a Laplacian indicates negative edge weights.
LaplacianSpectrum spectrum(const Eigen::MatrixXd& laplacian_matrix);

/// Convenience: spectrum of the weighted Laplacian of g.
LaplacianSpectrum laplacian_spectrum(const AdjacencyMatrix& g);

}  // namespace qim
