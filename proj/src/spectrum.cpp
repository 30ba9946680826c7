#include "qim/spectrum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qim {

LaplacianSpectrum spectrum(const Eigen::MatrixXd& laplacian_matrix) {
    const auto n = laplacian_matrix.rows();
    if (n == 0 || laplacian_matrix.cols() != n) {
        throw std::invalid_argument("spectrum: matrix must be square and nonempty");
    }
    const double scale = std::max(1.0, laplacian_matrix.cwiseAbs().maxCoeff());
    const double asym = (laplacian_matrix - laplacian_matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * scale) {
        throw std::invalid_argument("spectrum: matrix is not symmetric (max gap " +
                                    std::to_string(asym) + ")");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian_matrix,
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectrum: eigensolver did not converge");
    }

    LaplacianSpectrum out;
    out.eigenvalues = solver.eigenvalues();  // ascending
    const double radius = std::max(std::abs(out.eigenvalues(0)), std::abs(out.eigenvalues(n - 1)));
    const double tol = 1e-8 * (1.0 + radius);
    out.frequencies.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double ev = out.eigenvalues(i);
        if (ev < 0.0) {
            if (ev < -tol) {
                throw std::domain_error(
                    "spectrum: eigenvalue " + std::to_string(ev) +
                    " is negative beyond round-off; Laplacian of negative weights?");
            }
            ev = 0.0;
        }
        out.frequencies(i) = std::sqrt(ev);
    }
    return out;
}

LaplacianSpectrum laplacian_spectrum(const AdjacencyMatrix& g) {
    return spectrum(laplacian(g));
}

}  // namespace qim
