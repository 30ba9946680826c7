#include "qim/remoteness.hpp"

#include <stdexcept>

namespace qim {

Eigen::MatrixXd mutual_proximity(const Eigen::MatrixXd& raw_distances) {
    const auto s = raw_distances.rows();
    if (raw_distances.cols() != s) throw std::invalid_argument("mutual_proximity: square matrix required");
    if (s < 3) throw std::invalid_argument("mutual_proximity: need at least 3 points");

    Eigen::MatrixXd mp = Eigen::MatrixXd::Zero(s, s);
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = i + 1; j < s; ++j) {
            const double dij = raw_distances(i, j);
            int count = 0;
            for (Eigen::Index k = 0; k < s; ++k) {
                count += (raw_distances(i, k) > dij) && (raw_distances(j, k) > dij);
            }
            const double value = static_cast<double>(count) / static_cast<double>(s);
            mp(i, j) = value;
            mp(j, i) = value;
        }
    }
    return mp;
}

RemotenessMatrix mutual_remoteness(const Eigen::MatrixXd& mp) {
    const auto s = mp.rows();
    if (mp.cols() != s) throw std::invalid_argument("mutual_remoteness: square matrix required");
    if (mp.size() > 0 && (mp.minCoeff() < 0.0 || mp.maxCoeff() > 1.0)) {
        throw std::invalid_argument("mutual_remoteness: MP entries must lie in [0,1]");
    }
    RemotenessMatrix mr;
    mr.entries = Eigen::MatrixXd::Ones(s, s) - mp;
    mr.entries.diagonal().setZero();
    return mr;
}

DistanceMatrix remoteness_distance_matrix(const Eigen::MatrixXd& raw_distances, int n_a) {
    const RemotenessMatrix mr = mutual_remoteness(mutual_proximity(raw_distances));
    return make_distance_matrix(mr.entries.cwiseProduct(mr.entries), n_a);
}

TestResult mr_test(std::span<const AdjacencyMatrix> samples, int n_a, const QimParams& params,
                   int perm_count, int pseudo_count, std::uint64_t seed, int workers) {
    const Eigen::MatrixXd raw = pairwise_distances(samples, params, workers);
    const DistanceMatrix d = remoteness_distance_matrix(raw, n_a);
    return permutation_test(d, perm_count, pseudo_count, seed, workers);
}

}  // namespace qim
