#include "qim/distance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qim/parallel.hpp"

namespace qim {

namespace {

void check_split(int n, int n_a) {
    if (n_a < 2 || n - n_a < 2) {
        throw std::invalid_argument("group split needs at least two members per group, got " +
                                    std::to_string(n_a) + " / " + std::to_string(n - n_a));
    }
}

// Unordered pair index k in [0, n(n-1)/2) -> (i, j) with i < j.
std::pair<int, int> pair_from_index(std::size_t k, int n) {
    // Row i owns (n-1-i) pairs; walk rows.
    int i = 0;
    std::size_t remaining = k;
    while (remaining >= static_cast<std::size_t>(n - 1 - i)) {
        remaining -= static_cast<std::size_t>(n - 1 - i);
        ++i;
    }
    return {i, i + 1 + static_cast<int>(remaining)};
}

bool metric_uses_spectrum(Metric m, double kappa) {
    switch (m) {
        case Metric::im: return true;
        case Metric::qim:
        case Metric::qim_plus: return kappa != 0.0;
        default: return false;
    }
}

}  // namespace

DistanceMatrix make_distance_matrix(Eigen::MatrixXd squared_entries, int n_a) {
    const auto n = squared_entries.rows();
    if (n == 0 || squared_entries.cols() != n) {
        throw std::invalid_argument("distance matrix must be square");
    }
    check_split(static_cast<int>(n), n_a);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (squared_entries(i, i) != 0.0) {
            throw std::invalid_argument("distance matrix diagonal must be zero");
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double e = squared_entries(i, j);
            if (!(e >= 0.0) || e != squared_entries(j, i)) {
                throw std::invalid_argument("distance matrix must be symmetric and nonnegative");
            }
        }
    }
    DistanceMatrix d;
    d.n_a = n_a;
    d.n_b = static_cast<int>(n) - n_a;
    d.entries = std::move(squared_entries);
    return d;
}

Eigen::MatrixXd pairwise_distances(std::span<const AdjacencyMatrix> samples,
                                   const QimParams& params, int workers) {
    const int n = static_cast<int>(samples.size());
    if (n < 2) throw std::invalid_argument("pairwise_distances: need at least two graphs");
    const int v = samples[0].node_count();
    for (int i = 1; i < n; ++i) {
        if (samples[static_cast<std::size_t>(i)].node_count() != v) {
            throw std::invalid_argument("pairwise_distances: graph " + std::to_string(i) +
                                        " has node count " +
                                        std::to_string(samples[static_cast<std::size_t>(i)].node_count()) +
                                        ", expected " + std::to_string(v));
        }
    }

    const bool spectral = metric_uses_spectrum(params.metric, params.kappa);
    std::vector<SpectralContext> contexts;
    if (spectral) {
        const double gs = gamma_star(v);
        contexts.resize(static_cast<std::size_t>(n));
        parallel_for(static_cast<std::size_t>(n), workers, [&](std::size_t i) {
            const AdjacencyMatrix& g = samples[i];
            try {
                if (g.has_negative_weights()) {
                    if (!params.abs_weights) {
                        throw std::domain_error(
                            "negative edge weights; use abs_weights for spectral metrics");
                    }
                    contexts[i] = make_spectral_context(abs_weights(g), gs);
                } else {
                    contexts[i] = make_spectral_context(g, gs);
                }
            } catch (const std::exception& e) {
                throw std::runtime_error("graph " + std::to_string(i) + ": " + e.what());
            }
        });
    }

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    parallel_for(pairs, workers, [&](std::size_t k) {
        const auto [i, j] = pair_from_index(k, n);
        const AdjacencyMatrix& gi = samples[static_cast<std::size_t>(i)];
        const AdjacencyMatrix& gj = samples[static_cast<std::size_t>(j)];
        double d = 0.0;
        try {
            switch (params.metric) {
                case Metric::qed:
                    d = qed_approx(gi, gj);
                    break;
                case Metric::euclidean:
                    d = std::sqrt((gi.weights() - gj.weights()).squaredNorm());
                    break;
                case Metric::im:
                    d = im_distance(contexts[static_cast<std::size_t>(i)],
                                    contexts[static_cast<std::size_t>(j)]);
                    break;
                case Metric::qim:
                case Metric::qim_plus: {
                    const double da = qed_approx(gi, gj);
                    const double im =
                        spectral ? im_distance(contexts[static_cast<std::size_t>(i)],
                                               contexts[static_cast<std::size_t>(j)])
                                 : 0.0;
                    d = params.metric == Metric::qim ? da * (1.0 + params.kappa * im)
                                                     : da + params.kappa * im;
                    break;
                }
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("distance (" + std::to_string(i) + "," + std::to_string(j) +
                                     "): " + e.what());
        }
        out(i, j) = d;
        out(j, i) = d;
    });
    return out;
}

DistanceMatrix distance_matrix(std::span<const AdjacencyMatrix> samples, int n_a,
                               const QimParams& params, int workers) {
    check_split(static_cast<int>(samples.size()), n_a);
    Eigen::MatrixXd raw = pairwise_distances(samples, params, workers);
    return make_distance_matrix(raw.cwiseProduct(raw), n_a);
}

DistanceMatrix permute_distance_matrix(const DistanceMatrix& d, std::span<const int> perm) {
    const int n = d.n();
    if (static_cast<int>(perm.size()) != n) {
        throw std::invalid_argument("permutation has wrong length");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const int p : perm) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
            throw std::invalid_argument("not a permutation of 0..n-1");
        }
        seen[static_cast<std::size_t>(p)] = true;
    }
    DistanceMatrix out;
    out.n_a = d.n_a;
    out.n_b = d.n_b;
    out.entries.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.entries(i, j) = d.entries(perm[static_cast<std::size_t>(i)],
                                          perm[static_cast<std::size_t>(j)]);
    return out;
}

}  // namespace qim
