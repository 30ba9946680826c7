#include "qim/generators.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "qim/rng.hpp"

namespace qim {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " +
                                    std::to_string(p));
    }
}

// Symmetric square root of the edge correlation matrix, cached per
// dimension. Only the Bartlett Toeplitz kind needs a factorization.
std::shared_ptr<const Eigen::MatrixXd> toeplitz_factor(int dim) {
    static std::mutex cache_mutex;
    static std::unordered_map<int, std::shared_ptr<const Eigen::MatrixXd>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (const auto it = cache.find(dim); it != cache.end()) return it->second;

    const Eigen::MatrixXd corr = toeplitz_bartlett(dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("toeplitz factorization failed for dim " + std::to_string(dim));
    }
    Eigen::VectorXd clipped = solver.eigenvalues();
    for (Eigen::Index i = 0; i < clipped.size(); ++i) {
        if (clipped(i) < -1e-8) {
            throw std::runtime_error("correlation matrix is not positive semidefinite");
        }
        clipped(i) = std::sqrt(std::max(0.0, clipped(i)));
    }
    auto factor = std::make_shared<Eigen::MatrixXd>(
        solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().transpose());
    cache.emplace(dim, factor);
    return factor;
}

}  // namespace

GraphFamily family_from_string(const std::string& s) {
    if (s == "er") return GraphFamily::er;
    if (s == "bipartite") return GraphFamily::bipartite;
    if (s == "ba") return GraphFamily::ba;
    if (s == "weighted-er") return GraphFamily::weighted_er;
    if (s == "weighted-bipartite") return GraphFamily::weighted_bipartite;
    if (s == "mvn-full") return GraphFamily::mvn_full;
    throw std::invalid_argument("unknown graph family: " + s);
}

std::string to_string(GraphFamily f) {
    switch (f) {
        case GraphFamily::er: return "er";
        case GraphFamily::bipartite: return "bipartite";
        case GraphFamily::ba: return "ba";
        case GraphFamily::weighted_er: return "weighted-er";
        case GraphFamily::weighted_bipartite: return "weighted-bipartite";
        case GraphFamily::mvn_full: return "mvn-full";
    }
    return "?";
}

CorrKind corr_from_string(const std::string& s) {
    if (s == "identity") return CorrKind::identity;
    if (s == "toeplitz-bartlett") return CorrKind::toeplitz_bartlett;
    throw std::invalid_argument("unknown correlation kind: " + s);
}

std::string to_string(CorrKind c) {
    return c == CorrKind::identity ? "identity" : "toeplitz-bartlett";
}

AdjacencyMatrix erdos_renyi(int v, double p, std::uint64_t seed) {
    if (v < 1) throw std::invalid_argument("erdos_renyi: need v >= 1");
    check_probability(p, "edge probability");
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(v, v);
    for (int i = 0; i < v; ++i) {
        for (int j = i + 1; j < v; ++j) {
            if (uniform01(rng) < p) {
                w(i, j) = 1.0;
                w(j, i) = 1.0;
            }
        }
    }
    return AdjacencyMatrix(std::move(w));
}

double matched_bipartite_p(int v, double p) {
    check_probability(p, "edge probability");
    const double pairs = static_cast<double>(v) * (v - 1) / 2.0;
    const double cross = static_cast<double>(v / 2) * ((v + 1) / 2);
    const double p_prime = p * pairs / cross;
    if (p_prime > 1.0) {
        throw std::invalid_argument("density " + std::to_string(p) +
                                    " is not achievable bipartitely on v=" + std::to_string(v) +
                                    " (would need cross probability " + std::to_string(p_prime) + ")");
    }
    return p_prime;
}

AdjacencyMatrix bipartite(int v, double p_prime, std::uint64_t seed) {
    if (v < 2) throw std::invalid_argument("bipartite: need v >= 2");
    check_probability(p_prime, "cross-part probability");
    const int half = v / 2;
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(v, v);
    for (int i = 0; i < half; ++i) {
        for (int j = half; j < v; ++j) {
            if (uniform01(rng) < p_prime) {
                w(i, j) = 1.0;
                w(j, i) = 1.0;
            }
        }
    }
    return AdjacencyMatrix(std::move(w));
}

AdjacencyMatrix barabasi_albert(int v, int m, std::uint64_t seed) {
    if (m < 1 || m >= v) {
        throw std::invalid_argument("barabasi_albert: need 1 <= m < v");
    }
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(v, v);
    std::vector<double> degree(static_cast<std::size_t>(v), 0.0);

    auto add_edge = [&](int i, int j) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
        degree[static_cast<std::size_t>(i)] += 1.0;
        degree[static_cast<std::size_t>(j)] += 1.0;
    };

    // Seed block: nodes 0..m-1 isolated, node m joined to all of them.
    for (int i = 0; i < m; ++i) add_edge(i, m);

    std::vector<int> picks;
    picks.reserve(static_cast<std::size_t>(m));
    for (int node = m + 1; node < v; ++node) {
        picks.clear();
        double total = 0.0;
        for (int i = 0; i < node; ++i) total += degree[static_cast<std::size_t>(i)];
        // m degree-proportional draws without replacement.
        for (int e = 0; e < m; ++e) {
            double r = uniform01(rng) * total;
            int chosen = -1;
            for (int i = 0; i < node; ++i) {
                bool taken = false;
                for (const int p : picks) taken |= (p == i);
                if (taken) continue;
                r -= degree[static_cast<std::size_t>(i)];
                if (r < 0.0) {
                    chosen = i;
                    break;
                }
            }
            if (chosen < 0) {
                // Round-off pushed r past the last eligible node.
                for (int i = node - 1; i >= 0; --i) {
                    bool taken = false;
                    for (const int p : picks) taken |= (p == i);
                    if (!taken) {
                        chosen = i;
                        break;
                    }
                }
            }
            total -= degree[static_cast<std::size_t>(chosen)];
            picks.push_back(chosen);
        }
        for (const int p : picks) add_edge(node, p);
    }
    return AdjacencyMatrix(std::move(w));
}

double matched_er_p_for_ba(int v, int m) {
    if (m < 1 || m >= v) throw std::invalid_argument("matched_er_p_for_ba: need 1 <= m < v");
    const double edges = static_cast<double>(m) * (v - m);
    return edges / (static_cast<double>(v) * (v - 1) / 2.0);
}

Eigen::MatrixXd toeplitz_bartlett(int m_dim) {
    if (m_dim < 1) throw std::invalid_argument("toeplitz_bartlett: need dimension >= 1");
    Eigen::MatrixXd corr(m_dim, m_dim);
    for (int i = 0; i < m_dim; ++i)
        for (int j = 0; j < m_dim; ++j)
            corr(i, j) = 1.0 - static_cast<double>(std::abs(i - j)) / m_dim;
    return corr;
}

AdjacencyMatrix mvn_weights(const AdjacencyMatrix& topology, double mu, double sigma2,
                            CorrKind corr, std::uint64_t seed) {
    if (sigma2 < 0.0) throw std::invalid_argument("mvn_weights: sigma2 must be >= 0");
    const int v = topology.node_count();

    // Existing edges in row-major upper-triangle order; the weight vector is
    // assigned in this canonical order.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j)
            if (topology.weight(i, j) != 0.0) edges.emplace_back(i, j);

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(v, v);
    if (edges.empty()) return AdjacencyMatrix(std::move(w));

    const auto ecount = static_cast<Eigen::Index>(edges.size());
    std::mt19937_64 rng(seed);
    NormalSampler normal(rng);
    Eigen::VectorXd z(ecount);
    for (Eigen::Index i = 0; i < ecount; ++i) z(i) = normal();

    Eigen::VectorXd weights;
    const double sigma = std::sqrt(sigma2);
    if (corr == CorrKind::identity) {
        weights = (sigma * z).array() + mu;
    } else {
        const auto factor = toeplitz_factor(static_cast<int>(ecount));
        weights = (sigma * (*factor * z)).array() + mu;
    }

    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [i, j] = edges[e];
        const double weight = weights(static_cast<Eigen::Index>(e));
        if (weight == 0.0) {
            // A weight of exactly zero would delete the edge.
            throw std::runtime_error("mvn_weights: drew an exactly zero weight; reseed");
        }
        w(i, j) = weight;
        w(j, i) = weight;
    }
    return AdjacencyMatrix(std::move(w));
}

AdjacencyMatrix generate(const GeneratorSpec& spec, std::uint64_t seed) {
    switch (spec.family) {
        case GraphFamily::er:
            return erdos_renyi(spec.v, spec.p, seed);
        case GraphFamily::bipartite:
            return bipartite(spec.v, matched_bipartite_p(spec.v, spec.p), seed);
        case GraphFamily::ba:
            return barabasi_albert(spec.v, spec.m, seed);
        case GraphFamily::weighted_er:
            return mvn_weights(erdos_renyi(spec.v, spec.p, derive_seed(seed, 0)), spec.mu,
                               spec.sigma2, spec.corr, derive_seed(seed, 1));
        case GraphFamily::weighted_bipartite:
            return mvn_weights(bipartite(spec.v, matched_bipartite_p(spec.v, spec.p),
                                         derive_seed(seed, 0)),
                               spec.mu, spec.sigma2, spec.corr, derive_seed(seed, 1));
        case GraphFamily::mvn_full: {
            Eigen::MatrixXd full = Eigen::MatrixXd::Ones(spec.v, spec.v);
            full.diagonal().setZero();
            return mvn_weights(AdjacencyMatrix(std::move(full)), spec.mu, spec.sigma2, spec.corr,
                               seed);
        }
    }
    throw std::logic_error("generate: unhandled family");
}

}  // namespace qim
