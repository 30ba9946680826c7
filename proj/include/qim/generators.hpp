#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "qim/adjacency.hpp"

namespace qim {

enum class GraphFamily { er, bipartite, ba, weighted_er, weighted_bipartite, mvn_full };
enum class CorrKind { identity, toeplitz_bartlett };

GraphFamily family_from_string(const std::string& s);
std::string to_string(GraphFamily f);
CorrKind corr_from_string(const std::string& s);
std::string to_string(CorrKind c);

/// Declarative description of one graph distribution. For the bipartite
/// families, p is the density of the Erdos-Renyi model being matched; the
/// cross-part probability is derived so the expected edge counts agree.
/// mu/sigma2/corr configure the multivariate normal edge weights of the
/// weighted families.
struct GeneratorSpec {
    GraphFamily family = GraphFamily::er;
    int v = 20;
    double p = 0.1;
    int m = 1;
    double mu = 0.0;
    double sigma2 = 0.0;
    CorrKind corr = CorrKind::identity;
    std::uint64_t seed = 0;
};

/// G(v, p): each of the C(v,2) undirected pairs appears independently with
/// probability p, weight 1. Identical (v, p, seed) gives identical output.
AdjacencyMatrix erdos_renyi(int v, double p, std::uint64_t seed);

/// Cross-part edge probability matching the expected edge count of
/// Erdos-Renyi density p on v nodes: p * C(v,2) / (floor(v/2)*ceil(v/2)).
double matched_bipartite_p(int v, double p);

/// Random bipartite graph on parts of size floor(v/2) and ceil(v/2); edges
/// only across the parts, each with probability p_prime.
AdjacencyMatrix bipartite(int v, double p_prime, std::uint64_t seed);

/// Preferential attachment: m isolated seed nodes, one node joined to all of
/// them, then each arrival attaches m edges to distinct existing nodes with
/// probability proportional to degree. Edge count is exactly m*(v-m).
AdjacencyMatrix barabasi_albert(int v, int m, std::uint64_t seed);

/// Erdos-Renyi density with the same expected edge count as the
/// deterministic edge count of barabasi_albert(v, m).
double matched_er_p_for_ba(int v, int m);

/// Bartlett (triangular kernel) correlation matrix: entry (i,j) =
/// 1 - |i-j|/m_dim. Positive semidefinite.
Eigen::MatrixXd toeplitz_bartlett(int m_dim);

/// Replaces the weights of the existing edges by a draw from
/// MVN(mu*1, sigma2*Sigma), with Sigma the selected correlation matrix over
/// the edges in row-major upper-triangle order. The sampler uses the
/// symmetric square root of Sigma with eigenvalues clipped at zero;
/// eigenvalues below -1e-8 are an error.
AdjacencyMatrix mvn_weights(const AdjacencyMatrix& topology, double mu, double sigma2,
                            CorrKind corr, std::uint64_t seed);

/// Draws one graph from the spec; seed overrides spec.seed.
AdjacencyMatrix generate(const GeneratorSpec& spec, std::uint64_t seed);
inline AdjacencyMatrix generate(const GeneratorSpec& spec) { return generate(spec, spec.seed); }

}  // namespace qim
