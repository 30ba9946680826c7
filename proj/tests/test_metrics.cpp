#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qim/generators.hpp"
#include "qim/metrics.hpp"
#include "qim/rng.hpp"

using namespace qim;

namespace {

AdjacencyMatrix empty_graph(int v) { return AdjacencyMatrix(Eigen::MatrixXd::Zero(v, v)); }

AdjacencyMatrix complete_graph(int v) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Ones(v, v);
    w.diagonal().setZero();
    return AdjacencyMatrix(std::move(w));
}

AdjacencyMatrix random_graph(int v, double p, std::uint64_t seed) {
    return erdos_renyi(v, p, seed);
}

// Bisection on the quadrature route of the empty-vs-complete objective,
// independent of the cached closed-form path.
double gamma_star_by_quadrature(int n, double quad_tol) {
    const std::vector<double> zeros(static_cast<std::size_t>(n - 1), 0.0);
    const std::vector<double> tops(static_cast<std::size_t>(n - 1), std::sqrt(double(n)));
    double lo = 1e-4, hi = 10.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        const SpectralContext e = make_spectral_context(zeros, mid);
        const SpectralContext f = make_spectral_context(tops, mid);
        const double value = im_distance_quadrature(e, f, quad_tol);
        if (value > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("qed approximation") {
    const AdjacencyMatrix g = random_graph(8, 0.4, 1);
    CHECK(qed_approx(g, g) == 0.0);

    // changing a single undirected weight by 0.5 moves both triangle entries
    Eigen::MatrixXd w = complete_graph(4).weights();
    Eigen::MatrixXd w2 = w;
    w2(0, 1) += 0.5;
    w2(1, 0) += 0.5;
    CHECK(qed_approx(AdjacencyMatrix(w), AdjacencyMatrix(w2)) == doctest::Approx(1.0));

    // k differing unit edges count 2k
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(6, 6);
    Eigen::MatrixXd b = a;
    int k = 0;
    for (const auto& [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {2, 3}, {1, 4}}) {
        b(i, j) = b(j, i) = 1.0;
        ++k;
    }
    CHECK(qed_approx(AdjacencyMatrix(a), AdjacencyMatrix(b)) == doctest::Approx(2.0 * k));

    CHECK_THROWS(qed_approx(empty_graph(3), empty_graph(4)));
}

TEST_CASE("lorentz density") {
    SUBCASE("two-node empty graph at gamma 1") {
        const SpectralContext ctx = make_spectral_context(empty_graph(2), 1.0);
        CHECK(ctx.norm_k == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
        CHECK(lorentz_density(0.0, ctx) == doctest::Approx(0.63662).epsilon(1e-4));
    }
    SUBCASE("density integrates to one") {
        for (std::uint64_t seed : {3u, 4u}) {
            const SpectralContext ctx =
                make_spectral_context(random_graph(10, 0.5, seed), gamma_star(10));
            const double mass = integrate_half_line(
                [&](double psi) { return lorentz_density(psi, ctx); }, 1e-9);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
    SUBCASE("tail decays") {
        // At 500 widths past the largest center every term is at most
        // gamma / (500 gamma)^2, so the sum sits provably below 1e-4 of the
        // modal value.
        const SpectralContext ctx =
            make_spectral_context(random_graph(12, 0.5, 9), gamma_star(12));
        const double top = ctx.frequencies.back();
        double mode_value = 0.0;
        for (const double c : ctx.frequencies) mode_value = std::max(mode_value, lorentz_density(c, ctx));
        CHECK(lorentz_density(top + 500.0 * ctx.gamma, ctx) < 1e-4 * mode_value);
    }
}

TEST_CASE("lorentz pair integral closed form") {
    // frozen quadrature values
    CHECK(lorentz_pair_integral(0.0, 0.0, 1.0) ==
          doctest::Approx(0.785398163397448).epsilon(1e-12));
    CHECK(lorentz_pair_integral(1.0, 2.0, 0.5) ==
          doctest::Approx(1.546611687715744).epsilon(1e-10));
    CHECK(lorentz_pair_integral(3.5, 3.5, 0.45) ==
          doctest::Approx(3.489114846011154).epsilon(1e-10));
    CHECK(lorentz_pair_integral(0.0, 4.47213595499958, 0.466) ==
          doctest::Approx(0.113459052091642).epsilon(1e-10));
    // nearly equal centers stay stable
    CHECK(lorentz_pair_integral(2.0, 2.0 + 1e-9, 0.7) ==
          doctest::Approx(2.226229887949119).epsilon(1e-10));
    // symmetry in (a, b)
    CHECK(lorentz_pair_integral(0.3, 1.7, 0.9) ==
          doctest::Approx(lorentz_pair_integral(1.7, 0.3, 0.9)).epsilon(1e-13));

    // agreement with the quadrature route across random inputs
    std::mt19937_64 rng(5);
    for (int t = 0; t < 25; ++t) {
        const double a = 5.0 * uniform01(rng);
        const double b = (t % 3 == 0) ? a : 5.0 * uniform01(rng);
        const double g = 0.05 + 2.0 * uniform01(rng);
        const double closed = lorentz_pair_integral(a, b, g);
        const double quad = integrate_half_line(
            [&](double x) {
                return g * g / (((x - a) * (x - a) + g * g) * ((x - b) * (x - b) + g * g));
            },
            1e-11);
        CHECK(closed == doctest::Approx(quad).epsilon(1e-8));
    }
}

TEST_CASE("gamma star") {
    SUBCASE("defining property") {
        for (int n : {10, 20, 50}) {
            const double gs = gamma_star(n);
            CHECK(im_distance(empty_graph(n), complete_graph(n), gs) ==
                  doctest::Approx(1.0).epsilon(1e-6));
            CHECK(std::abs(im_raw_empty_full(n, gs) - 1.0) <= 1e-8);
        }
    }
    SUBCASE("objective is strictly decreasing on the bracket") {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 50; ++i) {
            const double g = 1e-4 * std::pow(10.0 / 1e-4, i / 49.0);  // log-spaced
            const double value = im_raw_empty_full(20, g);
            CHECK(value < prev);
            prev = value;
        }
    }
    SUBCASE("quadrature route agrees at two tolerances") {
        for (int n : {10, 20, 100}) {
            const double coarse = gamma_star_by_quadrature(n, 1e-9);
            const double fine = gamma_star_by_quadrature(n, 1e-11);
            CHECK(std::abs(coarse - fine) <= 1e-5);
            CHECK(std::abs(coarse - gamma_star(n)) <= 1e-5);
        }
    }
    SUBCASE("cache returns identical values") {
        CHECK(gamma_star(17) == gamma_star(17));
    }
}

TEST_CASE("im distance") {
    const double gs20 = gamma_star(20);
    SUBCASE("identity") {
        const AdjacencyMatrix g = random_graph(20, 0.3, 2);
        CHECK(im_distance(g, g, gs20) == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("empty vs complete is one") {
        for (int n : {10, 20}) {
            CHECK(im_distance(empty_graph(n), complete_graph(n), gamma_star(n)) ==
                  doctest::Approx(1.0).epsilon(1e-6));
        }
    }
    SUBCASE("relabeling invariance") {
        const AdjacencyMatrix g = random_graph(14, 0.4, 3);
        std::mt19937_64 rng(11);
        const std::vector<int> perm = random_permutation(14, rng);
        Eigen::MatrixXd relabeled(14, 14);
        for (int i = 0; i < 14; ++i)
            for (int j = 0; j < 14; ++j)
                relabeled(i, j) = g.weights()(perm[static_cast<std::size_t>(i)],
                                              perm[static_cast<std::size_t>(j)]);
        CHECK(im_distance(g, AdjacencyMatrix(std::move(relabeled)), gamma_star(14)) <= 1e-8);
    }
    SUBCASE("bounded in [0,1] and symmetric; two routes agree") {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const AdjacencyMatrix a = random_graph(12, 0.25, 50 + seed);
            const AdjacencyMatrix b = random_graph(12, 0.55, 90 + seed);
            const double gs = gamma_star(12);
            const double d_ab = im_distance(a, b, gs);
            const double d_ba = im_distance(b, a, gs);
            CHECK(d_ab == d_ba);
            CHECK(d_ab >= 0.0);
            CHECK(d_ab <= 1.0);
            const double quad = im_distance_quadrature(make_spectral_context(a, gs),
                                                       make_spectral_context(b, gs));
            CHECK(d_ab == doctest::Approx(quad).epsilon(1e-6));
        }
    }
    SUBCASE("negative weights are rejected without abs") {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
        w(0, 1) = w(1, 0) = -1.0;
        const AdjacencyMatrix signotron{std::move(w)};
        CHECK_THROWS(im_distance(signotron, empty_graph(3), gamma_star(3)));
        QimParams p{Metric::qim, 1.0, true};
        CHECK_NOTHROW(qim_distance(signotron, empty_graph(3), p));
    }
}

TEST_CASE("qim coupling") {
    SUBCASE("kappa zero collapses to the edge term") {
        QimParams p{Metric::qim, 0.0, false};
        for (std::uint64_t s = 0; s < 20; ++s) {
            const AdjacencyMatrix a = random_graph(10, 0.3, 200 + s);
            const AdjacencyMatrix b = random_graph(10, 0.3, 300 + s);
            CHECK(qim_distance(a, b, p) == qed_approx(a, b));
        }
    }
    SUBCASE("identical graphs are at distance zero in both couplings") {
        const AdjacencyMatrix g = random_graph(10, 0.4, 5);
        CHECK(qim_distance(g, g, QimParams{Metric::qim, 1.0}) == 0.0);
        CHECK(qim_distance(g, g, QimParams{Metric::qim_plus, 1.0}) == 0.0);
    }
    SUBCASE("product coupling lies in [d_a, d_a (1+kappa)]") {
        const double kappa = 2.5;
        for (std::uint64_t s = 0; s < 10; ++s) {
            const AdjacencyMatrix a = random_graph(10, 0.2, 400 + s);
            const AdjacencyMatrix b = random_graph(10, 0.6, 500 + s);
            const double da = qed_approx(a, b);
            const double dq = qim_distance(a, b, QimParams{Metric::qim, kappa});
            CHECK(dq >= da - 1e-12);
            CHECK(dq <= da * (1.0 + kappa) + 1e-12);
        }
    }
    SUBCASE("product coupling is nondecreasing in kappa") {
        const AdjacencyMatrix a = random_graph(12, 0.2, 77);
        const AdjacencyMatrix b = random_graph(12, 0.5, 88);
        double prev = -1.0;
        for (const double kappa : {0.0, 0.001, 0.01, 0.1, 1.0, 10.0, 100.0}) {
            const double d = qim_distance(a, b, QimParams{Metric::qim, kappa});
            CHECK(d >= prev);
            prev = d;
        }
    }
    SUBCASE("symmetry across metric variants") {
        const AdjacencyMatrix a = random_graph(9, 0.3, 60);
        const AdjacencyMatrix b = random_graph(9, 0.5, 61);
        for (const Metric m : {Metric::qed, Metric::im, Metric::qim, Metric::qim_plus,
                               Metric::euclidean}) {
            const QimParams p{m, 1.0};
            CHECK(qim_distance(a, b, p) == qim_distance(b, a, p));
        }
    }
    SUBCASE("identity of indiscernibles for qed and qim product") {
        const AdjacencyMatrix a = random_graph(8, 0.4, 70);
        Eigen::MatrixXd w = a.weights();
        w(0, 1) += 0.25;
        w(1, 0) += 0.25;
        const AdjacencyMatrix b{std::move(w)};
        CHECK(qim_distance(a, b, QimParams{Metric::qed, 0.0}) > 0.0);
        CHECK(qim_distance(a, b, QimParams{Metric::qim, 1.0}) > 0.0);
        CHECK(qim_distance(a, a, QimParams{Metric::qim, 1.0}) == 0.0);
    }
    SUBCASE("triangle inequality for qed") {
        std::mt19937_64 rng(123);
        for (int t = 0; t < 100; ++t) {
            const AdjacencyMatrix a = random_graph(8, 0.3, rng());
            const AdjacencyMatrix b = random_graph(8, 0.5, rng());
            const AdjacencyMatrix c = random_graph(8, 0.7, rng());
            CHECK(qed_approx(a, c) <= qed_approx(a, b) + qed_approx(b, c) + 1e-12);
        }
    }
}

TEST_CASE("euclidean squared distance") {
    const std::vector<double> zero2{0, 0};
    CHECK(euclidean_sq(zero2, zero2) == 0.0);
    CHECK(euclidean_sq(std::vector<double>{0, 0}, std::vector<double>{3, 4}) == 25.0);
    // L2^2 and L1^2 are different norms
    const std::vector<double> ones{1, 1};
    CHECK(euclidean_sq(ones, zero2) == 2.0);
    const double l1 = std::abs(1.0) + std::abs(1.0);
    CHECK(l1 * l1 == 4.0);
    CHECK_THROWS(euclidean_sq(std::vector<double>{1}, std::vector<double>{1, 2}));
}
