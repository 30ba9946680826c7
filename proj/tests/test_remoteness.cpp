#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "qim/generators.hpp"
#include "qim/remoteness.hpp"
#include "qim/rng.hpp"

using namespace qim;

namespace {

// Literal set-counting definition, the oracle for the production routine.
Eigen::MatrixXd mp_brute_force(const Eigen::MatrixXd& d) {
    const auto s = d.rows();
    Eigen::MatrixXd mp = Eigen::MatrixXd::Zero(s, s);
    for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = 0; j < s; ++j) {
            if (i == j) continue;
            std::set<Eigen::Index> from_i, from_j;
            for (Eigen::Index k = 0; k < s; ++k) {
                if (d(i, k) > d(i, j)) from_i.insert(k);
                if (d(j, k) > d(j, i)) from_j.insert(k);
            }
            std::vector<Eigen::Index> common;
            std::set_intersection(from_i.begin(), from_i.end(), from_j.begin(), from_j.end(),
                                  std::back_inserter(common));
            mp(i, j) = static_cast<double>(common.size()) / static_cast<double>(s);
        }
    }
    return mp;
}

Eigen::MatrixXd random_raw_distances(int s, std::uint64_t seed, bool with_ties) {
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(s, s);
    for (int i = 0; i < s; ++i) {
        for (int j = i + 1; j < s; ++j) {
            double value = 0.05 + uniform01(rng);
            if (with_ties && uniform01(rng) < 0.3) value = 0.5;  // force tie clusters
            d(i, j) = d(j, i) = value;
        }
    }
    return d;
}

}  // namespace

TEST_CASE("mutual proximity on three collinear points") {
    // points at 0, 1, 3 on a line
    Eigen::MatrixXd d(3, 3);
    d << 0, 1, 3,
         1, 0, 2,
         3, 2, 0;
    const Eigen::MatrixXd mp = mutual_proximity(d);
    CHECK(mp(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(mp(1, 0) == mp(0, 1));
}

TEST_CASE("all-equal distances have zero mutual proximity") {
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(5, 5, 2.0);
    d.diagonal().setZero();
    const Eigen::MatrixXd mp = mutual_proximity(d);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) CHECK(mp(i, j) == 0.0);

    const RemotenessMatrix mr = mutual_remoteness(mp);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(mr.entries(i, j) == (i == j ? 0.0 : 1.0));
}

TEST_CASE("mutual remoteness complements mutual proximity") {
    const Eigen::MatrixXd d = random_raw_distances(8, 3, false);
    const Eigen::MatrixXd mp = mutual_proximity(d);
    const RemotenessMatrix mr = mutual_remoteness(mp);
    for (int i = 0; i < 8; ++i) {
        CHECK(mr.entries(i, i) == 0.0);
        for (int j = 0; j < 8; ++j) {
            CHECK(mp(i, j) >= 0.0);
            CHECK(mp(i, j) <= 1.0);
            CHECK(mr.entries(i, j) >= 0.0);
            CHECK(mr.entries(i, j) <= 1.0);
            if (i != j) CHECK(mp(i, j) + mr.entries(i, j) == 1.0);
        }
    }
    CHECK(mutual_remoteness(mp).entries == mr.entries);
    CHECK_THROWS(mutual_proximity(Eigen::MatrixXd::Zero(2, 2)));  // S < 3
}

TEST_CASE("brute-force oracle equivalence up to S = 10") {
    int cases = 0;
    for (int s = 3; s <= 10; ++s) {
        for (std::uint64_t seed = 0; seed < 13; ++seed) {
            const Eigen::MatrixXd d = random_raw_distances(s, seed * 31 + s, seed % 2 == 1);
            const Eigen::MatrixXd fast = mutual_proximity(d);
            const Eigen::MatrixXd slow = mp_brute_force(d);
            CHECK(fast == slow);
            ++cases;
        }
    }
    CHECK(cases >= 100);
}

TEST_CASE("rank invariance under strictly increasing transforms") {
    const Eigen::MatrixXd d = random_raw_distances(9, 11, true);
    const Eigen::MatrixXd base = mutual_proximity(d);

    Eigen::MatrixXd squared = d.cwiseProduct(d);
    squared.diagonal().setZero();
    CHECK(mutual_proximity(squared) == base);

    Eigen::MatrixXd expd = d.unaryExpr([](double x) { return std::exp(3.0 * x) - 1.0; });
    expd.diagonal().setZero();
    CHECK(mutual_proximity(expd) == base);

    Eigen::MatrixXd affine = 2.5 * d;
    CHECK(mutual_proximity(affine) == base);
}

TEST_CASE("remoteness separates clustered configurations") {
    // Two tight clusters far apart versus one well-mixed cloud.
    const int half = 6, s = 12;
    Eigen::MatrixXd separated = Eigen::MatrixXd::Zero(s, s);
    std::mt19937_64 rng(5);
    for (int i = 0; i < s; ++i) {
        for (int j = i + 1; j < s; ++j) {
            const bool same = (i < half) == (j < half);
            separated(i, j) = separated(j, i) = (same ? 0.1 : 10.0) + 0.01 * uniform01(rng);
        }
    }
    Eigen::MatrixXd mixed = random_raw_distances(s, 6, false);

    const double f_sep = f_statistic(remoteness_distance_matrix(separated, half));
    const double f_mix = f_statistic(remoteness_distance_matrix(mixed, half));
    CHECK(f_sep > f_mix);
}

TEST_CASE("mr test on identical groups degenerates to p = 1") {
    const AdjacencyMatrix g = erdos_renyi(10, 0.4, 1);
    const std::vector<AdjacencyMatrix> samples{g, g, g, g};
    const TestResult t = mr_test(samples, 2, QimParams{Metric::qim, 1.0}, 100, 1, 7);
    CHECK(t.p_value == 1.0);
}

TEST_CASE("mr test keeps the nominal level under the null") {
    int rejections = 0;
    const int reps = 200;
    const QimParams params{Metric::qim, 1.0};
    for (int r = 0; r < reps; ++r) {
        std::vector<AdjacencyMatrix> samples;
        for (int g = 0; g < 20; ++g)
            samples.push_back(erdos_renyi(10, 0.3,
                                          derive_seed(777, static_cast<std::uint64_t>(r),
                                                      static_cast<std::uint64_t>(g))));
        const TestResult t =
            mr_test(samples, 10, params, 99, 1, derive_seed(778, static_cast<std::uint64_t>(r)));
        rejections += (t.p_value <= 0.05);
    }
    const double rate = static_cast<double>(rejections) / reps;
    CHECK(rate >= 0.01);
    CHECK(rate <= 0.10);
}

TEST_CASE("mr test has power against a mean shift in dense weighted graphs") {
    int rejections = 0;
    const int reps = 100;
    const QimParams params{Metric::qim, 1.0};
    GeneratorSpec group_a{GraphFamily::mvn_full, 20, 1.0, 1, 10.0, 1.0, CorrKind::identity};
    GeneratorSpec group_b = group_a;
    group_b.mu = 11.5;
    for (int r = 0; r < reps; ++r) {
        std::vector<AdjacencyMatrix> samples;
        for (int g = 0; g < 20; ++g)
            samples.push_back(generate(group_a, derive_seed(881, static_cast<std::uint64_t>(r),
                                                            static_cast<std::uint64_t>(g))));
        for (int g = 0; g < 20; ++g)
            samples.push_back(generate(group_b, derive_seed(882, static_cast<std::uint64_t>(r),
                                                            static_cast<std::uint64_t>(g))));
        const TestResult t =
            mr_test(samples, 20, params, 199, 1, derive_seed(883, static_cast<std::uint64_t>(r)));
        rejections += (t.p_value <= 0.05);
    }
    CHECK(static_cast<double>(rejections) / reps >= 0.8);
}
