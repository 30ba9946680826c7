#include "qim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace qim {

namespace {

constexpr double kPi = std::numbers::pi;

int require_same_size(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    if (a.node_count() != b.node_count()) {
        throw std::invalid_argument("graphs have different node counts: " +
                                    std::to_string(a.node_count()) + " vs " +
                                    std::to_string(b.node_count()));
    }
    return a.node_count();
}

// log1p(z)/z, well conditioned near z = 0.
double log1p_over(double z) {
    if (std::abs(z) < 1e-8) return 1.0 - 0.5 * z + z * z / 3.0;
    return std::log1p(z) / z;
}

// Sum over all center pairs of lorentz_pair_integral, i.e. the unnormalized
// cross energy of two Lorentzian mixtures.
double cross_energy(const std::vector<double>& ps, const std::vector<double>& qs, double gamma) {
    double total = 0.0;
    for (const double a : ps)
        for (const double b : qs) total += lorentz_pair_integral(a, b, gamma);
    return total;
}

// Orders the operands so the cross-energy summation order, and with it the
// rounding, is identical under argument swap. Keeps the distance exactly
// symmetric.
double im_squared_analytic(const SpectralContext& a, const SpectralContext& b) {
    const SpectralContext* lo = &a;
    const SpectralContext* hi = &b;
    if (std::lexicographical_compare(hi->frequencies.begin(), hi->frequencies.end(),
                                     lo->frequencies.begin(), lo->frequencies.end())) {
        std::swap(lo, hi);
    }
    const double cross = cross_energy(lo->frequencies, hi->frequencies, a.gamma);
    return a.self_energy + b.self_energy - 2.0 * (lo->norm_k * hi->norm_k) * cross;
}

double clamp_unit(double d) {
    if (d < 0.0 && d > -1e-6) return 0.0;
    if (d > 1.0 && d < 1.0 + 1e-6) return 1.0;
    return d;
}

struct AdaptiveSimpson {
    std::function<double(double)> f;
    double abs_tol;
    int max_depth = 60;

    double run(double lo, double hi) const {
        const double flo = f(lo), fhi = f(hi);
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        return recurse(lo, hi, flo, fmid, fhi, whole, abs_tol, max_depth);
    }

    double recurse(double lo, double hi, double flo, double fmid, double fhi, double whole,
                   double tol, int depth) const {
        const double mid = 0.5 * (lo + hi);
        const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
        const double flmid = f(lmid), frmid = f(rmid);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flmid + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frmid + fhi);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
        if (depth <= 0) {
            throw std::runtime_error("integrate_half_line: quadrature did not converge");
        }
        return recurse(lo, mid, flo, flmid, fmid, left, 0.5 * tol, depth - 1) +
               recurse(mid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth - 1);
    }
};

}  // namespace

Metric metric_from_string(const std::string& s) {
    if (s == "qed") return Metric::qed;
    if (s == "im") return Metric::im;
    if (s == "qim") return Metric::qim;
    if (s == "qim-plus") return Metric::qim_plus;
    if (s == "euclidean") return Metric::euclidean;
    throw std::invalid_argument("unknown metric: " + s);
}

std::string to_string(Metric m) {
    switch (m) {
        case Metric::qed: return "qed";
        case Metric::im: return "im";
        case Metric::qim: return "qim";
        case Metric::qim_plus: return "qim-plus";
        case Metric::euclidean: return "euclidean";
    }
    return "?";
}

double lorentz_pair_integral(double a, double b, double gamma) {
    if (a > b) std::swap(a, b);  // exact symmetry in (a, b)
    const double d = b - a;
    const double s = (a + b) / (a * a + gamma * gamma);
    const double log_term = s * log1p_over(d * s);
    const double atan_term = (kPi + std::atan(a / gamma) + std::atan(b / gamma)) / gamma;
    return gamma * gamma / (d * d + 4.0 * gamma * gamma) * (log_term + atan_term);
}

SpectralContext make_spectral_context(std::vector<double> upper_frequencies, double gamma) {
    if (upper_frequencies.empty()) {
        throw std::invalid_argument("spectral context needs at least one frequency (n >= 2)");
    }
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("spectral context needs gamma > 0");
    }
    SpectralContext ctx;
    ctx.frequencies = std::move(upper_frequencies);
    ctx.gamma = gamma;
    double mass = 0.0;
    for (const double psi : ctx.frequencies) mass += kPi / 2.0 + std::atan(psi / gamma);
    ctx.norm_k = 1.0 / mass;
    ctx.self_energy =
        ctx.norm_k * ctx.norm_k * cross_energy(ctx.frequencies, ctx.frequencies, gamma);
    return ctx;
}

SpectralContext make_spectral_context(const AdjacencyMatrix& g, double gamma) {
    const LaplacianSpectrum spectrum_of_g = laplacian_spectrum(g);
    const auto n = spectrum_of_g.frequencies.size();
    if (n < 2) {
        throw std::invalid_argument("spectral context needs a graph with >= 2 nodes");
    }
    // Drop the first (zero) frequency.
    std::vector<double> upper(spectrum_of_g.frequencies.data() + 1,
                              spectrum_of_g.frequencies.data() + n);
    return make_spectral_context(std::move(upper), gamma);
}

double lorentz_density(double psi, const SpectralContext& ctx) {
    double sum = 0.0;
    for (const double c : ctx.frequencies) {
        const double d = psi - c;
        sum += ctx.gamma / (d * d + ctx.gamma * ctx.gamma);
    }
    return ctx.norm_k * sum;
}

double integrate_half_line(const std::function<double(double)>& f, double abs_tol) {
    auto g = [&f](double theta) {
        if (theta >= kPi / 2.0 * (1.0 - 1e-15)) return 0.0;
        const double x = std::tan(theta);
        return f(x) * (1.0 + x * x);
    };
    return AdaptiveSimpson{g, abs_tol}.run(0.0, kPi / 2.0);
}

double qed_approx(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    require_same_size(a, b);
    return (a.weights() - b.weights()).cwiseAbs().sum();
}

double im_raw_empty_full(int n, double gamma) {
    if (n < 2) throw std::invalid_argument("im_raw_empty_full: need n >= 2");
    const auto count = static_cast<std::size_t>(n - 1);
    const SpectralContext empty = make_spectral_context(std::vector<double>(count, 0.0), gamma);
    // Complete graph K_n: Laplacian eigenvalues {0, n, ..., n}.
    const SpectralContext full =
        make_spectral_context(std::vector<double>(count, std::sqrt(static_cast<double>(n))), gamma);
    const double sq = im_squared_analytic(empty, full);
    return std::sqrt(std::max(0.0, sq));
}

double gamma_star(int n) {
    if (n < 2) throw std::invalid_argument("gamma_star: need n >= 2");
    static std::mutex cache_mutex;
    static std::unordered_map<int, double> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (const auto it = cache.find(n); it != cache.end()) return it->second;

    double lo = 1e-4, hi = 10.0;
    const double at_lo = im_raw_empty_full(n, lo);
    const double at_hi = im_raw_empty_full(n, hi);
    if (!(at_lo > 1.0 && at_hi < 1.0)) {
        throw std::runtime_error("gamma_star: bracket [1e-4, 10] does not straddle 1 for n=" +
                                 std::to_string(n) + " (residuals " + std::to_string(at_lo - 1.0) +
                                 ", " + std::to_string(at_hi - 1.0) + ")");
    }
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double value = im_raw_empty_full(n, mid);
        if (std::abs(value - 1.0) <= 1e-8) break;
        // The objective decreases in gamma.
        (value > 1.0 ? lo : hi) = mid;
    }
    cache.emplace(n, mid);
    return mid;
}

double im_distance(const SpectralContext& a, const SpectralContext& b) {
    if (a.frequencies.size() != b.frequencies.size()) {
        throw std::invalid_argument("im_distance: spectra have different sizes");
    }
    if (a.gamma != b.gamma) {
        throw std::invalid_argument("im_distance: contexts use different gamma");
    }
    double sq = im_squared_analytic(a, b);
    // The closed form subtracts two O(1) energies, so for near-identical
    // spectra the result drowns in cancellation noise around 1e-15. The
    // quadrature route squares the pointwise density difference instead and
    // has no such cancellation; use it whenever the value is tiny.
    if (sq < 1e-12) {
        sq = integrate_half_line(
            [&](double psi) {
                const double diff = lorentz_density(psi, a) - lorentz_density(psi, b);
                return diff * diff;
            },
            1e-16);
    }
    return clamp_unit(std::sqrt(std::max(0.0, sq)));
}

double im_distance(const AdjacencyMatrix& a, const AdjacencyMatrix& b, double gamma_star_value) {
    require_same_size(a, b);
    if (a.has_negative_weights() || b.has_negative_weights()) {
        throw std::domain_error(
            "im_distance: negative edge weights; pass weights through abs() first");
    }
    return im_distance(make_spectral_context(a, gamma_star_value),
                       make_spectral_context(b, gamma_star_value));
}

double im_distance_quadrature(const SpectralContext& a, const SpectralContext& b,
                              double abs_tol) {
    const double sq = integrate_half_line(
        [&](double psi) {
            const double diff = lorentz_density(psi, a) - lorentz_density(psi, b);
            return diff * diff;
        },
        abs_tol);
    return clamp_unit(std::sqrt(std::max(0.0, sq)));
}

double qim_distance(const AdjacencyMatrix& a, const AdjacencyMatrix& b, const QimParams& params) {
    const int v = require_same_size(a, b);
    switch (params.metric) {
        case Metric::qed: return qed_approx(a, b);
        case Metric::euclidean: return std::sqrt((a.weights() - b.weights()).squaredNorm());
        default: break;
    }
    if (params.kappa < 0.0) throw std::invalid_argument("qim_distance: kappa must be >= 0");
    const double da = qed_approx(a, b);
    if (params.metric == Metric::qim && params.kappa == 0.0) return da;
    const double gs = gamma_star(v);
    AdjacencyMatrix storage_a, storage_b;
    const AdjacencyMatrix* sa = &a;
    const AdjacencyMatrix* sb = &b;
    if (params.abs_weights) {
        if (a.has_negative_weights()) { storage_a = abs_weights(a); sa = &storage_a; }
        if (b.has_negative_weights()) { storage_b = abs_weights(b); sb = &storage_b; }
    }
    const double im = im_distance(*sa, *sb, gs);
    switch (params.metric) {
        case Metric::im: return im;
        case Metric::qim: return da * (1.0 + params.kappa * im);
        case Metric::qim_plus: return da + params.kappa * im;
        default: break;
    }
    throw std::logic_error("qim_distance: unhandled metric");
}

double euclidean_sq(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("euclidean_sq: length mismatch " + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
    }
    return sum;
}

}  // namespace qim
