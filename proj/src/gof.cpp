#include "qim/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace qim {

namespace {

// Kolmogorov tail Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_tail(double x) {
    if (x <= 0.0) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double chi_squared_cdf(int dof, double x) {
    if (dof < 1) throw std::invalid_argument("chi_squared_cdf: dof must be >= 1");
    if (x <= 0.0) return 0.0;
    return boost::math::cdf(boost::math::chi_squared(static_cast<double>(dof)), x);
}

KsResult ks_one_sample(std::span<const double> sample,
                       const std::function<double(double)>& reference_cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double stat = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double ref = reference_cdf(sorted[i]);
        stat = std::max(stat, std::abs(static_cast<double>(i + 1) / n - ref));
        stat = std::max(stat, std::abs(ref - static_cast<double>(i) / n));
    }
    KsResult r;
    r.statistic = stat;
    r.p_value = kolmogorov_tail(std::sqrt(n) * stat);
    return r;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
    double stat = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < sa.size() && ib < sb.size()) {
        const double x = std::min(sa[ia], sb[ib]);
        while (ia < sa.size() && sa[ia] <= x) ++ia;
        while (ib < sb.size() && sb[ib] <= x) ++ib;
        stat = std::max(stat, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    KsResult r;
    r.statistic = stat;
    const double effective = na * nb / (na + nb);
    r.p_value = kolmogorov_tail(std::sqrt(effective) * stat);
    return r;
}

}  // namespace qim
