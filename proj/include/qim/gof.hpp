#pragma once

#include <functional>
#include <span>

namespace qim {

/// CDF of the chi-squared distribution with dof degrees of freedom.
double chi_squared_cdf(int dof, double x);

struct KsResult {
    double statistic = 0.0;  // sup |F_emp - F_ref| (or two-sample analogue)
    double p_value = 1.0;    // asymptotic Kolmogorov tail
};

/// One-sample Kolmogorov-Smirnov test of sample against a reference CDF.
KsResult ks_one_sample(std::span<const double> sample,
                       const std::function<double(double)>& reference_cdf);

/// Two-sample Kolmogorov-Smirnov test.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace qim
