#pragma once

#include <span>
#include <utility>

#include "tdn/error.hpp"

namespace tdn {

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
};

struct CorrelationResult {
    double r = 0.0;
    int n = 0;
    ConfidenceInterval ci;
    double p_value = 1.0;
};

/// Sample Pearson correlation. Requires equal lengths, n >= 3, and nonzero
/// variance on both sides; the result is clamped to [-1, 1] against rounding.
double pearson_r(std::span<const double> xs, std::span<const double> ys);

/// Fisher z confidence interval for a correlation: atanh(r) +/- z_crit /
/// sqrt(n - 3), mapped back through tanh. Requires |r| < 1 and n >= 4.
ConfidenceInterval fisher_ci(double r, int n, double level = 0.95);

/// Two-tailed p-value for r under the null of zero correlation, via the
/// exact t distribution with n - 2 degrees of freedom. Requires |r| < 1
/// and n >= 3.
double r_p_value(double r, int n);

/// Pearson r over (richness, metric) pairs plus its 95% Fisher interval
/// and two-tailed p-value. Requires at least 4 pairs.
CorrelationResult correlate_metric_vs_richness(
    std::span<const std::pair<double, double>> richness_metric);

/// Inverse standard normal CDF (Acklam's approximation plus one Halley
/// refinement; accurate to ~1e-15). Defined for p in (0, 1).
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b), evaluated with the Lentz
/// continued fraction. Needs a > 0, b > 0; x is clamped to [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace tdn
