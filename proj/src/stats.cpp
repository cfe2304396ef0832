#include "tdn/stats.hpp"

#include <cmath>
#include <vector>

#include "tdn/kahan.hpp"

namespace tdn {

namespace {

double mean_of(std::span<const double> xs) {
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value() / static_cast<double>(xs.size());
}

// Continued fraction for the incomplete beta, evaluated with the modified
// Lentz algorithm. Converges quickly for x < (a + 1) / (a + b + 2).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double pearson_r(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw LengthMismatchError("pearson_r: series lengths differ");
    }
    if (xs.size() < 3) {
        throw InsufficientNError("pearson_r needs at least 3 pairs");
    }
    const double mx = mean_of(xs);
    const double my = mean_of(ys);
    KahanSum sxy, sxx, syy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy.add(dx * dy);
        sxx.add(dx * dx);
        syy.add(dy * dy);
    }
    if (sxx.value() <= 0.0 || syy.value() <= 0.0) {
        throw DegenerateSeriesError("pearson_r: a series has zero variance");
    }
    double r = sxy.value() / std::sqrt(sxx.value() * syy.value());
    if (r > 1.0) r = 1.0;
    if (r < -1.0) r = -1.0;
    return r;
}

ConfidenceInterval fisher_ci(double r, int n, double level) {
    if (n < 4) throw InsufficientNError("fisher_ci needs n >= 4");
    if (!(std::abs(r) < 1.0)) {
        throw DegenerateCorrelationError("fisher_ci undefined at |r| = 1");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw Error("confidence level must lie in (0, 1)");
    }
    const double z = std::atanh(r);
    const double z_crit = normal_quantile(1.0 - (1.0 - level) / 2.0);
    const double half = z_crit / std::sqrt(static_cast<double>(n - 3));
    return ConfidenceInterval{std::tanh(z - half), std::tanh(z + half)};
}

double r_p_value(double r, int n) {
    if (n < 3) throw InsufficientNError("r_p_value needs n >= 3");
    if (!(std::abs(r) <= 1.0)) throw Error("correlation out of [-1, 1]");
    if (std::abs(r) == 1.0) {
        throw DegenerateCorrelationError("r_p_value undefined at |r| = 1");
    }
    // t = r sqrt((n-2)/(1-r^2)); the two-tailed tail mass reduces to a
    // single incomplete-beta evaluation at x = df / (df + t^2).
    const auto df = static_cast<double>(n - 2);
    const double t_sq = r * r * df / (1.0 - r * r);
    const double x = df / (df + t_sq);
    return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

CorrelationResult correlate_metric_vs_richness(
    std::span<const std::pair<double, double>> richness_metric) {
    if (richness_metric.size() < 4) {
        throw InsufficientNError("correlation needs at least 4 observations");
    }
    std::vector<double> xs, ys;
    xs.reserve(richness_metric.size());
    ys.reserve(richness_metric.size());
    for (const auto& [richness, metric] : richness_metric) {
        xs.push_back(richness);
        ys.push_back(metric);
    }
    CorrelationResult out;
    out.n = static_cast<int>(richness_metric.size());
    out.r = pearson_r(xs, ys);
    out.ci = fisher_ci(out.r, out.n);
    out.p_value = r_p_value(out.r, out.n);
    return out;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error("normal quantile defined only on (0, 1)");
    }
    static const double A[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double B[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double C[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double D[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double kLow = 0.02425;

    double x;
    if (p < kLow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    } else if (p <= 1.0 - kLow) {
        const double q = p - 0.5;
        const double s = q * q;
        x = (((((A[0] * s + A[1]) * s + A[2]) * s + A[3]) * s + A[4]) * s + A[5]) * q /
            (((((B[0] * s + B[1]) * s + B[2]) * s + B[3]) * s + B[4]) * s + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    }
    // One Halley step against the exact CDF tightens the approximation to
    // full double precision.
    const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = err * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw Error("incomplete beta needs positive shape parameters");
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                                  std::lgamma(b) + a * std::log(x) +
                                  b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace tdn
