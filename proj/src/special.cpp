#include "nspline/special.hpp"

#include <cmath>
#include <numbers>

#include "nspline/errors.hpp"

namespace nspline {

double factorial(unsigned n) { return std::tgamma(static_cast<double>(n) + 1.0); }

double binomial(unsigned n, unsigned k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(r);
}

double gamma_ratio(double a, double b) {
    if (a <= 0.0 || b <= 0.0) throw InvalidArgument("gamma_ratio: arguments must be positive");
    if (a < 150.0 && b < 150.0) return std::tgamma(a) / std::tgamma(b);
    return std::exp(std::lgamma(a) - std::lgamma(b));
}

double chi_moment(unsigned k, unsigned d) {
    if (d == 0) throw InvalidDimension("chi_moment: d must be >= 1");
    const double half_d = 0.5 * d;
    return std::exp2(0.5 * k) * gamma_ratio(half_d + 0.5 * k, half_d);
}

QuadratureRule gauss_legendre(std::size_t n, double lo, double hi) {
    if (n == 0) throw InvalidArgument("gauss_legendre: need at least one node");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / static_cast<double>(j);
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = mid - half * z;
        rule.nodes[n - 1 - i] = mid + half * z;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t order, double lo, double hi) {
    if (panels == 0) throw InvalidArgument("composite_gauss_legendre: need at least one panel");
    QuadratureRule rule;
    rule.nodes.reserve(panels * order);
    rule.weights.reserve(panels * order);
    const double h = (hi - lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const auto panel = gauss_legendre(order, lo + h * p, lo + h * (p + 1));
        rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return rule;
}

}  // namespace nspline
