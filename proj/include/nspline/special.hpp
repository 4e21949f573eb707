#pragma once

#include <cstddef>
#include <vector>

namespace nspline {

[[nodiscard]] double factorial(unsigned n);
[[nodiscard]] double binomial(unsigned n, unsigned k);

/// Gamma(a) / Gamma(b) for positive arguments. Uses tgamma while both
/// arguments are small and log-gamma past that, so large d + 2*alpha
/// does not overflow.
[[nodiscard]] double gamma_ratio(double a, double b);

/// E ||g||^k for g standard normal in R^d: 2^{k/2} Gamma((d+k)/2) / Gamma(d/2).
[[nodiscard]] double chi_moment(unsigned k, unsigned d);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [lo, hi].
[[nodiscard]] QuadratureRule gauss_legendre(std::size_t n, double lo = -1.0, double hi = 1.0);

/// Composite Gauss-Legendre: `panels` equal panels of `order` points each.
[[nodiscard]] QuadratureRule composite_gauss_legendre(std::size_t panels, std::size_t order,
                                                      double lo, double hi);

}  // namespace nspline
