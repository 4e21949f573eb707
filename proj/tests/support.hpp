#pragma once

// Oracles used by the tests. Random draws here come from std::mt19937_64,
// independent of the library's own streams.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace testsupport {

struct Stats {
    double mean = 0.0;
    double stderr_ = 0.0;
};

class Welford {
public:
    void add(double v) {
        ++n_;
        const double d = v - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (v - mean_);
    }
    [[nodiscard]] Stats stats() const {
        const double var = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
        return {mean_, std::sqrt(var / static_cast<double>(n_))};
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

inline Eigen::VectorXd unit_vector(std::size_t d, std::mt19937_64& gen) {
    std::normal_distribution<double> nd;
    Eigen::VectorXd v(static_cast<Eigen::Index>(d));
    do {
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = nd(gen);
    } while (v.squaredNorm() == 0.0);
    return v.normalized();
}

/// Uniform point in the ball B^d(R).
inline Eigen::VectorXd ball_point(std::size_t d, double radius, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::pow(u(gen), 1.0 / static_cast<double>(d));
    return r * unit_vector(d, gen);
}

inline double relu_pow(double u, unsigned alpha) {
    if (u <= 0.0) return 0.0;
    return alpha == 0 ? 1.0 : std::pow(u, static_cast<double>(alpha));
}

/// Gauss-Kronrod over [lo, hi] split at the interior breakpoints.
template <typename Real = double>
Real integrate(const std::function<Real(Real)>& f, Real lo, Real hi, std::vector<Real> cuts = {}) {
    std::vector<Real> pts{lo};
    for (const Real& c : cuts) {
        if (c > lo && c < hi) pts.push_back(c);
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    Real total = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] == pts[i]) continue;
        total += boost::math::quadrature::gauss_kronrod<Real, 61>::integrate(f, pts[i], pts[i + 1], 15, Real(1e-14));
    }
    return total;
}

/// (1/4R) int_{-R}^{R} [(x - b)_+^a (y - b)_+^a + (b - x)_+^a (b - y)_+^a] db.
inline double kd1_quadrature(double x, double y, unsigned alpha, double radius) {
    const std::function<double(double)> f = [&](double b) {
        return relu_pow(x - b, alpha) * relu_pow(y - b, alpha) + relu_pow(b - x, alpha) * relu_pow(b - y, alpha);
    };
    return integrate<double>(f, -radius, radius, {x, y}) / (4.0 * radius);
}

}  // namespace testsupport
