#include "nspline/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nspline/errors.hpp"
#include "nspline/special.hpp"

namespace nspline {

namespace {

void check_dims(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const KernelSpec& spec) {
    const auto d = static_cast<Eigen::Index>(spec.dim);
    if (x.size() != d || y.size() != d) {
        throw InvalidArgument("kernel: point dimension " + std::to_string(x.size()) + "/" +
                              std::to_string(y.size()) + " does not match d = " + std::to_string(spec.dim));
    }
}

// Table M(i, j) = E[(w'x)^i (w'y)^j] for w uniform on S^{d-1}, i, j <= alpha.
// Gaussian moments G(i, j) by Isserlis, then divided by E||g||^{i+j}.
Eigen::MatrixXd sphere_mixed_moments(unsigned alpha, double xx, double yy, double xy, std::size_t d) {
    const Eigen::Index n = alpha + 1;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    g(0, 0) = 1.0;
    for (Eigen::Index j = 2; j < n; j += 2) g(0, j) = static_cast<double>(j - 1) * yy * g(0, j - 2);
    for (Eigen::Index i = 1; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if ((i + j) % 2 != 0) continue;
            double v = 0.0;
            if (i >= 2) v += static_cast<double>(i - 1) * xx * g(i - 2, j);
            if (j >= 1) v += static_cast<double>(j) * xy * g(i - 1, j - 1);
            g(i, j) = v;
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if ((i + j) % 2 == 0) g(i, j) /= chi_moment(static_cast<unsigned>(i + j), static_cast<unsigned>(d));
        }
    }
    return g;
}

// Shared double sum of k1_pol with x^i y^j replaced by moment(i, j).
template <typename Moment>
double pol_sum(unsigned alpha, double radius, Moment&& moment) {
    double total = 0.0;
    const double r2 = radius * radius;
    for (unsigned s = 0; s <= alpha; ++s) {
        double inner = 0.0;
        const unsigned lo = 2 * s > alpha ? 2 * s - alpha : 0;
        const unsigned hi = std::min(alpha, 2 * s);
        for (unsigned i = lo; i <= hi; ++i) {
            const unsigned j = 2 * s - i;
            inner += binomial(alpha, i) * binomial(alpha, j) * moment(i, j);
        }
        total += std::pow(r2, static_cast<double>(alpha - s)) / static_cast<double>(2 * alpha + 1 - 2 * s) * inner;
    }
    return 0.5 * total;
}

}  // namespace

KernelSpec::KernelSpec(unsigned alpha_, std::size_t dim_, double radius_)
    : alpha(alpha_), dim(dim_), radius(radius_) {
    if (dim == 0) throw InvalidDimension("KernelSpec: d must be >= 1");
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidParameter("KernelSpec: R must be positive and finite, got " + std::to_string(radius));
    }
}

double c_alpha(const KernelSpec& spec) {
    const double a = spec.alpha;
    const double half_d = 0.5 * static_cast<double>(spec.dim);
    const double sign = spec.alpha % 2 == 0 ? -1.0 : 1.0;
    // alpha!^3 / (2 alpha + 1)! in log space to survive large alpha
    const double log_fact = 3.0 * std::lgamma(a + 1.0) - std::lgamma(2.0 * a + 2.0);
    return sign / (4.0 * std::sqrt(std::numbers::pi)) * std::exp(log_fact) * gamma_ratio(half_d, half_d + 0.5 + a);
}

double spline_fourier_constant(const KernelSpec& spec) {
    const double a = spec.alpha;
    const double d = static_cast<double>(spec.dim);
    const double sign = spec.alpha % 2 == 0 ? -1.0 : 1.0;
    const double log_rest = (d + 1.0 + 2.0 * a) * std::log(2.0) + (0.5 * d - 1.0) * std::log(std::numbers::pi) +
                            std::lgamma(a + 1.5) + std::lgamma(0.5 * d + 0.5 + a);
    return c_alpha(spec) * sign * std::exp(log_rest);
}

double k1_pol(double x, double y, unsigned alpha, double radius) {
    std::vector<double> xp(alpha + 1, 1.0);
    std::vector<double> yp(alpha + 1, 1.0);
    for (unsigned i = 1; i <= alpha; ++i) {
        xp[i] = xp[i - 1] * x;
        yp[i] = yp[i - 1] * y;
    }
    return pol_sum(alpha, radius, [&](unsigned i, unsigned j) { return xp[i] * yp[j]; });
}

double kd_pol(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const KernelSpec& spec) {
    check_dims(x, y, spec);
    const double d = static_cast<double>(spec.dim);
    const double r2 = spec.radius * spec.radius;
    const double xy = x.dot(y);
    switch (spec.alpha) {
        case 0:
            return 0.5;
        case 1:
            return r2 / 6.0 + xy / (2.0 * d);
        case 2: {
            const double xx = x.squaredNorm();
            const double yy = y.squaredNorm();
            return r2 * r2 / 10.0 + 2.0 * r2 * xy / (3.0 * d) + r2 * (xx + yy) / (6.0 * d) +
                   (2.0 * xy * xy + xx * yy) / (2.0 * d * (d + 2.0));
        }
        default:
            break;
    }
    const auto m = sphere_mixed_moments(spec.alpha, x.squaredNorm(), y.squaredNorm(), xy, spec.dim);
    return pol_sum(spec.alpha, spec.radius, [&](unsigned i, unsigned j) { return m(i, j); });
}

double distance_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const KernelSpec& spec) {
    check_dims(x, y, spec);
    const double dist = (x - y).norm();
    return c_alpha(spec) * std::pow(dist, 2.0 * spec.alpha + 1.0) / spec.radius;
}

double kd(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const KernelSpec& spec) {
    return kd_pol(x, y, spec) + distance_kernel(x, y, spec);
}

double arccos_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const KernelSpec& spec) {
    if (spec.alpha > 2) {
        throw UnsupportedOrder("arccos_kernel: closed form only for alpha <= 2, got " + std::to_string(spec.alpha));
    }
    check_dims(x, y, spec);
    const double r2 = spec.radius * spec.radius;
    const double nx2 = x.squaredNorm() + r2;
    const double ny2 = y.squaredNorm() + r2;
    const double cos_phi = std::clamp((x.dot(y) + r2) / std::sqrt(nx2 * ny2), -1.0, 1.0);
    const double phi = std::acos(cos_phi);
    const double sin_phi = std::sin(phi);
    const double pi = std::numbers::pi;
    const double d = static_cast<double>(spec.dim);
    switch (spec.alpha) {
        case 0:
            return (pi - phi) / (2.0 * pi);
        case 1:
            return std::sqrt(nx2 * ny2) / (2.0 * pi * (d + 1.0)) * (sin_phi + (pi - phi) * cos_phi);
        default:
            return nx2 * ny2 / (2.0 * pi * (d + 1.0) * (d + 3.0)) *
                   (3.0 * sin_phi * cos_phi + (pi - phi) * (1.0 + 2.0 * cos_phi * cos_phi));
    }
}

double kernel_value(KernelKind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& y, const KernelSpec& spec) {
    switch (kind) {
        case KernelKind::nn:
            return kd(x, y, spec);
        case KernelKind::arccos:
            return arccos_kernel(x, y, spec);
        case KernelKind::pol_only:
            return kd_pol(x, y, spec);
        case KernelKind::distance:
            return distance_kernel(x, y, spec);
    }
    return 0.0;
}

bool in_ball(const Eigen::VectorXd& x, double radius) { return x.norm() <= radius * (1.0 + 1e-12); }

GramMatrix gram(const PointSet& points, const KernelSpec& spec, KernelKind kind, double jitter) {
    if (points.rows() == 0) throw InvalidArgument("gram: empty point list");
    if (!(jitter >= 0.0)) throw InvalidParameter("gram: jitter must be non-negative");
    if (kind == KernelKind::arccos && spec.alpha > 2) {
        throw UnsupportedOrder("gram: arccos kernel only for alpha <= 2");
    }
    const Eigen::Index n = points.rows();
    GramMatrix out;
    out.jitter = jitter;
    out.entries.resize(n, n);
    std::vector<Eigen::VectorXd> rows(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(i)] = points.row(i).transpose();
        if (!in_ball(rows[static_cast<std::size_t>(i)], spec.radius)) out.outside_ball = true;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v =
                kernel_value(kind, rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)], spec);
            out.entries(i, j) = v;
            out.entries(j, i) = v;
        }
        out.entries(i, i) += jitter;
    }
    return out;
}

Eigen::MatrixXd cross_gram(const PointSet& a, const PointSet& b, const KernelSpec& spec, KernelKind kind) {
    Eigen::MatrixXd out(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const Eigen::VectorXd xi = a.row(i).transpose();
        for (Eigen::Index j = 0; j < b.rows(); ++j) {
            out(i, j) = kernel_value(kind, xi, b.row(j).transpose(), spec);
        }
    }
    return out;
}

double rkhs_norm_1d(const Derivative1DProfile& p, unsigned alpha, double radius) {
    if (alpha >= 2) {
        throw UnsupportedOrder("rkhs_norm_1d: explicit norm only for alpha <= 1, got " + std::to_string(alpha));
    }
    if (!(radius > 0.0)) throw InvalidParameter("rkhs_norm_1d: R must be positive");
    if (p.at_lower.size() < alpha + 1 || p.at_upper.size() < alpha + 1) {
        throw InvalidArgument("rkhs_norm_1d: profile lacks boundary derivatives up to order alpha");
    }
    if (p.nodes.size() < 2 || p.nodes.size() != p.weights.size() || p.nodes.size() != p.top_derivative.size()) {
        throw InvalidArgument("rkhs_norm_1d: quadrature samples are inconsistent or fewer than 2");
    }
    double energy = 0.0;
    for (std::size_t k = 0; k < p.nodes.size(); ++k) energy += p.weights[k] * p.top_derivative[k] * p.top_derivative[k];
    const double r = radius;
    if (alpha == 0) {
        const double b = p.at_lower[0] + p.at_upper[0];
        return 2.0 * r * energy + b * b;
    }
    const double b1 = p.at_upper[1] + p.at_lower[1];
    const double b0 = p.at_lower[0] + p.at_upper[0] - r * p.at_upper[1] + r * p.at_lower[1];
    return 2.0 * r * energy + b1 * b1 + 3.0 / (r * r) * b0 * b0;
}

Derivative1DProfile make_profile(const std::function<double(unsigned, double)>& derivative, unsigned alpha,
                                 double radius, const std::vector<double>& breakpoints,
                                 std::size_t panels_per_segment, std::size_t order) {
    if (!(radius > 0.0)) throw InvalidParameter("make_profile: R must be positive");
    std::vector<double> cuts{-radius};
    for (double b : breakpoints) {
        if (b > -radius && b < radius) cuts.push_back(b);
    }
    cuts.push_back(radius);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Derivative1DProfile p;
    for (unsigned i = 0; i <= alpha; ++i) {
        p.at_lower.push_back(derivative(i, -radius));
        p.at_upper.push_back(derivative(i, radius));
    }
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const auto rule = composite_gauss_legendre(panels_per_segment, order, cuts[s], cuts[s + 1]);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            p.nodes.push_back(rule.nodes[k]);
            p.weights.push_back(rule.weights[k]);
            p.top_derivative.push_back(derivative(alpha + 1, rule.nodes[k]));
        }
    }
    return p;
}

}  // namespace nspline
