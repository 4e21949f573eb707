#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace nspline {

/// Kernel family instance: activation power alpha, input dimension d and
/// radius R of the ball the inputs live in.
struct KernelSpec {
    unsigned alpha = 0;
    std::size_t dim = 1;
    double radius = 1.0;

    KernelSpec() = default;
    /// Throws InvalidDimension for d = 0 and InvalidParameter for R <= 0.
    KernelSpec(unsigned alpha, std::size_t dim, double radius);

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

enum class KernelKind {
    nn,        ///< k_d^(alpha): uniform (w, b) on S^{d-1} x [-R, R]
    arccos,    ///< full spherical symmetry in R^{d+1}, alpha <= 2
    pol_only,  ///< polynomial part of k_d^(alpha)
    distance,  ///< c_d^(alpha) ||x - y||^{2 alpha + 1} / R alone
};

/// Point sets are stored one point per row.
using PointSet = Eigen::MatrixXd;

struct GramMatrix {
    Eigen::MatrixXd entries;
    double jitter = 0.0;
    /// Some point lay outside B^d(R); entries were evaluated formally.
    bool outside_ball = false;
};

/// Boundary derivatives f^(i)(+-R), i = 0..alpha, and quadrature samples of
/// f^(alpha+1) over [-R, R].
struct Derivative1DProfile {
    std::vector<double> at_lower;
    std::vector<double> at_upper;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> top_derivative;
};

/// c_d^(alpha) = (-1)^{alpha+1} alpha!^3 Gamma(d/2) / (4 sqrt(pi) (2 alpha+1)! Gamma(d/2 + 1/2 + alpha)).
[[nodiscard]] double c_alpha(const KernelSpec& spec);

/// b_d^(alpha) > 0, the constant in the Fourier transform b / ||omega||^{d+1+2 alpha}
/// of the distance kernel c_d^(alpha) ||z||^{2 alpha + 1}.
[[nodiscard]] double spline_fourier_constant(const KernelSpec& spec);

/// (1/4R) int_{-R}^{R} (x - b)^alpha (y - b)^alpha db, evaluated in O(alpha^2).
[[nodiscard]] double k1_pol(double x, double y, unsigned alpha, double radius);

/// Polynomial part E_w[k1_pol(w'x, w'y)] of k_d^(alpha).
[[nodiscard]] double kd_pol(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const KernelSpec& spec);

/// The distance part c_d^(alpha) ||x - y||^{2 alpha + 1} / R.
[[nodiscard]] double distance_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                     const KernelSpec& spec);

/// k_d^(alpha)(x, y) = kd_pol + distance_kernel.
[[nodiscard]] double kd(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const KernelSpec& spec);

/// Arc-cosine kernel for (w, b/R) uniform on S^d; alpha in {0, 1, 2}.
[[nodiscard]] double arccos_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                   const KernelSpec& spec);

[[nodiscard]] double kernel_value(KernelKind kind, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                  const KernelSpec& spec);

[[nodiscard]] bool in_ball(const Eigen::VectorXd& x, double radius);

GramMatrix gram(const PointSet& points, const KernelSpec& spec, KernelKind kind, double jitter = 0.0);

/// Rectangular kernel matrix K(a_i, b_j).
Eigen::MatrixXd cross_gram(const PointSet& a, const PointSet& b, const KernelSpec& spec, KernelKind kind);

/// Squared RKHS norm of k_1^(alpha) for alpha in {0, 1}.
[[nodiscard]] double rkhs_norm_1d(const Derivative1DProfile& profile, unsigned alpha, double radius);

/// Builds a profile from derivative(order, x). Quadrature panels are split
/// at `breakpoints` so piecewise-smooth derivatives integrate accurately.
Derivative1DProfile make_profile(const std::function<double(unsigned, double)>& derivative, unsigned alpha,
                                 double radius, const std::vector<double>& breakpoints = {},
                                 std::size_t panels_per_segment = 16, std::size_t order = 8);

}  // namespace nspline
