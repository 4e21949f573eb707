#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nspline/kernels.hpp"

namespace nspline {

// Closed forms below assume d = 1, alpha = 0, R = 1 and data uniform on
// [-1, 1]; rescale x -> x / R for other radii.

struct LeverageQuery {
    double lambda = 1e-3;
    /// Bias b for step features, frequency omega for Fourier features.
    double param = 0.0;

    void validate() const;
};

/// Leverage of g(x) = 1{x > b}; requires |b| <= 1.
[[nodiscard]] double nn_leverage(const LeverageQuery& q);

struct FourierLeverage {
    double cos_score = 0.0;
    double sin_score = 0.0;
};

[[nodiscard]] FourierLeverage fourier_leverage(const LeverageQuery& q);

/// n midpoints of equal cells covering [-R, R].
[[nodiscard]] std::vector<double> uniform_grid(std::size_t n, double radius = 1.0);

/// g' (K + n lambda I)^{-1} g on a fixed grid; factors once for many features.
class GridLeverageEstimator {
public:
    GridLeverageEstimator(std::vector<double> grid, const KernelSpec& spec, double lambda);

    [[nodiscard]] double score(const Eigen::VectorXd& feature_values) const;
    [[nodiscard]] double score(const std::function<double(double)>& feature) const;

    [[nodiscard]] const std::vector<double>& grid() const { return grid_; }
    [[nodiscard]] double lambda() const { return lambda_; }

private:
    std::vector<double> grid_;
    double lambda_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

[[nodiscard]] double empirical_leverage(const std::function<double(double, double)>& feature, double param,
                                        double lambda, const std::vector<double>& grid, const KernelSpec& spec);

/// Solves (Sigma + lambda) f = g with Sigma f(x) = (1/4) int f - (1/8) int |x - y| f(y) dy
/// on an n-point trapezoid grid over [-1, 1].
class OdeOracle {
public:
    OdeOracle(double lambda, std::size_t n);

    /// f at the grid nodes.
    [[nodiscard]] Eigen::VectorXd solve(const std::function<double(double)>& g) const;
    /// <g, f> under the uniform probability on [-1, 1].
    [[nodiscard]] double leverage(const std::function<double(double)>& g) const;
    /// Nystrom extension of a grid solution to an arbitrary x.
    [[nodiscard]] double evaluate(const Eigen::VectorXd& f, const std::function<double(double)>& g, double x) const;

    [[nodiscard]] const Eigen::VectorXd& nodes() const { return nodes_; }
    [[nodiscard]] const Eigen::VectorXd& weights() const { return weights_; }

private:
    double lambda_;
    Eigen::VectorXd nodes_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd root_w_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

[[nodiscard]] double ode_oracle(const std::function<double(double)>& g, double lambda, std::size_t n);

struct LeverageRecord {
    double param = 0.0;
    double theoretical = 0.0;
    double empirical = 0.0;
};

struct LeverageProfile {
    std::string method;
    double lambda = 0.0;
    std::size_t n = 0;
    std::vector<LeverageRecord> records;
};

enum class LeverageMethod { nn, fourier_cos, fourier_sin };

[[nodiscard]] std::string to_string(LeverageMethod method);

/// Closed form and grid estimate at each parameter; the estimator fixes lambda and n.
LeverageProfile leverage_profile(LeverageMethod method, const std::vector<double>& params,
                                 const GridLeverageEstimator& estimator);

}  // namespace nspline
