#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "nspline/features.hpp"
#include "nspline/kernels.hpp"

namespace nspline {

enum class FitMode { interpolate, ridge, constrained_spline };

struct FitConfig {
    FitMode mode = FitMode::interpolate;
    /// Ridge strength; the system uses n * mu on the diagonal.
    double mu = 0.0;
    /// First rung of the jitter ladder.
    double jitter = 0.0;
    /// Constrained mode only: use k_d^(alpha) instead of the distance kernel alone.
    bool include_polynomial_part = false;

    void validate() const;
};

struct SolverInfo {
    double jitter_used = 0.0;
    /// max_i |f(x_i) - y_i| on the training set.
    double residual_norm = 0.0;
    /// 1 / rcond of the accepted factor.
    double condition_estimate = 0.0;
};

struct RegressionModel {
    Eigen::VectorXd dual_coeffs;
    /// Coefficients over monomial_design columns; empty unless constrained.
    Eigen::VectorXd poly_coeffs;
    unsigned poly_degree = 0;
    PointSet points;
    KernelSpec spec;
    KernelKind kernel = KernelKind::nn;
    /// Set when the model was fit on k_hat instead of a closed-form kernel.
    std::optional<FeatureEnsemble> ensemble;
    SolverInfo solver;
};

struct PrimalModel {
    /// Weights on the raw feature columns.
    Eigen::VectorXd weights;
    FeatureEnsemble ensemble;
    SolverInfo solver;
};

/// Cholesky factor of a + jitter * I with the jitter escalated on failure.
struct SpdFactor {
    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;
    double rcond = 0.0;
};

/// Tries `jitter`, then 1e-12, 1e-9, 1e-6 times the mean diagonal. Throws
/// IllConditioned when no rung gives a factor with rcond above 1e-14.
SpdFactor factor_spd(const Eigen::MatrixXd& a, double jitter);

RegressionModel fit_dual(const PointSet& x, const Eigen::VectorXd& y, const KernelSpec& spec, const FitConfig& cfg,
                         KernelKind kernel = KernelKind::nn);
/// Dual fit on k_hat of the ensemble.
RegressionModel fit_dual(const PointSet& x, const Eigen::VectorXd& y, const FeatureEnsemble& ensemble,
                         const FitConfig& cfg);

PrimalModel fit_primal(const PointSet& x, const Eigen::VectorXd& y, const FeatureEnsemble& ensemble,
                       const FitConfig& cfg);

/// Distance-kernel fit with Phi' lambda = 0 against monomials of degree <= alpha.
RegressionModel fit_constrained_spline(const PointSet& x, const Eigen::VectorXd& y, const KernelSpec& spec,
                                       const FitConfig& cfg);

Eigen::VectorXd predict(const RegressionModel& model, const PointSet& xtest);
Eigen::VectorXd predict(const PrimalModel& model, const PointSet& xtest);

/// n x C(d + degree, degree) matrix of monomials, graded order starting with 1.
Eigen::MatrixXd monomial_design(const PointSet& x, unsigned degree);

}  // namespace nspline
