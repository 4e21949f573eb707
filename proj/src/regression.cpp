#include "nspline/regression.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nspline/errors.hpp"

namespace nspline {

namespace {

constexpr double kMinRcond = 1e-14;

void check_data(const PointSet& x, const Eigen::VectorXd& y, std::size_t dim) {
    if (x.rows() == 0) throw InvalidArgument("fit: need at least one training point");
    if (x.rows() != y.size()) throw InvalidArgument("fit: point and target counts differ");
    if (static_cast<std::size_t>(x.cols()) != dim) {
        throw InvalidArgument("fit: points have dimension " + std::to_string(x.cols()) + ", expected " +
                              std::to_string(dim));
    }
}

double diagonal_shift(const FitConfig& cfg, Eigen::Index n) {
    return cfg.mode == FitMode::interpolate ? 0.0 : static_cast<double>(n) * cfg.mu;
}

// Exponent tuples of total degree <= degree, graded.
std::vector<std::vector<unsigned>> exponents(std::size_t d, unsigned degree) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(d, 0);
    for (unsigned total = 0; total <= degree; ++total) {
        // distribute `total` over d slots, first slot varying slowest
        auto rec = [&](auto&& self, std::size_t slot, unsigned left) -> void {
            if (slot + 1 == d) {
                cur[slot] = left;
                out.push_back(cur);
                return;
            }
            for (unsigned k = left + 1; k-- > 0;) {
                cur[slot] = k;
                self(self, slot + 1, left - k);
            }
        };
        rec(rec, 0, total);
    }
    return out;
}

void fill_residual(RegressionModel& model, const Eigen::VectorXd& y) {
    model.solver.residual_norm = (predict(model, model.points) - y).cwiseAbs().maxCoeff();
}

}  // namespace

void FitConfig::validate() const {
    if (!(mu >= 0.0)) throw InvalidParameter("FitConfig: mu must be non-negative");
    if (!(jitter >= 0.0)) throw InvalidParameter("FitConfig: jitter must be non-negative");
}

SpdFactor factor_spd(const Eigen::MatrixXd& a, double jitter) {
    const Eigen::Index n = a.rows();
    if (n == 0) return SpdFactor{Eigen::LLT<Eigen::MatrixXd>(a), jitter, 1.0};
    const double mean_diag = a.diagonal().mean();
    const double scale = mean_diag > 0.0 ? mean_diag : 1.0;
    const std::array<double, 4> ladder{jitter, std::max(jitter, 1e-12 * scale), std::max(jitter, 1e-9 * scale),
                                       std::max(jitter, 1e-6 * scale)};
    double last_rcond = 0.0;
    for (double j : ladder) {
        Eigen::MatrixXd shifted = a;
        shifted.diagonal().array() += j;
        SpdFactor f{Eigen::LLT<Eigen::MatrixXd>(shifted), j, 0.0};
        if (f.llt.info() != Eigen::Success) continue;
        f.rcond = f.llt.rcond();
        last_rcond = f.rcond;
        if (f.rcond > kMinRcond) return f;
    }
    const double cond = last_rcond > 0.0 ? 1.0 / last_rcond : std::numeric_limits<double>::infinity();
    throw IllConditioned("factor_spd: no positive-definite factor after jitter escalation", cond);
}

RegressionModel fit_dual(const PointSet& x, const Eigen::VectorXd& y, const KernelSpec& spec, const FitConfig& cfg,
                         KernelKind kernel) {
    cfg.validate();
    if (cfg.mode == FitMode::constrained_spline) return fit_constrained_spline(x, y, spec, cfg);
    check_data(x, y, spec.dim);
    RegressionModel model;
    model.points = x;
    model.spec = spec;
    model.kernel = kernel;
    Eigen::MatrixXd k = gram(x, spec, kernel).entries;
    k.diagonal().array() += diagonal_shift(cfg, x.rows());
    const auto f = factor_spd(k, cfg.jitter);
    model.dual_coeffs = f.llt.solve(y);
    model.solver.jitter_used = f.jitter;
    model.solver.condition_estimate = 1.0 / f.rcond;
    fill_residual(model, y);
    return model;
}

RegressionModel fit_dual(const PointSet& x, const Eigen::VectorXd& y, const FeatureEnsemble& ensemble,
                         const FitConfig& cfg) {
    cfg.validate();
    if (cfg.mode == FitMode::constrained_spline) {
        throw InvalidArgument("fit_dual: constrained mode needs a closed-form kernel");
    }
    check_data(x, y, ensemble.spec.dim);
    RegressionModel model;
    model.points = x;
    model.spec = ensemble.spec;
    model.ensemble = ensemble;
    Eigen::MatrixXd k = approx_kernel(x, x, ensemble);
    k.diagonal().array() += diagonal_shift(cfg, x.rows());
    const auto f = factor_spd(k, cfg.jitter);
    model.dual_coeffs = f.llt.solve(y);
    model.solver.jitter_used = f.jitter;
    model.solver.condition_estimate = 1.0 / f.rcond;
    fill_residual(model, y);
    return model;
}

PrimalModel fit_primal(const PointSet& x, const Eigen::VectorXd& y, const FeatureEnsemble& ensemble,
                       const FitConfig& cfg) {
    cfg.validate();
    if (cfg.mode == FitMode::constrained_spline) {
        throw InvalidArgument("fit_primal: constrained mode needs a closed-form kernel");
    }
    check_data(x, y, ensemble.spec.dim);
    const auto fm = features(x, ensemble);
    const double root = std::sqrt(fm.scale / static_cast<double>(fm.m));
    const Eigen::MatrixXd z = root * fm.values;
    const double shift = diagonal_shift(cfg, x.rows());

    PrimalModel model;
    model.ensemble = ensemble;
    Eigen::VectorXd eta;
    if (z.cols() < z.rows()) {
        Eigen::MatrixXd g = z.transpose() * z;
        g.diagonal().array() += shift;
        const auto f = factor_spd(g, cfg.jitter);
        eta = f.llt.solve(z.transpose() * y);
        model.solver.jitter_used = f.jitter;
        model.solver.condition_estimate = 1.0 / f.rcond;
    } else {
        // minimum-norm form eta = Z'(ZZ' + c)^{-1} y, on the same matrix fit_dual factors
        Eigen::MatrixXd g = approx_kernel(x, x, ensemble);
        g.diagonal().array() += shift;
        const auto f = factor_spd(g, cfg.jitter);
        eta = z.transpose() * f.llt.solve(y);
        model.solver.jitter_used = f.jitter;
        model.solver.condition_estimate = 1.0 / f.rcond;
    }
    model.weights = root * eta;
    model.solver.residual_norm = (fm.values * model.weights - y).cwiseAbs().maxCoeff();
    return model;
}

RegressionModel fit_constrained_spline(const PointSet& x, const Eigen::VectorXd& y, const KernelSpec& spec,
                                       const FitConfig& cfg) {
    cfg.validate();
    check_data(x, y, spec.dim);
    const Eigen::Index n = x.rows();
    const Eigen::MatrixXd phi = monomial_design(x, spec.alpha);
    const Eigen::Index q = phi.cols();
    if (n < q) {
        throw DegenerateDesign("fit_constrained_spline: need at least " + std::to_string(q) + " points, got " +
                               std::to_string(n));
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_check(phi);
    rank_check.setThreshold(1e-10);
    if (rank_check.rank() < q) {
        throw DegenerateDesign("fit_constrained_spline: monomial design has rank " +
                               std::to_string(rank_check.rank()) + " < " + std::to_string(q));
    }

    RegressionModel model;
    model.points = x;
    model.spec = spec;
    model.kernel = cfg.include_polynomial_part ? KernelKind::nn : KernelKind::distance;
    model.poly_degree = spec.alpha;

    Eigen::MatrixXd k = gram(x, spec, model.kernel).entries;
    k.diagonal().array() += static_cast<double>(n) * cfg.mu;

    // Null-space method: lambda = Q2 gamma keeps Phi' lambda = 0, and
    // Q2' K Q2 is positive definite by conditional positivity.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(phi);
    const Eigen::MatrixXd qfull = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd q2 = qfull.rightCols(n - q);
    if (n > q) {
        const Eigen::MatrixXd reduced = q2.transpose() * k * q2;
        const auto f = factor_spd(reduced, cfg.jitter);
        model.dual_coeffs = q2 * f.llt.solve(q2.transpose() * y);
        model.solver.jitter_used = f.jitter;
        model.solver.condition_estimate = 1.0 / f.rcond;
    } else {
        model.dual_coeffs = Eigen::VectorXd::Zero(n);
        model.solver.condition_estimate = 1.0;
    }
    const Eigen::VectorXd rest = y - k * model.dual_coeffs;
    model.poly_coeffs = rank_check.solve(rest);
    fill_residual(model, y);
    return model;
}

Eigen::VectorXd predict(const RegressionModel& model, const PointSet& xtest) {
    if (xtest.rows() == 0) return Eigen::VectorXd(0);
    if (static_cast<std::size_t>(xtest.cols()) != model.spec.dim) {
        throw InvalidArgument("predict: test points have dimension " + std::to_string(xtest.cols()) +
                              ", model has " + std::to_string(model.spec.dim));
    }
    Eigen::VectorXd out;
    if (model.ensemble) {
        out = approx_kernel(xtest, model.points, *model.ensemble) * model.dual_coeffs;
    } else {
        out = cross_gram(xtest, model.points, model.spec, model.kernel) * model.dual_coeffs;
    }
    if (model.poly_coeffs.size() > 0) out += monomial_design(xtest, model.poly_degree) * model.poly_coeffs;
    return out;
}

Eigen::VectorXd predict(const PrimalModel& model, const PointSet& xtest) {
    if (xtest.rows() == 0) return Eigen::VectorXd(0);
    return features(xtest, model.ensemble).values * model.weights;
}

Eigen::MatrixXd monomial_design(const PointSet& x, unsigned degree) {
    const auto exps = exponents(static_cast<std::size_t>(x.cols()), degree);
    Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(exps.size()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (std::size_t c = 0; c < exps.size(); ++c) {
            double v = 1.0;
            for (Eigen::Index k = 0; k < x.cols(); ++k) {
                for (unsigned p = 0; p < exps[c][static_cast<std::size_t>(k)]; ++p) v *= x(i, k);
            }
            out(i, static_cast<Eigen::Index>(c)) = v;
        }
    }
    return out;
}

}  // namespace nspline
