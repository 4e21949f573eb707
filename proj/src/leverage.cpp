#include "nspline/leverage.hpp"

#include <cmath>
#include <string>

#include "nspline/errors.hpp"
#include "nspline/regression.hpp"

namespace nspline {

namespace {

// Even basis C(x) = e^{-s} cosh(sx) and odd basis S(x) = e^{-s} sinh(sx)
// solve the homogeneous equation; the e^{-s} factor keeps them bounded.
struct HomogeneousBasis {
    double s;
    double e2;     // e^{-2s}
    double lp_c;   // L+(C) = (1/4) int C + lambda (C(1) + C(-1))
    double lm_s;   // L-(S) = (1/4) int x S + lambda (S(1) - S(-1))

    explicit HomogeneousBasis(double lambda) {
        s = 0.5 / std::sqrt(lambda);
        e2 = std::exp(-2.0 * s);
        lp_c = (1.0 - e2) / (4.0 * s) + lambda * (1.0 + e2);
        lm_s = 0.5 * ((1.0 + e2) / (2.0 * s) - (1.0 - e2) / (2.0 * s * s)) + lambda * (1.0 - e2);
    }
};

double sinc(double w) {
    if (std::abs(w) < 1e-4) {
        const double w2 = w * w;
        return 1.0 - w2 / 6.0 + w2 * w2 / 120.0;
    }
    return std::sin(w) / w;
}

// int_{-1}^{1} x sin(wx) dx / 2 = sin(w)/w^2 - cos(w)/w
double half_moment_sin(double w) {
    if (std::abs(w) < 1e-4) {
        const double w2 = w * w;
        return w / 3.0 - w * w2 / 30.0;
    }
    return std::sin(w) / (w * w) - std::cos(w) / w;
}

}  // namespace

void LeverageQuery::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("leverage: lambda must be positive, got " + std::to_string(lambda));
    }
    if (!std::isfinite(param)) throw InvalidArgument("leverage: parameter must be finite");
}

double nn_leverage(const LeverageQuery& q) {
    q.validate();
    const double b = q.param;
    if (std::abs(b) > 1.0) throw InvalidArgument("nn_leverage: bias must satisfy |b| <= 1");
    if (b >= 1.0) return 0.0;
    const double lam = q.lambda;
    const HomogeneousBasis h(lam);
    const double s = h.s;
    const double len_up = 1.0 - b;
    const double len_dn = 1.0 + b;
    const double eu = std::exp(-s * len_up);
    const double ed = std::exp(-s * len_dn);

    // particular solution f0 = sign(x - b) e^{-s|x - b|} / (2 lambda)
    const double f0_hi = eu / (2.0 * lam);
    const double f0_lo = -ed / (2.0 * lam);
    const double int_f0 = (ed - eu) / (2.0 * lam * s);
    const double first = b * (1.0 - eu) / s + (1.0 / (s * s) - eu * (len_up / s + 1.0 / (s * s)));
    const double second = b * (1.0 - ed) / s - (1.0 / (s * s) - ed * (len_dn / s + 1.0 / (s * s)));
    const double int_x_f0 = (first - second) / (2.0 * lam);

    const double lp_f0 = 0.25 * int_f0 + lam * (f0_hi + f0_lo);
    const double lm_f0 = 0.25 * int_x_f0 + lam * (f0_hi - f0_lo);
    // g(1) + g(-1) = g(1) - g(-1) = 1
    const double a = (1.0 - lp_f0) / h.lp_c;
    const double bb = (1.0 - lm_f0) / h.lm_s;

    const double g_f0 = (1.0 - eu) / (2.0 * lam * s);
    const double g_c = (0.5 * (1.0 - h.e2) - 0.5 * (eu - ed)) / s;
    const double g_s = (0.5 * (1.0 + h.e2) - 0.5 * (eu + ed)) / s;
    return std::max(0.0, 0.5 * (g_f0 + a * g_c + bb * g_s));
}

FourierLeverage fourier_leverage(const LeverageQuery& q) {
    q.validate();
    const double lam = q.lambda;
    const double w = q.param;
    const HomogeneousBasis h(lam);
    const double s = h.s;
    const double c = w * w / (lam * w * w + 0.25);
    const double cw = std::cos(w);
    const double sw = std::sin(w);
    const double sinc2 = sinc(2.0 * w);
    const double denom = s * s + w * w;

    FourierLeverage out;
    {
        // f0 = c cos(wx)
        const double lp_f0 = 0.5 * c * sinc(w) + 2.0 * lam * c * cw;
        const double a = (2.0 * cw - lp_f0) / h.lp_c;
        const double g_f0 = c * (1.0 + sinc2);
        const double g_c = 2.0 * (s * cw * 0.5 * (1.0 - h.e2) + w * sw * 0.5 * (1.0 + h.e2)) / denom;
        out.cos_score = std::max(0.0, 0.5 * (g_f0 + a * g_c));
    }
    {
        // f0 = c sin(wx)
        const double lm_f0 = 0.5 * c * half_moment_sin(w) + 2.0 * lam * c * sw;
        const double bb = (2.0 * sw - lm_f0) / h.lm_s;
        const double g_f0 = c * (1.0 - sinc2);
        const double g_s = 2.0 * (s * sw * 0.5 * (1.0 + h.e2) - w * cw * 0.5 * (1.0 - h.e2)) / denom;
        out.sin_score = std::max(0.0, 0.5 * (g_f0 + bb * g_s));
    }
    return out;
}

std::vector<double> uniform_grid(std::size_t n, double radius) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = -radius + radius * (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    }
    return out;
}

GridLeverageEstimator::GridLeverageEstimator(std::vector<double> grid, const KernelSpec& spec, double lambda)
    : grid_(std::move(grid)), lambda_(lambda) {
    LeverageQuery{lambda, 0.0}.validate();
    if (grid_.size() < 2) throw InvalidArgument("GridLeverageEstimator: need at least 2 grid points");
    if (spec.dim != 1) throw InvalidDimension("GridLeverageEstimator: grid estimator is one-dimensional");
    const auto n = static_cast<Eigen::Index>(grid_.size());
    PointSet pts(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        pts(i, 0) = grid_[static_cast<std::size_t>(i)];
        if (std::abs(pts(i, 0)) > spec.radius) throw InvalidArgument("GridLeverageEstimator: grid leaves [-R, R]");
    }
    Eigen::MatrixXd k = gram(pts, spec, KernelKind::nn).entries;
    k.diagonal().array() += static_cast<double>(n) * lambda;
    llt_ = factor_spd(k, 0.0).llt;
}

double GridLeverageEstimator::score(const Eigen::VectorXd& g) const {
    if (g.size() != static_cast<Eigen::Index>(grid_.size())) {
        throw InvalidArgument("GridLeverageEstimator: feature vector length does not match the grid");
    }
    return std::max(0.0, g.dot(llt_.solve(g)));
}

double GridLeverageEstimator::score(const std::function<double(double)>& feature) const {
    Eigen::VectorXd g(static_cast<Eigen::Index>(grid_.size()));
    for (std::size_t i = 0; i < grid_.size(); ++i) g(static_cast<Eigen::Index>(i)) = feature(grid_[i]);
    return score(g);
}

double empirical_leverage(const std::function<double(double, double)>& feature, double param, double lambda,
                          const std::vector<double>& grid, const KernelSpec& spec) {
    const GridLeverageEstimator est(grid, spec, lambda);
    return est.score([&](double x) { return feature(x, param); });
}

OdeOracle::OdeOracle(double lambda, std::size_t n) : lambda_(lambda) {
    LeverageQuery{lambda, 0.0}.validate();
    if (n < 16) throw ResolutionError("OdeOracle: need at least 16 grid points, got " + std::to_string(n));
    const auto nn = static_cast<Eigen::Index>(n);
    nodes_ = Eigen::VectorXd::LinSpaced(nn, -1.0, 1.0);
    const double h = 2.0 / static_cast<double>(n - 1);
    weights_ = Eigen::VectorXd::Constant(nn, h);
    weights_(0) = weights_(nn - 1) = 0.5 * h;
    root_w_ = weights_.cwiseSqrt();
    // D K' D + lambda with K'(x, y) = 1/4 - |x - y| / 8 and D = diag(sqrt(w))
    Eigen::MatrixXd a(nn, nn);
    for (Eigen::Index j = 0; j < nn; ++j) {
        for (Eigen::Index i = 0; i < nn; ++i) {
            a(i, j) = root_w_(i) * (0.25 - 0.125 * std::abs(nodes_(i) - nodes_(j))) * root_w_(j);
        }
    }
    a.diagonal().array() += lambda;
    llt_.compute(a);
    if (llt_.info() != Eigen::Success) throw IllConditioned("OdeOracle: discretized operator not positive", 0.0);
}

Eigen::VectorXd OdeOracle::solve(const std::function<double(double)>& g) const {
    Eigen::VectorXd rhs(nodes_.size());
    for (Eigen::Index i = 0; i < nodes_.size(); ++i) rhs(i) = root_w_(i) * g(nodes_(i));
    return llt_.solve(rhs).cwiseQuotient(root_w_);
}

double OdeOracle::leverage(const std::function<double(double)>& g) const {
    const Eigen::VectorXd f = solve(g);
    double total = 0.0;
    for (Eigen::Index i = 0; i < nodes_.size(); ++i) total += weights_(i) * g(nodes_(i)) * f(i);
    return 0.5 * total;
}

double OdeOracle::evaluate(const Eigen::VectorXd& f, const std::function<double(double)>& g, double x) const {
    double sigma = 0.0;
    for (Eigen::Index j = 0; j < nodes_.size(); ++j) {
        sigma += weights_(j) * (0.25 - 0.125 * std::abs(x - nodes_(j))) * f(j);
    }
    return (g(x) - sigma) / lambda_;
}

double ode_oracle(const std::function<double(double)>& g, double lambda, std::size_t n) {
    return OdeOracle(lambda, n).leverage(g);
}

std::string to_string(LeverageMethod method) {
    switch (method) {
        case LeverageMethod::nn:
            return "nn";
        case LeverageMethod::fourier_cos:
            return "fourier_cos";
        case LeverageMethod::fourier_sin:
            return "fourier_sin";
    }
    return "unknown";
}

LeverageProfile leverage_profile(LeverageMethod method, const std::vector<double>& params,
                                 const GridLeverageEstimator& estimator) {
    LeverageProfile profile;
    profile.method = to_string(method);
    profile.lambda = estimator.lambda();
    profile.n = estimator.grid().size();
    profile.records.reserve(params.size());
    for (double p : params) {
        LeverageRecord r;
        r.param = p;
        const LeverageQuery q{estimator.lambda(), p};
        switch (method) {
            case LeverageMethod::nn:
                r.theoretical = nn_leverage(q);
                r.empirical = estimator.score([p](double x) { return x > p ? 1.0 : 0.0; });
                break;
            case LeverageMethod::fourier_cos:
                r.theoretical = fourier_leverage(q).cos_score;
                r.empirical = estimator.score([p](double x) { return std::cos(p * x); });
                break;
            case LeverageMethod::fourier_sin:
                r.theoretical = fourier_leverage(q).sin_score;
                r.empirical = estimator.score([p](double x) { return std::sin(p * x); });
                break;
        }
        profile.records.push_back(r);
    }
    return profile;
}

}  // namespace nspline
