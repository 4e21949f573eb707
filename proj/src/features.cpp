#include "nspline/features.hpp"

#include <cmath>
#include <string>

#include "nspline/errors.hpp"

namespace nspline {

namespace {

void check_points(const PointSet& x, const FeatureEnsemble& e) {
    if (static_cast<std::size_t>(x.cols()) != e.spec.dim) {
        throw InvalidArgument("features: points have dimension " + std::to_string(x.cols()) + ", ensemble has " +
                              std::to_string(e.spec.dim));
    }
}

}  // namespace

void FeatureEnsemble::validate() const {
    if (kind == FeatureKind::nn) {
        if (nn_params.empty()) throw InvalidArgument("FeatureEnsemble: m must be >= 1");
        if (!frequencies.empty()) throw InvalidArgument("FeatureEnsemble: nn ensemble holds frequencies");
    } else {
        if (frequencies.empty()) throw InvalidArgument("FeatureEnsemble: m must be >= 1");
        if (!nn_params.empty()) throw InvalidArgument("FeatureEnsemble: fourier ensemble holds nn parameters");
    }
}

FeatureEnsemble FeatureEnsemble::sample_nn(const KernelSpec& spec, std::size_t m, RngStream& stream) {
    if (m == 0) throw InvalidArgument("FeatureEnsemble: m must be >= 1");
    FeatureEnsemble e;
    e.kind = FeatureKind::nn;
    e.spec = spec;
    e.nn_params = sample_nn_params(spec.dim, spec.radius, m, stream);
    return e;
}

FeatureEnsemble FeatureEnsemble::sample_fourier(const KernelSpec& spec, std::size_t m, RngStream& stream) {
    if (m == 0) throw InvalidArgument("FeatureEnsemble: m must be >= 1");
    if (spec.alpha != 0) throw UnsupportedOrder("Fourier features exist only for alpha = 0");
    FeatureEnsemble e;
    e.kind = FeatureKind::fourier;
    e.spec = spec;
    e.frequencies = sample_fourier_frequency(spec.dim, spec.radius, m, stream);
    return e;
}

Eigen::MatrixXd FeatureMatrix::normalized() const {
    return std::sqrt(scale / static_cast<double>(m)) * values;
}

double relu_power(double u, unsigned alpha) {
    if (u <= 0.0) return 0.0;
    return alpha == 0 ? 1.0 : std::pow(u, static_cast<double>(alpha));
}

FeatureMatrix nn_features(const PointSet& x, const FeatureEnsemble& e) {
    if (e.kind != FeatureKind::nn) throw InvalidArgument("nn_features: ensemble is not nn");
    e.validate();
    check_points(x, e);
    const auto m = static_cast<Eigen::Index>(e.m());
    Eigen::MatrixXd w(x.cols(), m);
    Eigen::RowVectorXd b(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        w.col(j) = e.nn_params[static_cast<std::size_t>(j)].direction;
        b(j) = e.nn_params[static_cast<std::size_t>(j)].bias;
    }
    Eigen::MatrixXd pre = x * w;
    pre.rowwise() += b;
    FeatureMatrix out;
    out.values = pre.unaryExpr([a = e.spec.alpha](double u) { return relu_power(u, a); });
    out.scale = 1.0;
    out.m = e.m();
    return out;
}

FeatureMatrix fourier_features(const PointSet& x, const FeatureEnsemble& e) {
    if (e.kind != FeatureKind::fourier) throw InvalidArgument("fourier_features: ensemble is not fourier");
    if (e.spec.alpha != 0) throw UnsupportedOrder("fourier_features: only alpha = 0 has a Fourier expansion");
    e.validate();
    check_points(x, e);
    const auto m = static_cast<Eigen::Index>(e.m());
    Eigen::MatrixXd omega(x.cols(), m);
    for (Eigen::Index j = 0; j < m; ++j) omega.col(j) = e.frequencies[static_cast<std::size_t>(j)].omega();
    const Eigen::MatrixXd phase = x * omega;
    FeatureMatrix out;
    out.values.resize(x.rows(), 2 * m);
    for (Eigen::Index j = 0; j < m; ++j) {
        out.values.col(2 * j) = phase.col(j).array().cos();
        out.values.col(2 * j + 1) = phase.col(j).array().sin();
    }
    out.scale = 0.5;
    out.m = e.m();
    return out;
}

FeatureMatrix features(const PointSet& x, const FeatureEnsemble& e) {
    return e.kind == FeatureKind::nn ? nn_features(x, e) : fourier_features(x, e);
}

Eigen::MatrixXd approx_kernel(const PointSet& xa, const PointSet& xb, const FeatureEnsemble& e) {
    const auto fa = features(xa, e);
    const auto fb = features(xb, e);
    return (fa.scale / static_cast<double>(fa.m)) * (fa.values * fb.values.transpose());
}

}  // namespace nspline
