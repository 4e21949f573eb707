#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nspline/kernels.hpp"
#include "nspline/rng.hpp"
#include "nspline/sampling.hpp"

namespace nspline {

enum class FeatureKind { nn, fourier };

struct FeatureEnsemble {
    FeatureKind kind = FeatureKind::nn;
    KernelSpec spec;
    std::vector<NNParams> nn_params;
    std::vector<FourierFrequency> frequencies;

    [[nodiscard]] std::size_t m() const {
        return kind == FeatureKind::nn ? nn_params.size() : frequencies.size();
    }

    /// Throws InvalidArgument when m = 0 or the parameter list does not match `kind`.
    void validate() const;

    static FeatureEnsemble sample_nn(const KernelSpec& spec, std::size_t m, RngStream& stream);
    /// Requires spec.alpha = 0.
    static FeatureEnsemble sample_fourier(const KernelSpec& spec, std::size_t m, RngStream& stream);
};

/// k_hat(x_a, x_b) = (scale / m) * values.row(a) . values.row(b).
struct FeatureMatrix {
    Eigen::MatrixXd values;
    double scale = 1.0;
    std::size_t m = 0;

    /// Features rescaled so the plain inner product is k_hat.
    [[nodiscard]] Eigen::MatrixXd normalized() const;
};

/// (u_+)^alpha, with the step at u = 0 evaluating to 0.
[[nodiscard]] double relu_power(double u, unsigned alpha);

FeatureMatrix nn_features(const PointSet& x, const FeatureEnsemble& ensemble);
/// Columns 2j, 2j+1 are cos(omega_j'x), sin(omega_j'x); scale 1/2.
FeatureMatrix fourier_features(const PointSet& x, const FeatureEnsemble& ensemble);
FeatureMatrix features(const PointSet& x, const FeatureEnsemble& ensemble);

Eigen::MatrixXd approx_kernel(const PointSet& xa, const PointSet& xb, const FeatureEnsemble& ensemble);

}  // namespace nspline
