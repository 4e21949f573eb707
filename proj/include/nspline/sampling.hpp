#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nspline/rng.hpp"

namespace nspline {

/// Unit vector drawn uniformly from the sphere S^{d-1}.
struct SphereSample {
    Eigen::VectorXd direction;
};

/// Hidden-unit parameters (w, b): w on the unit sphere, |b| <= R.
struct NNParams {
    Eigen::VectorXd direction;
    double bias = 0.0;
};

/// Frequency omega = tau * w with w a unit vector, so ||omega|| = |tau|.
struct FourierFrequency {
    double tau = 0.0;
    Eigen::VectorXd direction;

    [[nodiscard]] Eigen::VectorXd omega() const { return tau * direction; }
};

/// Counters filled by the rejection sampler.
struct RejectionStats {
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;

    [[nodiscard]] double acceptance_rate() const {
        return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
    }
};

/// Retry cap per tau sample.
inline constexpr std::uint64_t kMaxRejections = 1'000'000;
/// Envelope constant: p(tau) <= 2 q(tau) for the Cauchy(0, 1/R) proposal.
inline constexpr double kEnvelopeConstant = 2.0;

SphereSample sample_sphere(std::size_t d, RngStream& stream);
/// Same, drawing from an engine the caller already holds.
Eigen::VectorXd sample_sphere_direction(std::size_t d, DrawEngine& engine);

std::vector<NNParams> sample_nn_params(std::size_t d, double radius, std::size_t m, RngStream& stream);

/// One draw from p(tau) = sin^2(R tau) / (pi R tau^2) on the real line.
double sample_fourier_tau(double radius, RngStream& stream, RejectionStats* stats = nullptr);
double sample_fourier_tau(double radius, DrawEngine& engine, RejectionStats* stats = nullptr);

std::vector<FourierFrequency> sample_fourier_frequency(std::size_t d, double radius, std::size_t m,
                                                       RngStream& stream);

/// Target density of tau; equals R/pi at tau = 0.
[[nodiscard]] double fourier_tau_density(double tau, double radius);
/// Cauchy proposal density with location 0 and scale 1/R.
[[nodiscard]] double cauchy_proposal_density(double tau, double radius);

enum class MomentKind { abs_odd, even_power, quadratic, bilinear, bilinear_squared };

/// Closed-form moments of w uniform on S^{d-1}:
///   abs_odd           E|w'z|^{2a+1}        (order = a)
///   even_power        E(w'z)^{p}           (order = p, must be even)
///   quadratic         E(w'z)^2
///   bilinear          E[z'ww't]
///   bilinear_squared  E[(z'ww't)^2]
[[nodiscard]] double sphere_moment(MomentKind kind, const Eigen::VectorXd& z,
                                   const std::optional<Eigen::VectorXd>& t, unsigned order,
                                   std::size_t d);

}  // namespace nspline
