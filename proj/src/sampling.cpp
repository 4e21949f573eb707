#include "nspline/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nspline/errors.hpp"
#include "nspline/special.hpp"

namespace nspline {

namespace {

void require_dimension(std::size_t d) {
    if (d == 0) throw InvalidDimension("dimension must be >= 1");
}

void require_radius(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidParameter("radius must be positive and finite, got " + std::to_string(radius));
    }
}

// sin(u)^2 / u^2 with the removable singularity at 0
double sinc_squared(double u) {
    if (std::abs(u) < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 3.0 + 2.0 * u2 * u2 / 45.0;
    }
    const double s = std::sin(u) / u;
    return s * s;
}

}  // namespace

Eigen::VectorXd sample_sphere_direction(std::size_t d, DrawEngine& engine) {
    require_dimension(d);
    Eigen::VectorXd v(static_cast<Eigen::Index>(d));
    double norm2 = 0.0;
    do {
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = engine.normal();
        norm2 = v.squaredNorm();
    } while (norm2 == 0.0);
    return v / std::sqrt(norm2);
}

SphereSample sample_sphere(std::size_t d, RngStream& stream) {
    require_dimension(d);
    auto engine = stream.next_draw();
    return SphereSample{sample_sphere_direction(d, engine)};
}

std::vector<NNParams> sample_nn_params(std::size_t d, double radius, std::size_t m, RngStream& stream) {
    require_dimension(d);
    require_radius(radius);
    std::vector<NNParams> out(m);
    const auto first = stream.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        auto engine = stream.engine_at(first + j);
        out[j].direction = sample_sphere_direction(d, engine);
        out[j].bias = engine.uniform(-radius, radius);
    }
    return out;
}

double fourier_tau_density(double tau, double radius) {
    return radius * sinc_squared(radius * tau) / std::numbers::pi;
}

double cauchy_proposal_density(double tau, double radius) {
    const double u = radius * tau;
    return radius / (std::numbers::pi * (1.0 + u * u));
}

double sample_fourier_tau(double radius, DrawEngine& engine, RejectionStats* stats) {
    require_radius(radius);
    for (std::uint64_t attempt = 0; attempt < kMaxRejections; ++attempt) {
        // u = R tau ~ standard Cauchy; p/q = sinc^2(u) (1 + u^2)
        const double u = std::tan(std::numbers::pi * (engine.uniform() - 0.5));
        const double ratio = sinc_squared(u) * (1.0 + u * u) / kEnvelopeConstant;
        const bool accept = engine.uniform() <= ratio;
        if (stats) {
            ++stats->proposals;
            if (accept) ++stats->accepted;
        }
        if (accept) return u / radius;
    }
    throw SamplerFailure("sample_fourier_tau: no acceptance after " + std::to_string(kMaxRejections) +
                         " proposals");
}

double sample_fourier_tau(double radius, RngStream& stream, RejectionStats* stats) {
    require_radius(radius);
    auto engine = stream.next_draw();
    return sample_fourier_tau(radius, engine, stats);
}

std::vector<FourierFrequency> sample_fourier_frequency(std::size_t d, double radius, std::size_t m,
                                                       RngStream& stream) {
    require_dimension(d);
    require_radius(radius);
    std::vector<FourierFrequency> out(m);
    const auto first = stream.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        auto engine = stream.engine_at(first + j);
        out[j].direction = sample_sphere_direction(d, engine);
        out[j].tau = sample_fourier_tau(radius, engine);
    }
    return out;
}

double sphere_moment(MomentKind kind, const Eigen::VectorXd& z, const std::optional<Eigen::VectorXd>& t,
                     unsigned order, std::size_t d) {
    require_dimension(d);
    if (static_cast<std::size_t>(z.size()) != d) throw InvalidDimension("sphere_moment: z has wrong dimension");
    const bool needs_t = kind == MomentKind::bilinear || kind == MomentKind::bilinear_squared;
    if (needs_t) {
        if (!t) throw InvalidArgument("sphere_moment: bilinear moments need a second vector");
        if (static_cast<std::size_t>(t->size()) != d) {
            throw InvalidDimension("sphere_moment: t has wrong dimension");
        }
    }
    const double half_d = 0.5 * static_cast<double>(d);
    const double dd = static_cast<double>(d);
    const double zz = z.squaredNorm();
    switch (kind) {
        case MomentKind::abs_odd: {
            const double a = order;
            return std::pow(std::sqrt(zz), 2.0 * a + 1.0) * std::tgamma(1.0 + a) *
                   gamma_ratio(half_d, half_d + 0.5 + a) / std::sqrt(std::numbers::pi);
        }
        case MomentKind::even_power: {
            if (order % 2 != 0) throw InvalidArgument("sphere_moment: even_power needs an even power");
            const double a = 0.5 * order;
            return std::pow(zz, a) * gamma_ratio(0.5 + a, 0.5) * gamma_ratio(half_d, half_d + a);
        }
        case MomentKind::quadratic:
            return zz / dd;
        case MomentKind::bilinear:
            return z.dot(*t) / dd;
        case MomentKind::bilinear_squared: {
            const double zt = z.dot(*t);
            return (2.0 * zt * zt + zz * t->squaredNorm()) / (dd * (dd + 2.0));
        }
    }
    return 0.0;
}

}  // namespace nspline
