#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nspline/errors.hpp"
#include "nspline/features.hpp"
#include "nspline/kernels.hpp"
#include "support.hpp"

using namespace nspline;

namespace {

FeatureEnsemble one_nn(double w, double b, unsigned alpha) {
    FeatureEnsemble e;
    e.kind = FeatureKind::nn;
    e.spec = KernelSpec(alpha, 1, 1.0);
    e.nn_params.push_back({Eigen::VectorXd::Constant(1, w), b});
    return e;
}

PointSet pts1(std::initializer_list<double> xs) {
    PointSet p(static_cast<Eigen::Index>(xs.size()), 1);
    Eigen::Index i = 0;
    for (double x : xs) p(i++, 0) = x;
    return p;
}

// Mean and standard error of the per-feature products whose average is k_hat.
testsupport::Stats feature_products(const PointSet& x, const PointSet& y, const FeatureEnsemble& e) {
    const auto fx = features(x, e);
    const auto fy = features(y, e);
    testsupport::Welford w;
    const Eigen::Index step = e.kind == FeatureKind::nn ? 1 : 2;
    for (Eigen::Index j = 0; j < fx.values.cols(); j += step) {
        double v = fx.values(0, j) * fy.values(0, j);
        if (step == 2) v += fx.values(0, j + 1) * fy.values(0, j + 1);
        w.add(fx.scale * v);
    }
    return w.stats();
}

}  // namespace

TEST(NNFeatures, Examples) {
    EXPECT_NEAR(nn_features(pts1({0.5}), one_nn(1.0, 0.3, 1)).values(0, 0), 0.8, 1e-16);
    EXPECT_EQ(nn_features(pts1({0.5}), one_nn(1.0, 0.3, 0)).values(0, 0), 1.0);
    EXPECT_EQ(nn_features(pts1({-0.3}), one_nn(1.0, 0.3, 0)).values(0, 0), 0.0);
    EXPECT_EQ(nn_features(pts1({-0.5}), one_nn(1.0, 0.3, 1)).values(0, 0), 0.0);
}

TEST(NNFeatures, DimensionMismatch) {
    EXPECT_THROW((void)nn_features(PointSet::Zero(2, 2), one_nn(1.0, 0.0, 1)), InvalidArgument);
}

TEST(NNFeatures, MagnitudeBound) {
    RngStream s(1);
    std::mt19937_64 gen(1);
    for (unsigned a = 0; a <= 3; ++a) {
        const KernelSpec spec(a, 3, 1.5);
        const auto e = FeatureEnsemble::sample_nn(spec, 200, s);
        PointSet p(50, 3);
        for (int i = 0; i < 50; ++i) p.row(i) = testsupport::ball_point(3, 1.5, gen).transpose();
        EXPECT_LE(nn_features(p, e).values.cwiseAbs().maxCoeff(), std::pow(3.0, a) * (1 + 1e-12));
    }
}

TEST(FourierFeatures, DiagonalIsExactlyOneHalf) {
    RngStream s(2);
    const auto e = FeatureEnsemble::sample_fourier(KernelSpec(0, 2, 1.0), 37, s);
    std::mt19937_64 gen(2);
    PointSet p(10, 2);
    for (int i = 0; i < 10; ++i) p.row(i) = testsupport::ball_point(2, 1.0, gen).transpose();
    const Eigen::MatrixXd k = approx_kernel(p, p, e);
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(k(i, i), 0.5, 1e-15);
    EXPECT_EQ(fourier_features(p, e).values.cols(), 74);
}

TEST(FourierFeatures, ZeroFrequencyGivesConstantKernel) {
    FeatureEnsemble e;
    e.kind = FeatureKind::fourier;
    e.spec = KernelSpec(0, 1, 1.0);
    e.frequencies.push_back({0.0, Eigen::VectorXd::Ones(1)});
    const Eigen::MatrixXd k = approx_kernel(pts1({-0.9, 0.1, 0.7}), pts1({0.3, -0.2}), e);
    EXPECT_TRUE(k.isApproxToConstant(0.5, 1e-15));
}

TEST(FourierFeatures, RequireAlphaZero) {
    RngStream s(3);
    EXPECT_THROW((void)FeatureEnsemble::sample_fourier(KernelSpec(1, 1, 1.0), 4, s), UnsupportedOrder);
    auto e = FeatureEnsemble::sample_fourier(KernelSpec(0, 1, 1.0), 4, s);
    e.spec.alpha = 1;
    EXPECT_THROW((void)fourier_features(pts1({0.0}), e), UnsupportedOrder);
}

TEST(FourierFeatures, DensityReproducesKernelByQuadrature) {
    // int p(tau) cos(tau z) dtau / 2 = 1/2 - |z| / (4R) for |z| <= 2R
    const double big = 4000.0 * std::numbers::pi;
    for (double r : {0.5, 1.0}) {
        for (double z : {0.0, 0.3, 0.7}) {
            // one smooth period per panel, so a single 61-point rule is exact to rounding
            double half = 0.0;
            for (int k = 0; k < 4000; ++k) {
                half += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                    [&](double t) { return fourier_tau_density(t, r) * std::cos(t * z); },
                    k * std::numbers::pi / r, (k + 1) * std::numbers::pi / r, 0);
            }
            // oscillatory tail is O(1/big^2); the z = 0 tail is 1/(2 pi big)
            const double tail = z == 0.0 ? 1.0 / (2.0 * std::numbers::pi * big) : 0.0;
            EXPECT_NEAR(half + tail, 0.5 - std::abs(z) / (4.0 * r), 1e-6) << r << " " << z;
        }
    }
}

TEST(FourierFeatures, MonteCarloMatchesClosedForm) {
    RngStream s(4);
    const auto e = FeatureEnsemble::sample_fourier(KernelSpec(0, 1, 1.0), 1'000'000, s);
    const auto st = feature_products(pts1({0.3}), pts1({-0.4}), e);
    EXPECT_NEAR(approx_kernel(pts1({0.3}), pts1({-0.4}), e)(0, 0), st.mean, 1e-12);
    EXPECT_NEAR(st.mean, 0.325, 4.0 * st.stderr_);
}

TEST(FourierFeatures, MonteCarloInTwoDimensions) {
    RngStream s(5);
    std::mt19937_64 gen(5);
    const KernelSpec spec(0, 2, 1.0);
    const auto e = FeatureEnsemble::sample_fourier(spec, 1'000'000, s);
    for (int t = 0; t < 3; ++t) {
        PointSet x(1, 2);
        PointSet y(1, 2);
        x.row(0) = testsupport::ball_point(2, 1.0, gen).transpose();
        y.row(0) = testsupport::ball_point(2, 1.0, gen).transpose();
        const auto st = feature_products(x, y, e);
        EXPECT_NEAR(kd(x.row(0).transpose(), y.row(0).transpose(), spec), st.mean, 4.0 * st.stderr_);
    }
}

TEST(NNFeatures, MonteCarloMatchesClosedForm) {
    RngStream s(6);
    std::mt19937_64 gen(6);
    const KernelSpec spec(1, 2, 1.0);
    const auto e = FeatureEnsemble::sample_nn(spec, 1'000'000, s);
    for (int t = 0; t < 3; ++t) {
        PointSet x(1, 2);
        PointSet y(1, 2);
        x.row(0) = testsupport::ball_point(2, 1.0, gen).transpose();
        y.row(0) = testsupport::ball_point(2, 1.0, gen).transpose();
        const auto st = feature_products(x, y, e);
        EXPECT_NEAR(kd(x.row(0).transpose(), y.row(0).transpose(), spec), st.mean, 4.0 * st.stderr_);
    }
}

TEST(ApproxKernel, SymmetricPositiveSemidefinite) {
    RngStream s(7);
    std::mt19937_64 gen(7);
    PointSet p(40, 2);
    for (int i = 0; i < 40; ++i) p.row(i) = testsupport::ball_point(2, 1.0, gen).transpose();
    for (auto kind : {FeatureKind::nn, FeatureKind::fourier}) {
        const KernelSpec spec(0, 2, 1.0);
        const auto e = kind == FeatureKind::nn ? FeatureEnsemble::sample_nn(spec, 25, s)
                                               : FeatureEnsemble::sample_fourier(spec, 25, s);
        const Eigen::MatrixXd k = approx_kernel(p, p, e);
        EXPECT_LT((k - k.transpose()).cwiseAbs().maxCoeff(), 1e-15);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10 * k.trace());
        EXPECT_GE(approx_kernel(p.topRows(1), p.topRows(1), e)(0, 0), 0.0);
    }
}

TEST(ApproxKernel, NormalizedFeaturesReproduceKernel) {
    RngStream s(8);
    const auto e = FeatureEnsemble::sample_fourier(KernelSpec(0, 1, 1.0), 9, s);
    const PointSet p = pts1({-0.5, 0.25, 0.9});
    const auto fm = features(p, e);
    const Eigen::MatrixXd z = fm.normalized();
    EXPECT_LT((z * z.transpose() - approx_kernel(p, p, e)).norm(), 1e-15);
}

TEST(ApproxKernel, ErrorDecaysAtMonteCarloRate) {
    // slope of log E|k_hat - k| against log m over 100 seeds
    const KernelSpec spec(0, 1, 1.0);
    const PointSet x = pts1({0.35});
    const PointSet y = pts1({-0.55});
    const double exact = kd(x.row(0).transpose(), y.row(0).transpose(), spec);
    for (auto kind : {FeatureKind::nn, FeatureKind::fourier}) {
        std::vector<double> lm;
        std::vector<double> le;
        for (std::size_t m : {100u, 1000u, 10000u, 100000u}) {
            double total = 0.0;
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                RngStream s(derive_seed(seed, {m, static_cast<std::uint64_t>(kind)}));
                const auto e = kind == FeatureKind::nn ? FeatureEnsemble::sample_nn(spec, m, s)
                                                       : FeatureEnsemble::sample_fourier(spec, m, s);
                total += std::abs(approx_kernel(x, y, e)(0, 0) - exact);
            }
            lm.push_back(std::log(static_cast<double>(m)));
            le.push_back(std::log(total / 100.0));
        }
        const double mx = (lm[0] + lm[1] + lm[2] + lm[3]) / 4.0;
        const double my = (le[0] + le[1] + le[2] + le[3]) / 4.0;
        double num = 0.0;
        double den = 0.0;
        for (int i = 0; i < 4; ++i) {
            num += (lm[i] - mx) * (le[i] - my);
            den += (lm[i] - mx) * (lm[i] - mx);
        }
        EXPECT_NEAR(num / den, -0.5, 0.1);
    }
}

TEST(FeatureEnsemble, Validation) {
    FeatureEnsemble e;
    EXPECT_THROW(e.validate(), InvalidArgument);
    RngStream s(9);
    EXPECT_THROW((void)FeatureEnsemble::sample_nn(KernelSpec(0, 1, 1.0), 0, s), InvalidArgument);
    auto ok = FeatureEnsemble::sample_nn(KernelSpec(0, 1, 1.0), 3, s);
    EXPECT_EQ(ok.m(), 3u);
    EXPECT_NO_THROW(ok.validate());
}
