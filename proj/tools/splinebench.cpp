#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nspline/bench.hpp"
#include "nspline/errors.hpp"

namespace {

nspline::KernelKind parse_kernel(const std::string& s) {
    if (s == "nn") return nspline::KernelKind::nn;
    if (s == "arccos") return nspline::KernelKind::arccos;
    if (s == "pol") return nspline::KernelKind::pol_only;
    if (s == "distance") return nspline::KernelKind::distance;
    throw nspline::InvalidArgument("unknown kernel '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-feature spline kernel experiments; writes CSV."};

    std::string experiment;
    unsigned alpha = 0;
    std::size_t dim = 1;
    double radius = 1.0;
    std::size_t n = 0;
    std::vector<std::size_t> m;
    double lambda = 0.0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::size_t test_points = 0;
    std::string out;
    std::string gnuplot;
    std::string kind = "nn";
    std::string kernel = "nn";

    const std::string choices = "fig1, fig2, fig3, kernel-eval, feature-sample";
    app.add_option("experiment,--experiment", experiment, "Experiment: " + choices);
    auto* o_alpha = app.add_option("--alpha", alpha, "Activation power");
    auto* o_dim = app.add_option("--dim", dim, "Input dimension");
    auto* o_radius = app.add_option("--radius", radius, "Ball radius R");
    auto* o_n = app.add_option("--n", n, "Training points (fig1/fig2) or grid size (fig3)");
    auto* o_m = app.add_option("--m", m, "Feature count; repeat for a grid")->allow_extra_args(false);
    auto* o_lambda = app.add_option("--lambda", lambda, "Regularization for leverage scores");
    auto* o_reps = app.add_option("--reps", reps, "Replications (fig2) or draws (fig1)");
    auto* o_seed = app.add_option("--seed", seed, "Base seed");
    auto* o_test = app.add_option("--test-points", test_points, "Test grid size for fig2");
    app.add_option("--out", out, "Output CSV path (default stdout)");
    app.add_option("--gnuplot", gnuplot, "Also write a gnuplot script to this path");
    auto* o_kind = app.add_option("--kind", kind, "Feature kind for feature-sample: nn or fourier");
    auto* o_kernel = app.add_option("--kernel", kernel, "Kernel for kernel-eval: nn, arccos, pol, distance");

    CLI11_PARSE(app, argc, argv);

    if (experiment.empty()) {
        std::cerr << "no experiment given; choose one of " << choices << "\n";
        return 2;
    }

    try {
        auto cfg = nspline::ExperimentConfig::defaults(nspline::parse_experiment(experiment));
        if (*o_alpha) cfg.alpha = alpha;
        if (*o_dim) cfg.dim = dim;
        if (*o_radius) cfg.radius = radius;
        if (*o_n) cfg.n = n;
        if (*o_m) cfg.m = m;
        if (*o_lambda) cfg.lambda = lambda;
        if (*o_reps) cfg.reps = reps;
        if (*o_seed) cfg.seed = seed;
        if (*o_test) cfg.test_points = test_points;
        if (*o_kind) {
            if (kind == "nn") {
                cfg.kind = nspline::FeatureKind::nn;
            } else if (kind == "fourier") {
                cfg.kind = nspline::FeatureKind::fourier;
            } else {
                throw nspline::InvalidArgument("unknown feature kind '" + kind + "'");
            }
        }
        if (*o_kernel) cfg.kernel = parse_kernel(kernel);
        cfg.out = out;
        cfg.gnuplot = gnuplot;
        return nspline::run_experiment(cfg, std::cin, std::cout, std::cerr);
    } catch (const nspline::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
