#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "nspline/bench.hpp"
#include "nspline/errors.hpp"

using namespace nspline;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string l;
    while (std::getline(ss, l)) out.push_back(l);
    return out;
}

std::string first_data_line(const std::string& csv) {
    for (const auto& l : lines(csv)) {
        if (!l.empty() && l[0] != '#') return l;
    }
    return {};
}

int run(const ExperimentConfig& cfg, const std::string& input, std::string& out, std::string& err) {
    std::istringstream in(input);
    std::ostringstream os;
    std::ostringstream es;
    const int code = run_experiment(cfg, in, os, es);
    out = os.str();
    err = es.str();
    return code;
}

}  // namespace

TEST(Csv, NumberFormat) {
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(1.0 / 12.0), "0.083333333333333329");
    EXPECT_EQ(std::stod(format_number(M_PI)), M_PI);
}

TEST(Csv, MetadataPrecedesHeader) {
    std::ostringstream os;
    CsvWriter w(os);
    w.meta("a", "1");
    w.header({"x", "y"});
    w.row({"1", "2"});
    EXPECT_EQ(os.str(), "# a=1\nx,y\n1,2\n");
    EXPECT_THROW(w.meta("late", "2"), Error);
}

TEST(Config, Defaults) {
    const auto f2 = ExperimentConfig::defaults(Experiment::fig2);
    EXPECT_EQ(f2.n, 20u);
    EXPECT_EQ(f2.reps, 20u);
    EXPECT_EQ(f2.m.front(), 32u);
    EXPECT_EQ(f2.m.back(), 2048u);
    const auto f3 = ExperimentConfig::defaults(Experiment::fig3);
    EXPECT_EQ(f3.n, 4096u);
    EXPECT_EQ(f3.lambda, 1e-3);
    EXPECT_EQ(ExperimentConfig::defaults(Experiment::fig1).m.front(), 200u);
}

TEST(Config, Validation) {
    auto c = ExperimentConfig::defaults(Experiment::fig2);
    c.m = {64, 32};
    EXPECT_THROW(c.validate(), InvalidParameter);
    c.m = {32, 32};
    EXPECT_THROW(c.validate(), InvalidParameter);
    c = ExperimentConfig::defaults(Experiment::fig2);
    c.reps = 0;
    EXPECT_THROW(c.validate(), InvalidParameter);
    c = ExperimentConfig::defaults(Experiment::fig3);
    c.alpha = 1;
    EXPECT_THROW(c.validate(), InvalidParameter);
    EXPECT_THROW((void)parse_experiment("fig4"), InvalidArgument);
    EXPECT_EQ(parse_experiment("kernel-eval"), Experiment::kernel_eval);
}

TEST(KernelEval, Examples) {
    auto c = ExperimentConfig::defaults(Experiment::kernel_eval);
    std::string out;
    std::string err;
    EXPECT_EQ(run(c, "0 0\n", out, err), 0);
    EXPECT_EQ(first_data_line(out), "line,k");
    EXPECT_EQ(lines(out).back(), "1,0.5");
    c.alpha = 1;
    EXPECT_EQ(run(c, "0.5 -0.5\n", out, err), 0);
    EXPECT_EQ(lines(out).back(), "1,0.083333333333333329");
}

TEST(KernelEval, MalformedLinesReportLineNumbers) {
    auto c = ExperimentConfig::defaults(Experiment::kernel_eval);
    std::string out;
    std::string err;
    EXPECT_NE(run(c, "0 0\n1 2 3\n0.1 x\n\n0.2 0.3\n", out, err), 0);
    EXPECT_NE(err.find("line 2"), std::string::npos);
    EXPECT_NE(err.find("line 3"), std::string::npos);
    EXPECT_EQ(lines(out).back().substr(0, 2), "5,");
}

TEST(KernelEval, MultiDimensionalAndArccos) {
    auto c = ExperimentConfig::defaults(Experiment::kernel_eval);
    c.dim = 2;
    c.kernel = KernelKind::arccos;
    std::string out;
    std::string err;
    EXPECT_EQ(run(c, "0.1 0.2 0.1 0.2\n", out, err), 0);
    EXPECT_EQ(lines(out).back(), "1,0.5");
}

TEST(FeatureSample, ByteIdentical) {
    auto c = ExperimentConfig::defaults(Experiment::feature_sample);
    c.kind = FeatureKind::fourier;
    c.m = {3};
    c.seed = 7;
    std::string a;
    std::string b;
    std::string err;
    EXPECT_EQ(run(c, "", a, err), 0);
    EXPECT_EQ(run(c, "", b, err), 0);
    EXPECT_EQ(a, b);
    EXPECT_EQ(first_data_line(a), "index,tau,w1");
    EXPECT_EQ(lines(a).size(), 7u + 1u + 3u);
}

TEST(Fig1, ExactCurveIsTheSameForEveryDraw) {
    const auto cfg = ExperimentConfig::defaults(Experiment::fig1);
    const auto r = compute_fig1(cfg);
    std::vector<const Fig1Curve*> exact;
    for (const auto& c : r.curves) {
        if (c.method == "exact") exact.push_back(&c);
    }
    ASSERT_EQ(exact.size(), 4u);
    for (const auto* c : exact) EXPECT_EQ(c->f, exact.front()->f);
    EXPECT_EQ(r.grid.size(), 512u + cfg.n);
}

TEST(Fig1, CurvesInterpolateTrainingPoints) {
    const auto cfg = ExperimentConfig::defaults(Experiment::fig1);
    const auto r = compute_fig1(cfg);
    // check in the emitted curve itself: training inputs are grid points
    for (const auto& c : r.curves) {
        double worst = 0.0;
        for (std::size_t i = 0; i < r.train_x.size(); ++i) {
            const auto it = std::find(r.grid.begin(), r.grid.end(), r.train_x[i]);
            ASSERT_NE(it, r.grid.end());
            worst = std::max(worst, std::abs(c.f[static_cast<std::size_t>(it - r.grid.begin())] - r.train_y[i]));
        }
        EXPECT_NEAR(worst, c.train_residual, 1e-9 * std::max(1.0, c.train_residual));
        if (c.method == "exact") EXPECT_LT(c.train_residual, 1e-6);
    }
    int good = 0;
    for (const auto& c : r.curves) good += c.train_residual < 1e-6;
    // a random ensemble interpolates unless no feature separates two inputs
    EXPECT_GE(good, 10);
}

TEST(Fig1, NNCurvesCloserToExactThanFourier) {
    const auto cfg = ExperimentConfig::defaults(Experiment::fig1);
    const auto r = compute_fig1(cfg);
    int wins = 0;
    for (std::size_t d = 0; d < cfg.reps; ++d) {
        const Fig1Curve* nn = nullptr;
        const Fig1Curve* four = nullptr;
        const Fig1Curve* exact = nullptr;
        for (const auto& c : r.curves) {
            if (c.draw != d) continue;
            if (c.method == "nn") nn = &c;
            if (c.method == "fourier") four = &c;
            if (c.method == "exact") exact = &c;
        }
        double dn = 0.0;
        double df = 0.0;
        for (std::size_t i = 0; i < r.grid.size(); ++i) {
            dn = std::max(dn, std::abs(nn->f[i] - exact->f[i]));
            df = std::max(df, std::abs(four->f[i] - exact->f[i]));
        }
        wins += dn < df;
    }
    EXPECT_GE(wins, 3);
}

TEST(Fig2, ErrorsNonNegativeAndDeterministic) {
    auto cfg = ExperimentConfig::defaults(Experiment::fig2);
    cfg.reps = 3;
    cfg.m = {32, 128};
    const auto a = compute_fig2(cfg);
    ASSERT_EQ(a.cells.size(), 3u * 2u * 2u);
    for (const auto& c : a.cells) EXPECT_GE(c.error, 0.0);
    std::ostringstream s1;
    std::ostringstream s2;
    write_fig2(cfg, a, s1);
    write_fig2(cfg, compute_fig2(cfg), s2);
    EXPECT_EQ(s1.str(), s2.str());
    EXPECT_EQ(first_data_line(s1.str()), "m,rep,method,error");
    EXPECT_NE(s1.str().find("# jitter=1e-10"), std::string::npos);
}

TEST(Fig2, ErrorIsZeroForExactKernel) {
    Eigen::MatrixXd k(2, 2);
    k << 0.5, 0.25, 0.25, 0.5;
    Eigen::MatrixXd t(1, 2);
    t << 0.4, 0.3;
    EXPECT_NEAR(fig2_error(t, k, t, k, 1e-10), 0.0, 1e-20);
}

TEST(Fig2, MediansOrderedInOrder) {
    Fig2Result r;
    r.cells = {{32, 0, "nn", 3.0}, {32, 1, "nn", 1.0}, {64, 0, "nn", 0.5}, {64, 1, "nn", 0.7}, {64, 2, "nn", 0.1}};
    const auto med = fig2_medians(r, "nn", {32, 64});
    EXPECT_DOUBLE_EQ(med[0], 2.0);
    EXPECT_DOUBLE_EQ(med[1], 0.5);
}

TEST(Fig3, SmallGridProfile) {
    auto cfg = ExperimentConfig::defaults(Experiment::fig3);
    cfg.n = 256;
    const auto r = compute_fig3(cfg);
    ASSERT_EQ(r.profiles.size(), 3u);
    for (const auto& p : r.profiles) EXPECT_EQ(p.records.size(), 201u);
    std::ostringstream os;
    write_fig3(cfg, r, os);
    EXPECT_EQ(first_data_line(os.str()), "method,param,empirical,theoretical");
}

TEST(Run, WritesFileAndGnuplotScript) {
    const auto dir = std::filesystem::temp_directory_path() / "nspline_bench_test";
    std::filesystem::create_directories(dir);
    auto cfg = ExperimentConfig::defaults(Experiment::feature_sample);
    cfg.out = (dir / "f.csv").string();
    cfg.gnuplot = (dir / "f.gp").string();
    std::string out;
    std::string err;
    EXPECT_EQ(run(cfg, "", out, err), 0);
    EXPECT_TRUE(out.empty());
    std::ifstream gp(cfg.gnuplot);
    std::stringstream script;
    script << gp.rdbuf();
    EXPECT_NE(script.str().find(cfg.out), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Run, UnwritablePathFails) {
    auto cfg = ExperimentConfig::defaults(Experiment::feature_sample);
    cfg.out = "/nonexistent-dir/x.csv";
    std::string out;
    std::string err;
    EXPECT_NE(run(cfg, "", out, err), 0);
    EXPECT_NE(err.find("/nonexistent-dir/x.csv"), std::string::npos);
}
