#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nspline/features.hpp"
#include "nspline/kernels.hpp"
#include "nspline/leverage.hpp"

namespace nspline {

enum class Experiment { fig1, fig2, fig3, kernel_eval, feature_sample };

[[nodiscard]] std::string to_string(Experiment e);
/// Accepts "fig1", "fig2", "fig3", "kernel-eval", "feature-sample".
[[nodiscard]] Experiment parse_experiment(const std::string& name);

struct ExperimentConfig {
    Experiment experiment = Experiment::fig1;
    unsigned alpha = 0;
    std::size_t dim = 1;
    double radius = 1.0;
    std::size_t n = 10;
    std::vector<std::size_t> m{200};
    double lambda = 1e-3;
    std::size_t reps = 4;
    std::uint64_t seed = 0;
    /// fig2 test grid size.
    std::size_t test_points = 512;
    /// fig2 inversion jitter.
    double epsilon = 1e-10;
    FeatureKind kind = FeatureKind::nn;
    KernelKind kernel = KernelKind::nn;
    std::string out;
    std::string gnuplot;

    /// Defaults of each experiment: fig1 n=10, m=200, 4 draws; fig2 n=20,
    /// 20 reps, m = 32..2048; fig3 lambda=1e-3, n=4096.
    static ExperimentConfig defaults(Experiment e);
    void validate() const;
    [[nodiscard]] KernelSpec spec() const { return KernelSpec(alpha, dim, radius); }
};

/// "%.17g"
[[nodiscard]] std::string format_number(double v);

/// Writes `# key=value` lines, then a header, then comma-separated rows.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void meta(const std::string& key, const std::string& value);
    void meta(const std::string& key, double value) { meta(key, format_number(value)); }
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& os_;
    bool header_written_ = false;
};

struct Fig1Curve {
    std::size_t draw = 0;
    std::string method;
    std::vector<double> f;
    /// max |f(x_i) - y_i| over the training inputs.
    double train_residual = 0.0;
};

struct Fig1Result {
    std::vector<double> train_x;
    std::vector<double> train_y;
    /// Uniform evaluation grid merged with the training inputs, sorted.
    std::vector<double> grid;
    std::vector<Fig1Curve> curves;
};

struct Fig2Cell {
    std::size_t m = 0;
    std::size_t rep = 0;
    std::string method;
    double error = 0.0;
};

struct Fig2Result {
    std::vector<Fig2Cell> cells;
};

struct Fig3Result {
    std::vector<LeverageProfile> profiles;
};

Fig1Result compute_fig1(const ExperimentConfig& cfg);
Fig2Result compute_fig2(const ExperimentConfig& cfg);
Fig3Result compute_fig3(const ExperimentConfig& cfg);

/// ||K'(K + eps I)^{-1} - K_hat'(K_hat + eps I)^{-1}||_F^2.
[[nodiscard]] double fig2_error(const Eigen::MatrixXd& k_test, const Eigen::MatrixXd& k_train,
                                const Eigen::MatrixXd& khat_test, const Eigen::MatrixXd& khat_train, double eps);

/// Median error per (method, m), in m order.
[[nodiscard]] std::vector<double> fig2_medians(const Fig2Result& result, const std::string& method,
                                               const std::vector<std::size_t>& m_grid);

void write_fig1(const ExperimentConfig& cfg, const Fig1Result& r, std::ostream& os);
void write_fig2(const ExperimentConfig& cfg, const Fig2Result& r, std::ostream& os);
void write_fig3(const ExperimentConfig& cfg, const Fig3Result& r, std::ostream& os);

/// One point pair per input line: x_1..x_d y_1..y_d. Bad lines are reported
/// on `err` with their line number; returns the process exit code.
int kernel_eval(const ExperimentConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

void feature_sample(const ExperimentConfig& cfg, std::ostream& os);

/// Companion gnuplot script for the CSV at `csv_path`.
[[nodiscard]] std::string gnuplot_script(const ExperimentConfig& cfg, const std::string& csv_path);

/// Runs the configured experiment, writing to cfg.out (or `out` when empty).
int run_experiment(const ExperimentConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nspline
