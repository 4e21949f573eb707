#include "nspline/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nspline/errors.hpp"
#include "nspline/regression.hpp"

namespace nspline {

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = 0.5 * (lo + hi);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

PointSet column(const std::vector<double>& xs) {
    PointSet p(static_cast<Eigen::Index>(xs.size()), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) p(static_cast<Eigen::Index>(i), 0) = xs[i];
    return p;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

// Training data shared by fig1 (one set) and fig2 (one set per rep).
void draw_training(std::uint64_t seed, std::size_t n, double radius, std::vector<double>& x,
                   std::vector<double>& y) {
    RngStream stream(seed);
    x.resize(n);
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto e = stream.next_draw();
        x[i] = e.uniform(-radius, radius);
        y[i] = e.normal();
    }
}

void common_meta(CsvWriter& w, const ExperimentConfig& cfg) {
    w.meta("experiment", to_string(cfg.experiment));
    w.meta("alpha", std::to_string(cfg.alpha));
    w.meta("dim", std::to_string(cfg.dim));
    w.meta("radius", cfg.radius);
    w.meta("seed", std::to_string(cfg.seed));
}

std::string method_name(FeatureKind k) { return k == FeatureKind::nn ? "nn" : "fourier"; }

FeatureEnsemble sample_ensemble(FeatureKind kind, const KernelSpec& spec, std::size_t m, std::uint64_t seed) {
    RngStream stream(seed);
    return kind == FeatureKind::nn ? FeatureEnsemble::sample_nn(spec, m, stream)
                                   : FeatureEnsemble::sample_fourier(spec, m, stream);
}

}  // namespace

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::fig1:
            return "fig1";
        case Experiment::fig2:
            return "fig2";
        case Experiment::fig3:
            return "fig3";
        case Experiment::kernel_eval:
            return "kernel-eval";
        case Experiment::feature_sample:
            return "feature-sample";
    }
    return "unknown";
}

Experiment parse_experiment(const std::string& name) {
    for (auto e : {Experiment::fig1, Experiment::fig2, Experiment::fig3, Experiment::kernel_eval,
                   Experiment::feature_sample}) {
        if (to_string(e) == name) return e;
    }
    throw InvalidArgument("unknown experiment '" + name + "'");
}

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
    ExperimentConfig c;
    c.experiment = e;
    switch (e) {
        case Experiment::fig1:
            c.n = 10;
            c.m = {200};
            c.reps = 4;
            break;
        case Experiment::fig2:
            c.n = 20;
            c.m = {32, 64, 128, 256, 512, 1024, 2048};
            c.reps = 20;
            break;
        case Experiment::fig3:
            c.n = 4096;
            c.lambda = 1e-3;
            c.reps = 1;
            break;
        case Experiment::kernel_eval:
            c.reps = 1;
            break;
        case Experiment::feature_sample:
            c.m = {10};
            c.reps = 1;
            break;
    }
    return c;
}

void ExperimentConfig::validate() const {
    (void)spec();
    if (reps < 1) throw InvalidParameter("reps must be >= 1");
    if (m.empty()) throw InvalidParameter("need at least one feature count m");
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) throw InvalidParameter("m must be >= 1");
        if (i > 0 && m[i] <= m[i - 1]) throw InvalidParameter("m grid must be strictly increasing");
    }
    if (!(lambda > 0.0)) throw InvalidParameter("lambda must be positive");
    if (!(epsilon >= 0.0)) throw InvalidParameter("epsilon must be non-negative");
    const bool fig = experiment == Experiment::fig1 || experiment == Experiment::fig2 ||
                     experiment == Experiment::fig3;
    if (fig && n < 1) throw InvalidParameter("n must be >= 1");
    if (experiment == Experiment::fig3 && (dim != 1 || alpha != 0)) {
        throw InvalidParameter("fig3 closed forms exist only for d = 1, alpha = 0");
    }
    if (experiment == Experiment::fig3 && n < 2) throw InvalidParameter("fig3 needs n >= 2");
    if ((experiment == Experiment::fig1 || experiment == Experiment::fig2) && dim != 1) {
        throw InvalidParameter(to_string(experiment) + " is one-dimensional");
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
    if (header_written_) throw Error("CsvWriter: metadata after header");
    os_ << "# " << key << '=' << value << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    row(columns);
    header_written_ = true;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ',';
        os_ << cells[i];
    }
    os_ << '\n';
}

Fig1Result compute_fig1(const ExperimentConfig& cfg) {
    cfg.validate();
    const KernelSpec spec = cfg.spec();
    Fig1Result r;
    draw_training(derive_seed(cfg.seed, {0}), cfg.n, cfg.radius, r.train_x, r.train_y);
    r.grid = linspace(-cfg.radius, cfg.radius, 512);
    r.grid.insert(r.grid.end(), r.train_x.begin(), r.train_x.end());
    std::sort(r.grid.begin(), r.grid.end());

    const PointSet x = column(r.train_x);
    const PointSet g = column(r.grid);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(r.train_y.data(), static_cast<Eigen::Index>(cfg.n));
    const FitConfig fit{};
    const std::size_t m = cfg.m.front();

    const auto exact_model = fit_dual(x, y, spec, fit);
    const Eigen::VectorXd exact = predict(exact_model, g);
    for (std::size_t draw = 0; draw < cfg.reps; ++draw) {
        for (auto kind : {FeatureKind::nn, FeatureKind::fourier}) {
            if (kind == FeatureKind::fourier && spec.alpha != 0) continue;
            const auto ens = sample_ensemble(kind, spec, m, derive_seed(cfg.seed, {1, draw, static_cast<std::uint64_t>(kind)}));
            const auto model = fit_dual(x, y, ens, fit);
            const Eigen::VectorXd f = predict(model, g);
            r.curves.push_back({draw, method_name(kind), std::vector<double>(f.data(), f.data() + f.size()),
                                model.solver.residual_norm});
        }
        r.curves.push_back({draw, "exact", std::vector<double>(exact.data(), exact.data() + exact.size()),
                            exact_model.solver.residual_norm});
    }
    return r;
}

double fig2_error(const Eigen::MatrixXd& k_test, const Eigen::MatrixXd& k_train, const Eigen::MatrixXd& khat_test,
                  const Eigen::MatrixXd& khat_train, double eps) {
    const auto f = factor_spd(k_train, eps);
    const auto fh = factor_spd(khat_train, eps);
    // A K^{-1} = (K^{-1} A')' for symmetric K
    const Eigen::MatrixXd a = f.llt.solve(k_test.transpose()).transpose();
    const Eigen::MatrixXd b = fh.llt.solve(khat_test.transpose()).transpose();
    return (a - b).squaredNorm();
}

Fig2Result compute_fig2(const ExperimentConfig& cfg) {
    cfg.validate();
    const KernelSpec spec = cfg.spec();
    const PointSet test = column(linspace(-cfg.radius, cfg.radius, cfg.test_points));
    Fig2Result r;
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
        std::vector<double> xs;
        std::vector<double> ys;
        draw_training(derive_seed(cfg.seed, {0, rep}), cfg.n, cfg.radius, xs, ys);
        const PointSet x = column(xs);
        const Eigen::MatrixXd k_train = gram(x, spec, KernelKind::nn).entries;
        const Eigen::MatrixXd k_test = cross_gram(test, x, spec, KernelKind::nn);
        for (std::size_t m : cfg.m) {
            for (auto kind : {FeatureKind::nn, FeatureKind::fourier}) {
                if (kind == FeatureKind::fourier && spec.alpha != 0) continue;
                const auto ens =
                    sample_ensemble(kind, spec, m, derive_seed(cfg.seed, {m, rep, static_cast<std::uint64_t>(kind)}));
                const double err = fig2_error(k_test, k_train, approx_kernel(test, x, ens),
                                              approx_kernel(x, x, ens), cfg.epsilon);
                r.cells.push_back({m, rep, method_name(kind), err});
            }
        }
    }
    return r;
}

std::vector<double> fig2_medians(const Fig2Result& result, const std::string& method,
                                 const std::vector<std::size_t>& m_grid) {
    std::vector<double> out;
    for (std::size_t m : m_grid) {
        std::vector<double> v;
        for (const auto& c : result.cells) {
            if (c.m == m && c.method == method) v.push_back(c.error);
        }
        if (v.empty()) {
            out.push_back(std::nan(""));
            continue;
        }
        std::sort(v.begin(), v.end());
        const std::size_t k = v.size();
        out.push_back(k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]));
    }
    return out;
}

Fig3Result compute_fig3(const ExperimentConfig& cfg) {
    cfg.validate();
    const GridLeverageEstimator est(uniform_grid(cfg.n, 1.0), KernelSpec(0, 1, 1.0), cfg.lambda);
    const auto biases = linspace(-1.0, 1.0, 201);
    const auto freqs = linspace(0.0, 50.0, 201);
    Fig3Result r;
    r.profiles.push_back(leverage_profile(LeverageMethod::nn, biases, est));
    r.profiles.push_back(leverage_profile(LeverageMethod::fourier_cos, freqs, est));
    r.profiles.push_back(leverage_profile(LeverageMethod::fourier_sin, freqs, est));
    return r;
}

void write_fig1(const ExperimentConfig& cfg, const Fig1Result& r, std::ostream& os) {
    CsvWriter w(os);
    common_meta(w, cfg);
    w.meta("n", std::to_string(cfg.n));
    w.meta("m", std::to_string(cfg.m.front()));
    w.meta("draws", std::to_string(cfg.reps));
    w.meta("grid", "512 uniform points plus training inputs");
    for (std::size_t i = 0; i < r.train_x.size(); ++i) {
        w.meta("train", format_number(r.train_x[i]) + " " + format_number(r.train_y[i]));
    }
    // a finite ensemble cannot interpolate two inputs its features do not separate
    for (const auto& c : r.curves) {
        w.meta("train_residual", std::to_string(c.draw) + " " + c.method + " " + format_number(c.train_residual));
    }
    w.header({"draw", "method", "x", "f"});
    for (const auto& c : r.curves) {
        for (std::size_t i = 0; i < r.grid.size(); ++i) {
            w.row({std::to_string(c.draw), c.method, format_number(r.grid[i]), format_number(c.f[i])});
        }
    }
}

void write_fig2(const ExperimentConfig& cfg, const Fig2Result& r, std::ostream& os) {
    CsvWriter w(os);
    common_meta(w, cfg);
    w.meta("n", std::to_string(cfg.n));
    w.meta("reps", std::to_string(cfg.reps));
    w.meta("m_grid", join_sizes(cfg.m));
    w.meta("test_points", std::to_string(cfg.test_points));
    w.meta("jitter", cfg.epsilon);
    w.header({"m", "rep", "method", "error"});
    for (const auto& c : r.cells) {
        w.row({std::to_string(c.m), std::to_string(c.rep), c.method, format_number(c.error)});
    }
}

void write_fig3(const ExperimentConfig& cfg, const Fig3Result& r, std::ostream& os) {
    CsvWriter w(os);
    common_meta(w, cfg);
    w.meta("lambda", cfg.lambda);
    w.meta("n", std::to_string(cfg.n));
    w.header({"method", "param", "empirical", "theoretical"});
    for (const auto& p : r.profiles) {
        for (const auto& rec : p.records) {
            w.row({p.method, format_number(rec.param), format_number(rec.empirical), format_number(rec.theoretical)});
        }
    }
}

int kernel_eval(const ExperimentConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    const KernelSpec spec = cfg.spec();
    const auto d = static_cast<Eigen::Index>(cfg.dim);
    CsvWriter w(out);
    common_meta(w, cfg);
    w.header({"line", "k"});
    std::string line;
    std::size_t lineno = 0;
    bool failed = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        std::vector<double> vals;
        std::string tok;
        bool bad = false;
        while (ss >> tok) {
            try {
                std::size_t used = 0;
                const double v = std::stod(tok, &used);
                if (used != tok.size()) bad = true;
                vals.push_back(v);
            } catch (const std::exception&) {
                bad = true;
            }
        }
        if (bad || static_cast<Eigen::Index>(vals.size()) != 2 * d) {
            err << "line " << lineno << ": expected " << 2 * d << " real numbers, got '" << line << "'\n";
            failed = true;
            continue;
        }
        const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(vals.data(), d);
        const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(vals.data() + d, d);
        try {
            if (!in_ball(x, spec.radius) || !in_ball(y, spec.radius)) {
                err << "line " << lineno << ": warning: point outside the ball, evaluated formally\n";
            }
            w.row({std::to_string(lineno), format_number(kernel_value(cfg.kernel, x, y, spec))});
        } catch (const Error& e) {
            err << "line " << lineno << ": " << e.what() << '\n';
            failed = true;
        }
    }
    return failed ? 1 : 0;
}

void feature_sample(const ExperimentConfig& cfg, std::ostream& os) {
    const KernelSpec spec = cfg.spec();
    const auto ens = sample_ensemble(cfg.kind, spec, cfg.m.front(), cfg.seed);
    CsvWriter w(os);
    common_meta(w, cfg);
    w.meta("kind", method_name(cfg.kind));
    w.meta("m", std::to_string(cfg.m.front()));
    std::vector<std::string> head{"index", cfg.kind == FeatureKind::nn ? "bias" : "tau"};
    for (std::size_t k = 0; k < cfg.dim; ++k) head.push_back("w" + std::to_string(k + 1));
    w.header(head);
    for (std::size_t j = 0; j < ens.m(); ++j) {
        const bool nn = cfg.kind == FeatureKind::nn;
        const Eigen::VectorXd& dir = nn ? ens.nn_params[j].direction : ens.frequencies[j].direction;
        std::vector<std::string> cells{std::to_string(j),
                                       format_number(nn ? ens.nn_params[j].bias : ens.frequencies[j].tau)};
        for (Eigen::Index k = 0; k < dir.size(); ++k) cells.push_back(format_number(dir(k)));
        w.row(cells);
    }
}

std::string gnuplot_script(const ExperimentConfig& cfg, const std::string& csv_path) {
    std::ostringstream s;
    s << "set datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\n";
    const std::string src = "'" + csv_path + "'";
    switch (cfg.experiment) {
        case Experiment::fig1:
            s << "set xlabel 'x'\nset ylabel 'f(x)'\n"
              << "plot " << src << " using ($1==0 && strcol(2) eq 'exact' ? $3 : NaN):4 with lines title 'exact', \\\n"
              << "     " << src << " using (strcol(2) eq 'nn' ? $3 : NaN):4 with lines title 'nn', \\\n"
              << "     " << src << " using (strcol(2) eq 'fourier' ? $3 : NaN):4 with lines title 'fourier'\n";
            break;
        case Experiment::fig2:
            s << "set logscale xy\nset xlabel 'm'\nset ylabel 'error'\n"
              << "plot " << src << " using (strcol(3) eq 'nn' ? $1 : NaN):4 with points title 'nn', \\\n"
              << "     " << src << " using (strcol(3) eq 'fourier' ? $1 : NaN):4 with points title 'fourier'\n";
            break;
        case Experiment::fig3:
            s << "set xlabel 'parameter'\nset ylabel 'leverage'\n"
              << "plot " << src << " using (strcol(1) eq 'nn' ? $2 : NaN):3 with points title 'nn empirical', \\\n"
              << "     " << src << " using (strcol(1) eq 'nn' ? $2 : NaN):4 with lines title 'nn theoretical', \\\n"
              << "     " << src << " using (strcol(1) eq 'fourier_cos' ? $2 : NaN):3 with points title 'cos empirical', \\\n"
              << "     " << src << " using (strcol(1) eq 'fourier_cos' ? $2 : NaN):4 with lines title 'cos theoretical'\n";
            break;
        case Experiment::kernel_eval:
            s << "plot " << src << " using 1:2 with points title 'k'\n";
            break;
        case Experiment::feature_sample:
            s << "plot " << src << " using 1:2 with points title 'parameter'\n";
            break;
    }
    return s.str();
}

int run_experiment(const ExperimentConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    cfg.validate();
    std::ofstream file;
    std::ostream* os = &out;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) {
            err << "cannot open output file '" << cfg.out << "'\n";
            return 2;
        }
        os = &file;
    }
    int code = 0;
    switch (cfg.experiment) {
        case Experiment::fig1:
            write_fig1(cfg, compute_fig1(cfg), *os);
            break;
        case Experiment::fig2:
            write_fig2(cfg, compute_fig2(cfg), *os);
            break;
        case Experiment::fig3:
            write_fig3(cfg, compute_fig3(cfg), *os);
            break;
        case Experiment::kernel_eval:
            code = kernel_eval(cfg, in, *os, err);
            break;
        case Experiment::feature_sample:
            feature_sample(cfg, *os);
            break;
    }
    os->flush();
    if (!*os) {
        err << "write failed for '" << (cfg.out.empty() ? std::string("<stdout>") : cfg.out) << "'\n";
        return 2;
    }
    if (!cfg.gnuplot.empty()) {
        std::ofstream g(cfg.gnuplot, std::ios::binary);
        g << gnuplot_script(cfg, cfg.out.empty() ? std::string("data.csv") : cfg.out);
        if (!g) {
            err << "cannot write gnuplot script '" << cfg.gnuplot << "'\n";
            return 2;
        }
    }
    return code;
}

}  // namespace nspline
