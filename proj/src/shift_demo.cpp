#include "banditlab/shift_demo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "banditlab/rng.hpp"
#include "banditlab/svg.hpp"

namespace banditlab {

LinearFit weighted_least_squares(std::span<const double> xs,
                                 std::span<const double> ys,
                                 std::span<const double> ws) {
    if (xs.size() != ys.size() || xs.size() != ws.size())
        throw std::invalid_argument("xs, ys, ws must have equal length");

    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double w = ws[i];
        if (w < 0.0) throw std::invalid_argument("negative weight");
        sw += w;
        swx += w * xs[i];
        swy += w * ys[i];
        swxx += w * xs[i] * xs[i];
        swxy += w * xs[i] * ys[i];
    }
    if (sw <= 0.0) throw std::invalid_argument("no positive weights");
    const double det = sw * swxx - swx * swx;
    // det == 0 iff all positively weighted xs coincide
    if (!(det > 0.0) || det < 1e-12 * sw * swxx)
        throw std::invalid_argument("degenerate design: weighted xs are identical");

    LinearFit fit;
    fit.slope = (sw * swxy - swx * swy) / det;
    fit.intercept = (swy - fit.slope * swx) / sw;
    return fit;
}

double shift_true_fn(double x) { return std::sin(M_PI * x); }

double shift_source_pdf(double x) {
    // Beta(2,5) density is 30 x (1-x)^4; the uniform component keeps the
    // density strictly positive on [0,1] so importance weights stay finite
    const double q = 1.0 - x;
    return 0.9 * 30.0 * x * q * q * q * q + 0.1;
}

namespace {

// Beta(2,5) variate as the 2nd smallest of 6 uniforms
double sample_beta25(Rng& rng) {
    std::array<double, 6> u;
    for (double& v : u) v = rng.uniform();
    std::sort(u.begin(), u.end());
    return u[1];
}

double sample_source(Rng& rng) {
    if (rng.uniform() < 0.1) return rng.uniform();
    return sample_beta25(rng);
}

double grid_mse(const LinearFit& fit, const std::vector<double>& grid,
                const std::vector<double>& point_weights) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = fit(grid[i]) - shift_true_fn(grid[i]);
        num += point_weights[i] * r * r;
        den += point_weights[i];
    }
    return num / den;
}

}  // namespace

ShiftDemoReport run_shift_demo(const ShiftDemoConfig& config) {
    if (config.n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
    Rng rng(mix_seed(config.seed, 0, /*tag=*/0x7368696674ULL));

    ShiftDemoReport report;
    report.xs.resize(config.n_samples);
    report.ys.resize(config.n_samples);
    std::vector<double> unit(config.n_samples, 1.0);
    std::vector<double> ips(config.n_samples);
    for (int i = 0; i < config.n_samples; ++i) {
        const double x = sample_source(rng);
        report.xs[i] = x;
        report.ys[i] = shift_true_fn(x) + config.noise_sd * rng.normal();
        ips[i] = 1.0 / shift_source_pdf(x);  // target density is uniform 1
    }

    report.unweighted = weighted_least_squares(report.xs, report.ys, unit);
    report.weighted = weighted_least_squares(report.xs, report.ys, ips);

    // noise-free evaluation grid over the target domain
    const int grid_n = 1000;
    std::vector<double> grid(grid_n), uniform_w(grid_n, 1.0), source_w(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        grid[i] = (i + 0.5) / grid_n;
        source_w[i] = shift_source_pdf(grid[i]);
    }
    report.mse_target_unweighted = grid_mse(report.unweighted, grid, uniform_w);
    report.mse_target_weighted = grid_mse(report.weighted, grid, uniform_w);
    report.mse_source_unweighted = grid_mse(report.unweighted, grid, source_w);
    return report;
}

void write_shift_demo_csv(const ShiftDemoReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g\n",
                  report.mse_source_unweighted, report.mse_target_unweighted,
                  report.mse_target_weighted);
    out << "mse_source_unweighted,mse_target_unweighted,mse_target_weighted\n"
        << buf;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_shift_demo_svg(const ShiftDemoReport& report, const std::string& path) {
    const double w = 640, h = 420, ml = 60, mr = 20, mt = 30, mb = 45;
    double y_lo = -0.4, y_hi = 1.3;
    for (double y : report.ys) {
        y_lo = std::min(y_lo, y - 0.05);
        y_hi = std::max(y_hi, y + 0.05);
    }
    auto sx = [&](double x) { return ml + x * (w - ml - mr); };
    auto sy = [&](double y) { return mt + (y_hi - y) / (y_hi - y_lo) * (h - mt - mb); };

    SvgWriter svg(w, h);
    svg.open_group();
    svg.text(ml, 20, "linear fit of sin(pi x), source-skewed sample",
             "font-family:sans-serif;font-size:14px;font-weight:bold");
    svg.line(sx(0), sy(y_lo), sx(1), sy(y_lo), "stroke:#333;stroke-width:1");
    svg.line(sx(0), sy(y_lo), sx(0), sy(y_hi), "stroke:#333;stroke-width:1");
    for (int t = 0; t <= 5; ++t) {
        const double x = t / 5.0;
        svg.line(sx(x), sy(y_lo), sx(x), sy(y_lo) + 4, "stroke:#333;stroke-width:1");
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.1f", x);
        svg.text(sx(x) - 8, sy(y_lo) + 18, buf,
                 "font-family:sans-serif;font-size:11px");
    }

    for (std::size_t i = 0; i < report.xs.size(); ++i)
        svg.circle(sx(report.xs[i]), sy(report.ys[i]), 2.2,
                   "fill:#444;fill-opacity:0.45");

    std::vector<std::pair<double, double>> truth;
    for (int i = 0; i <= 200; ++i) {
        const double x = i / 200.0;
        truth.emplace_back(sx(x), sy(shift_true_fn(x)));
    }
    svg.polyline(truth, "stroke:#2ca02c;stroke-width:2");
    svg.line(sx(0), sy(report.unweighted(0.0)), sx(1), sy(report.unweighted(1.0)),
             "stroke:#1f77b4;stroke-width:2");
    svg.line(sx(0), sy(report.weighted(0.0)), sx(1), sy(report.weighted(1.0)),
             "stroke:#d62728;stroke-width:2;stroke-dasharray:6,3");

    const char* labels[3] = {"true function", "unweighted fit", "weighted fit"};
    const char* colors[3] = {"#2ca02c", "#1f77b4", "#d62728"};
    for (int i = 0; i < 3; ++i) {
        svg.line(sx(0.02), mt + 16 + 18 * i, sx(0.08), mt + 16 + 18 * i,
                 std::string("stroke:") + colors[i] + ";stroke-width:2");
        svg.text(sx(0.09), mt + 20 + 18 * i, labels[i],
                 "font-family:sans-serif;font-size:12px");
    }
    svg.close_group();
    svg.save(path);
}

}  // namespace banditlab
