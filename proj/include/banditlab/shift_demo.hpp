#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Covariate-shift demonstration: a straight line fit to sin(pi x) from
// samples concentrated at low x, with and without importance weights toward
// the uniform target density. The weighted fit trades error where the data
// is for error where the evaluation is.

namespace banditlab {

struct ShiftDemoConfig {
    int n_samples = 200;
    double noise_sd = 0.05;
    std::uint64_t seed = 0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;

    double operator()(double x) const { return slope * x + intercept; }
};

// Minimizes sum_i w_i (y_i - (slope x_i + intercept))^2 via the normal
// equations. Requires at least two distinct x with positive weight.
LinearFit weighted_least_squares(std::span<const double> xs,
                                 std::span<const double> ys,
                                 std::span<const double> ws);

double shift_true_fn(double x);    // sin(pi x)
double shift_source_pdf(double x); // 0.9 Beta(2,5) + 0.1 Uniform on [0,1]

struct ShiftDemoReport {
    double mse_source_unweighted = 0.0;
    double mse_target_unweighted = 0.0;
    double mse_target_weighted = 0.0;
    LinearFit unweighted;
    LinearFit weighted;
    std::vector<double> xs, ys;  // the noisy sample, for plotting
};

ShiftDemoReport run_shift_demo(const ShiftDemoConfig& config);

void write_shift_demo_csv(const ShiftDemoReport& report, const std::string& path);
void write_shift_demo_svg(const ShiftDemoReport& report, const std::string& path);

}  // namespace banditlab
