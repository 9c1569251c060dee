#include "banditlab/optimizer.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "banditlab/kernels.hpp"

namespace banditlab {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

struct Pair {
    std::vector<double> s;  // x_{k+1} - x_k
    std::vector<double> y;  // g_{k+1} - g_k
    double rho;             // 1 / (y's)
};

// two-loop recursion on the ascent problem: direction d approximates H g
std::vector<double> lbfgs_direction(const std::deque<Pair>& history,
                                    const std::vector<double>& grad) {
    std::vector<double> q = grad;
    const std::size_t n = q.size();
    std::vector<double> alpha(history.size());
    for (std::size_t i = history.size(); i-- > 0;) {
        const Pair& p = history[i];
        alpha[i] = p.rho * kernels::dot(p.s.data(), q.data(), n);
        kernels::axpy(-alpha[i], p.y.data(), q.data(), n);
    }
    if (!history.empty()) {
        const Pair& last = history.back();
        const double yy = kernels::dot(last.y.data(), last.y.data(), n);
        if (yy > 0.0)
            kernels::scale(q.data(), kernels::dot(last.s.data(), last.y.data(), n) / yy,
                           n);
    }
    for (std::size_t i = 0; i < history.size(); ++i) {
        const Pair& p = history[i];
        const double b = p.rho * kernels::dot(p.y.data(), q.data(), n);
        kernels::axpy(alpha[i] - b, p.s.data(), q.data(), n);
    }
    return q;
}

}  // namespace

FitResult optimize(const ObjectiveFn& objective, ParamVector beta0,
                   const FitOptions& opts) {
    if (!(opts.grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be > 0");
    if (opts.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

    constexpr std::size_t kHistory = 8;
    constexpr double kArmijo = 1e-4;
    constexpr int kMaxBacktracks = 60;

    std::vector<double> x = std::move(beta0.beta);
    const std::size_t n = x.size();
    const int k_items = beta0.num_items;

    std::vector<double> grad(n), trial(n), trial_grad(n);
    double f = objective(x, grad);
    if (!std::isfinite(f) || !all_finite(grad))
        throw std::runtime_error("non-finite objective or gradient at iteration 0");

    std::deque<Pair> history;
    FitResult result;
    result.iterations = 0;

    double gnorm = inf_norm(grad);
    while (gnorm > opts.grad_tol && result.iterations < opts.max_iters) {
        ++result.iterations;
        std::vector<double> direction = lbfgs_direction(history, grad);
        double slope = kernels::dot(direction.data(), grad.data(), n);
        if (!(slope > 0.0)) {
            // not an ascent direction (can happen right after a reset or with
            // a degenerate curvature pair): fall back to steepest ascent
            direction = grad;
            slope = kernels::dot(grad.data(), grad.data(), n);
            history.clear();
        }

        double step = 1.0;
        double f_new = f;
        bool accepted = false;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            trial = x;
            kernels::axpy(step, direction.data(), trial.data(), n);
            f_new = objective(trial, trial_grad);
            if (!std::isfinite(f_new) || !all_finite(trial_grad))
                throw std::runtime_error(
                    "non-finite objective or gradient at iteration " +
                    std::to_string(result.iterations));
            if (f_new >= f + kArmijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no further progress at machine precision

        Pair pair;
        pair.s.resize(n);
        pair.y.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            pair.s[i] = trial[i] - x[i];
            pair.y[i] = trial_grad[i] - grad[i];
        }
        // for a maximization problem the curvature condition is y's < 0;
        // store the pair negated so the standard minimization recursion
        // applies (equivalently: track -g)
        for (double& v : pair.y) v = -v;
        const double ys = kernels::dot(pair.y.data(), pair.s.data(), n);
        if (ys > 1e-12 * std::sqrt(kernels::dot(pair.s.data(), pair.s.data(), n)) *
                     std::sqrt(kernels::dot(pair.y.data(), pair.y.data(), n))) {
            pair.rho = 1.0 / ys;
            history.push_back(std::move(pair));
            if (history.size() > kHistory) history.pop_front();
        }

        x.swap(trial);
        grad.swap(trial_grad);
        f = f_new;
        gnorm = inf_norm(grad);
    }

    result.beta = ParamVector{std::move(x), k_items};
    result.final_objective = f;
    result.final_grad_norm = gnorm;
    result.converged = gnorm <= opts.grad_tol;
    return result;
}

}  // namespace banditlab
