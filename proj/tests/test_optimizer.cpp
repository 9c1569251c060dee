#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "banditlab/optimizer.hpp"
#include "test_util.hpp"

using namespace banditlab;

namespace {

// -1/2 |x - t|^2, maximized at t
ObjectiveFn quadratic(std::vector<double> target) {
    return [target = std::move(target)](const std::vector<double>& x,
                                        std::vector<double>& g) {
        g.resize(x.size());
        double obj = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = x[i] - target[i];
            obj -= 0.5 * r * r;
            g[i] = -r;
        }
        return obj;
    };
}

}  // namespace

TEST_CASE("optimize reaches a known quadratic optimum") {
    std::mt19937 gen(1);
    std::normal_distribution<double> dist(0.0, 2.0);
    std::vector<double> target(9);
    for (double& t : target) t = dist(gen);

    FitOptions opts;
    const FitResult result = optimize(quadratic(target), ParamVector::zeros(3), opts);
    CHECK(result.converged);
    CHECK(result.final_grad_norm <= opts.grad_tol);
    for (std::size_t i = 0; i < target.size(); ++i)
        CHECK(result.beta.beta[i] == doctest::Approx(target[i]).epsilon(1e-6));
}

TEST_CASE("objective is monotone in the iteration budget") {
    std::mt19937 gen(2);
    const LogDataset data = testutil::random_dataset(gen, 3, 30);
    const ObjectiveFn fn = [&](const std::vector<double>& x,
                               std::vector<double>& g) {
        return obj_grad_likelihood(ParamVector{x, 3}, data, g);
    };
    double last = -1e300;
    for (int budget = 1; budget <= 24; ++budget) {
        FitOptions opts;
        opts.max_iters = budget;
        opts.grad_tol = 1e-12;
        const FitResult r = optimize(fn, ParamVector::zeros(3), opts);
        CHECK(r.final_objective >= last - 1e-12);
        last = r.final_objective;
    }
}

TEST_CASE("perfectly separable MLE runs out of budget, not to convergence") {
    // one always-clicked event: the supremum (objective 0) sits at infinite
    // scores, so with a tiny tolerance the optimizer must exhaust max_iters
    LogDataset data;
    data.num_items = 2;
    BanditEvent e;
    e.context.views = {1, 0};
    e.action = 0;
    e.click = 1;
    e.propensity = 1.0;
    data.events.push_back(e);

    FitOptions opts;
    opts.max_iters = 8;
    opts.grad_tol = 1e-16;
    const FitResult r = optimize(
        [&](const std::vector<double>& x, std::vector<double>& g) {
            return obj_grad_likelihood(ParamVector{x, 2}, data, g);
        },
        ParamVector::zeros(2), opts);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == opts.max_iters);
    CHECK(r.final_objective < 0.0);  // supremum 0 never attained
}

TEST_CASE("bayes MAP on empty data returns the prior mode") {
    LogDataset data;
    data.num_items = 4;
    const PriorSpec prior{-6.0, 0.01, 0.01, 4};
    const FitResult r = optimize(
        [&](const std::vector<double>& x, std::vector<double>& g) {
            return obj_grad_bayes_map(ParamVector{x, 4}, data, prior, g);
        },
        ParamVector::zeros(4), FitOptions{});
    CHECK(r.converged);
    for (double v : r.beta.beta) CHECK(v == doctest::Approx(-6.0).epsilon(1e-6));
}

TEST_CASE("optimize is deterministic") {
    std::mt19937 gen(3);
    const LogDataset data = testutil::random_dataset(gen, 4, 40);
    const ObjectiveFn fn = [&](const std::vector<double>& x,
                               std::vector<double>& g) {
        return obj_grad_likelihood(ParamVector{x, 4}, data, g);
    };
    const FitResult a = optimize(fn, ParamVector::zeros(4), FitOptions{});
    const FitResult b = optimize(fn, ParamVector::zeros(4), FitOptions{});
    CHECK(a.iterations == b.iterations);
    CHECK(a.final_objective == b.final_objective);
    CHECK(a.beta.beta == b.beta.beta);  // bitwise
}

TEST_CASE("non-finite evaluations are reported with the iteration index") {
    const ObjectiveFn bad = [](const std::vector<double>& x,
                               std::vector<double>& g) {
        g.assign(x.size(), 1.0);
        return x[0] > 0.5 ? std::nan("") : x[0];
    };
    CHECK_THROWS_AS(optimize(bad, ParamVector::zeros(1), FitOptions{}),
                    std::runtime_error);

    const ObjectiveFn bad_at_start = [](const std::vector<double>& x,
                                        std::vector<double>& g) {
        g.assign(x.size(), 0.0);
        return std::numeric_limits<double>::infinity();
    };
    CHECK_THROWS_WITH(optimize(bad_at_start, ParamVector::zeros(1), FitOptions{}),
                      "non-finite objective or gradient at iteration 0");
}

TEST_CASE("fit options are validated") {
    CHECK_THROWS(optimize(quadratic({0.0}), ParamVector::zeros(1),
                          FitOptions{.grad_tol = 0.0}));
    CHECK_THROWS(optimize(quadratic({0.0}), ParamVector::zeros(1),
                          FitOptions{.grad_tol = 1e-6, .max_iters = 0}));
}
