#include "banditlab/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "banditlab/feature_map.hpp"
#include "banditlab/kernels.hpp"

namespace banditlab {

namespace {

// log sigma(t) = min(t, 0) - log1p(exp(-|t|)); finite for all finite t
double log_sigmoid(double t) {
    return std::min(t, 0.0) - std::log1p(std::exp(-std::abs(t)));
}

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double event_weight(const BanditEvent& e, const FitOptions& opts) {
    double w = 1.0 / e.propensity;
    if (opts.weight_cap && w > *opts.weight_cap) w = *opts.weight_cap;
    return w;
}

void check_dims(const ParamVector& beta, const LogDataset& data) {
    if (beta.num_items != data.num_items)
        throw std::invalid_argument("beta size does not match dataset");
    if (beta.beta.size() !=
        static_cast<std::size_t>(data.num_items) * data.num_items)
        throw std::invalid_argument("beta has wrong length");
}

// shared body of the likelihood and reweighted objectives
double weighted_bernoulli_obj_grad(const ParamVector& beta,
                                   const LogDataset& data, bool reweight,
                                   const FitOptions& opts,
                                   std::vector<double>& grad) {
    check_dims(beta, data);
    if (data.empty()) throw std::invalid_argument("empty dataset");
    const int k = data.num_items;
    grad.assign(static_cast<std::size_t>(k) * k, 0.0);

    double objective = 0.0;
    for (const BanditEvent& e : data.events) {
        const double w = reweight ? event_weight(e, opts) : 1.0;
        const double s = score_one(e.context, beta, e.action);
        objective += w * (e.click ? log_sigmoid(s) : log_sigmoid(-s));
        const double coef = w * (e.click - sigmoid(s));
        for (int i = 0; i < k; ++i)
            if (e.context.views[i] != 0)
                grad[static_cast<std::size_t>(i) * k + e.action] +=
                    coef * e.context.views[i];
    }

    if (opts.l2_floor > 0.0) {
        objective -= 0.5 * opts.l2_floor *
                     kernels::dot(beta.beta.data(), beta.beta.data(), beta.beta.size());
        kernels::axpy(-opts.l2_floor, beta.beta.data(), grad.data(), grad.size());
    }
    return objective;
}

}  // namespace

double obj_grad_likelihood(const ParamVector& beta, const LogDataset& data,
                           std::vector<double>& grad) {
    return weighted_bernoulli_obj_grad(beta, data, /*reweight=*/false,
                                       FitOptions{}, grad);
}

double obj_grad_reweighted(const ParamVector& beta, const LogDataset& data,
                           const FitOptions& opts, std::vector<double>& grad) {
    FitOptions weighted = opts;
    return weighted_bernoulli_obj_grad(beta, data, /*reweight=*/true, weighted,
                                       grad);
}

double obj_grad_contextual_bandit(const ParamVector& beta,
                                  const LogDataset& data,
                                  const FitOptions& opts,
                                  std::vector<double>& grad) {
    check_dims(beta, data);
    if (data.empty()) throw std::invalid_argument("empty dataset");
    bool any_click = false;
    for (const BanditEvent& e : data.events)
        if (e.click) { any_click = true; break; }
    if (!any_click)
        throw std::invalid_argument(
            "objective constant in beta: dataset has no clicked events");

    const int k = data.num_items;
    grad.assign(static_cast<std::size_t>(k) * k, 0.0);

    double objective = 0.0;
    std::vector<double> probs(k);
    for (const BanditEvent& e : data.events) {
        if (!e.click) continue;
        const double w = event_weight(e, opts);
        scores_into(e.context, beta, probs);
        const double s_taken = probs[e.action];
        const double m = kernels::max(probs.data(), k);
        for (double& p : probs) p = std::exp(p - m);
        const double z = kernels::sum(probs.data(), k);
        const double lse = m + std::log(z);
        kernels::scale(probs.data(), 1.0 / z, k);

        objective += w * (s_taken - lse);
        // grad += w (phi(x, a_n) - sum_a pi_a phi(x, a)); phi rows are
        // views[i] * e_a, so row i of the gradient gets w*views[i]*(e_an - pi)
        for (int i = 0; i < k; ++i) {
            const int v = e.context.views[i];
            if (v == 0) continue;
            double* grow = grad.data() + static_cast<std::size_t>(i) * k;
            kernels::axpy(-w * v, probs.data(), grow, k);
            grow[e.action] += w * v;
        }
    }

    if (opts.l2_floor > 0.0) {
        objective -= 0.5 * opts.l2_floor *
                     kernels::dot(beta.beta.data(), beta.beta.data(), beta.beta.size());
        kernels::axpy(-opts.l2_floor, beta.beta.data(), grad.data(), grad.size());
    }
    return objective;
}

void PriorSpec::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("prior requires a > 0");
    if (b < 0.0) throw std::invalid_argument("prior requires b >= 0");
    if (num_items < 1) throw std::invalid_argument("prior requires num_items >= 1");
}

void prior_precision_apply(const PriorSpec& prior, std::span<const double> v,
                           std::span<double> out) {
    prior.validate();
    const int k = prior.num_items;
    const std::size_t kk = static_cast<std::size_t>(k) * k;
    if (v.size() != kk || out.size() != kk)
        throw std::invalid_argument("vector length must be K^2");

    // M^-1 u = (1/a) (u - c (sum u) 1) with c = b / (a + K b)
    const double c = prior.b / (prior.a + k * prior.b);
    const double inv_a = 1.0 / prior.a;

    // rows: out[i,:] = M^-1 v[i,:]
    for (int i = 0; i < k; ++i) {
        const double* src = v.data() + static_cast<std::size_t>(i) * k;
        double* dst = out.data() + static_cast<std::size_t>(i) * k;
        const double row_sum = kernels::sum(src, k);
        for (int j = 0; j < k; ++j) dst[j] = inv_a * (src[j] - c * row_sum);
    }
    // columns: out[:,j] = M^-1 out[:,j]
    std::vector<double> col_sum(k, 0.0);
    for (int i = 0; i < k; ++i)
        kernels::axpy(1.0, out.data() + static_cast<std::size_t>(i) * k,
                      col_sum.data(), k);
    for (int i = 0; i < k; ++i) {
        double* row = out.data() + static_cast<std::size_t>(i) * k;
        for (int j = 0; j < k; ++j) row[j] = inv_a * (row[j] - c * col_sum[j]);
    }
}

double obj_grad_bayes_map(const ParamVector& beta, const LogDataset& data,
                          const PriorSpec& prior, std::vector<double>& grad) {
    prior.validate();
    if (beta.num_items != prior.num_items)
        throw std::invalid_argument("beta size does not match prior");
    const int k = prior.num_items;
    const std::size_t kk = static_cast<std::size_t>(k) * k;

    double objective = 0.0;
    if (!data.empty()) {
        objective = obj_grad_likelihood(beta, data, grad);
    } else {
        grad.assign(kk, 0.0);
    }

    std::vector<double> residual(kk);
    for (std::size_t i = 0; i < kk; ++i) residual[i] = beta.beta[i] - prior.mu;
    std::vector<double> precision_residual(kk);
    prior_precision_apply(prior, residual, precision_residual);

    objective -= 0.5 * kernels::dot(residual.data(), precision_residual.data(), kk);
    kernels::axpy(-1.0, precision_residual.data(), grad.data(), kk);
    return objective;
}

}  // namespace banditlab
