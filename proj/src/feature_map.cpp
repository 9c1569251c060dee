#include "banditlab/feature_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "banditlab/kernels.hpp"

namespace banditlab {

std::vector<double> kron_features(const Context& context, ActionId action) {
    const int k = context.size();
    std::vector<double> phi(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i)
        phi[static_cast<std::size_t>(i) * k + action] = context.views[i];
    return phi;
}

void scores_into(const Context& context, const ParamVector& beta,
                 std::span<double> out) {
    const int k = beta.num_items;
    if (context.size() != k)
        throw std::invalid_argument("context length does not match num_items");
    if (out.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("score buffer has wrong length");
    std::fill(out.begin(), out.end(), 0.0);
    for (int i = 0; i < k; ++i) {
        const int v = context.views[i];
        if (v != 0) kernels::axpy(v, beta.row(i), out.data(), k);
    }
}

std::vector<double> scores(const Context& context, const ParamVector& beta) {
    std::vector<double> s(beta.num_items);
    scores_into(context, beta, s);
    return s;
}

double score_one(const Context& context, const ParamVector& beta,
                 ActionId action) {
    const int k = beta.num_items;
    double s = 0.0;
    for (int i = 0; i < k; ++i)
        if (context.views[i] != 0) s += context.views[i] * beta.at(i, action);
    return s;
}

ActionId argmax_scores(std::span<const double> s) {
    ActionId best = 0;
    for (std::size_t a = 1; a < s.size(); ++a)
        if (s[a] > s[best]) best = static_cast<ActionId>(a);
    return best;
}

ActionId greedy_action(const Context& context, const ParamVector& beta) {
    std::vector<double> s = scores(context, beta);
    return argmax_scores(s);
}

void softmax_inplace(std::span<double> s) {
    const double m = kernels::max(s.data(), s.size());
    for (double& v : s) v = std::exp(v - m);
    const double total = kernels::sum(s.data(), s.size());
    kernels::scale(s.data(), 1.0 / total, s.size());
}

void log_softmax_inplace(std::span<double> s) {
    const double m = kernels::max(s.data(), s.size());
    double total = 0.0;
    for (double v : s) total += std::exp(v - m);
    const double lse = m + std::log(total);
    for (double& v : s) v -= lse;
}

std::vector<double> softmax_policy(const Context& context,
                                   const ParamVector& beta) {
    std::vector<double> s = scores(context, beta);
    softmax_inplace(s);
    return s;
}

}  // namespace banditlab
