#include "banditlab/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "banditlab/feature_map.hpp"

namespace banditlab {

std::vector<double> popularity_probs(const Context& context) {
    const int k = context.size();
    const double total = static_cast<double>(context.total_views());
    std::vector<double> p(k);
    if (total <= 0.0) {
        std::fill(p.begin(), p.end(), 1.0 / k);
        return p;
    }
    for (int a = 0; a < k; ++a) p[a] = context.views[a] / total;
    return p;
}

std::vector<double> inverse_popularity_probs(const Context& context) {
    const int k = context.size();
    if (k < 2)
        throw std::invalid_argument(
            "inverse popularity needs at least 2 items (denominator is K-1)");
    std::vector<double> p = popularity_probs(context);
    // sum of (1 - pi_pop) is exactly K - 1
    const double denom = k - 1.0;
    for (double& v : p) v = (1.0 - v) / denom;
    return p;
}

std::vector<double> uniform_probs(int num_items) {
    if (num_items < 1) throw std::invalid_argument("num_items must be >= 1");
    return std::vector<double>(num_items, 1.0 / num_items);
}

std::pair<ActionId, double> sample_action(std::span<const double> probs,
                                          Rng& rng) {
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("probabilities sum to " +
                                    std::to_string(total) + ", expected 1");

    const double u = rng.uniform() * total;
    double acc = 0.0;
    int last_positive = -1;
    for (std::size_t a = 0; a < probs.size(); ++a) {
        if (probs[a] <= 0.0) continue;
        acc += probs[a];
        last_positive = static_cast<int>(a);
        if (u < acc) return {last_positive, probs[a]};
    }
    // floating point shortfall at the top of the CDF; fall back to the last
    // action with positive probability
    if (last_positive < 0) throw std::invalid_argument("all probabilities zero");
    return {last_positive, probs[last_positive]};
}

PolicyFn make_logging_policy(std::string_view name, int num_items) {
    if (name == "popularity")
        return [](const Context& c) { return popularity_probs(c); };
    if (name == "inverse-popularity")
        return [](const Context& c) { return inverse_popularity_probs(c); };
    if (name == "uniform") {
        std::vector<double> u = uniform_probs(num_items);
        return [u](const Context&) { return u; };
    }
    throw std::invalid_argument("unknown logging policy: " + std::string(name));
}

PolicyFn make_softmax_policy(ParamVector beta) {
    return [beta = std::move(beta)](const Context& c) {
        return softmax_policy(c, beta);
    };
}

PolicyFn make_greedy_policy(ParamVector beta) {
    return [beta = std::move(beta)](const Context& c) {
        std::vector<double> p(beta.num_items, 0.0);
        p[greedy_action(c, beta)] = 1.0;
        return p;
    };
}

}  // namespace banditlab
