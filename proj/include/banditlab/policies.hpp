#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "banditlab/rng.hpp"
#include "banditlab/types.hpp"

// Behavior policies that generate logs. A policy is a map from context to a
// probability vector over the catalogue; the simulator samples actions from
// it and records the exact analytic probability as the propensity.

namespace banditlab {

// pi_pop(a|x) = x_a / sum_i x_i. A user with no history gets the uniform
// fallback (the formula is 0/0 there); this keeps propensities positive.
// Note that items with zero views get probability zero, so this policy does
// not have full support.
std::vector<double> popularity_probs(const Context& context);

// pi_inv(a|x) = (1 - pi_pop(a|x)) / (K - 1). Throws for K == 1.
std::vector<double> inverse_popularity_probs(const Context& context);

std::vector<double> uniform_probs(int num_items);

// Samples an index from `probs` and returns it with its probability. Zero
// probability actions are never returned. Throws on a negative entry or if
// the vector does not sum to 1 within 1e-9.
std::pair<ActionId, double> sample_action(std::span<const double> probs,
                                          Rng& rng);

using PolicyFn = std::function<std::vector<double>(const Context&)>;

// CLI names: "popularity" | "inverse-popularity" | "uniform". Throws on an
// unknown name.
PolicyFn make_logging_policy(std::string_view name, int num_items);

PolicyFn make_softmax_policy(ParamVector beta);
PolicyFn make_greedy_policy(ParamVector beta);  // point mass on the argmax

}  // namespace banditlab
