#pragma once

#include <optional>
#include <string_view>

#include "banditlab/objectives.hpp"
#include "banditlab/optimizer.hpp"

// Dispatch from a method name to the matching objective wired into the
// optimizer. Point estimators start from beta = 0; the MAP trainer starts
// from the prior mode mu 1. Concavity makes the optimum independent of the
// start; these are just cheap deterministic choices.

namespace banditlab {

enum class Method { MaxLikelihood, Reweighted, ContextualBandit, BayesMap };

// CLI / CSV names: "mle" | "reweighted" | "cb" | "bayes-map"
Method method_from_name(std::string_view name);
std::string_view method_name(Method method);

// `prior` is required for BayesMap and ignored otherwise.
FitResult fit(Method method, const LogDataset& data,
              const std::optional<PriorSpec>& prior, const FitOptions& opts);

}  // namespace banditlab
