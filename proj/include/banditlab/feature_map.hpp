#pragma once

#include <span>
#include <vector>

#include "banditlab/types.hpp"

// The cross-product feature map phi(x, a) = x (x) a with one-of-n action
// coding, the per-action scores s_a = phi(x, a)' beta, the softmax policy
// built from them and the greedy decision rule. Shared by all trainers and
// by every evaluation path.

namespace banditlab {

// Dense K^2 feature vector: entry (i*K + j) is views[i] when j == action,
// else 0. Mostly useful for oracles; the score paths below never build it.
std::vector<double> kron_features(const Context& context, ActionId action);

// scores[a] = sum_i views[i] * beta[i*K + a], accumulated row-wise so each
// nonzero history item contributes one contiguous axpy over the K actions.
void scores_into(const Context& context, const ParamVector& beta,
                 std::span<double> out);
std::vector<double> scores(const Context& context, const ParamVector& beta);

// Score of a single action without touching the other columns.
double score_one(const Context& context, const ParamVector& beta,
                 ActionId action);

// Smallest index attaining the maximal score (deterministic tie-break).
ActionId greedy_action(const Context& context, const ParamVector& beta);
ActionId argmax_scores(std::span<const double> s);

// In-place transforms of a score vector. Both subtract the max first, so
// they are finite for any finite scores.
void softmax_inplace(std::span<double> s);
void log_softmax_inplace(std::span<double> s);

// pi(a | x) under beta; strictly positive, sums to 1 within 1e-12.
std::vector<double> softmax_policy(const Context& context,
                                   const ParamVector& beta);

}  // namespace banditlab
