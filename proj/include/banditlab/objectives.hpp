#pragma once

#include <optional>
#include <span>
#include <vector>

#include "banditlab/types.hpp"

// The four training objectives, each returned with its analytic gradient.
// All are concave in beta and written to be maximized:
//
//   likelihood          sum_n  c_n log s(s_n) + (1-c_n) log(1 - s(s_n))
//   reweighted          the same with every term scaled by w_n = 1/propensity_n
//   contextual bandit   sum_n  w_n c_n log pi_beta(a_n | x_n)
//   bayes MAP           likelihood - 1/2 (beta - mu 1)' Sigma^-1 (beta - mu 1)
//
// where s_n = phi(x_n, a_n)' beta and Sigma = (aI + bJ) (x) (aI + bJ) is the
// structured prior covariance. Log-sigmoid and log-sum-exp terms are
// computed in stabilized form; nothing here overflows for |s_n| up to 700.

namespace banditlab {

// Gaussian prior beta ~ N(mu 1, (aI + bJ) (x) (aI + bJ)) with J the all-ones
// K x K matrix. The covariance takes exactly three values: (a+b)^2 on the
// diagonal, (a+b)b when the two coefficients share a history item or an
// action, b^2 otherwise.
struct PriorSpec {
    double mu = -6.0;
    double a = 0.01;
    double b = 0.01;
    int num_items = 0;

    void validate() const;  // throws unless a > 0, b >= 0, num_items >= 1
};

// out = Sigma^-1 v without materializing the K^2 x K^2 matrix, using
// Sigma^-1 = M^-1 (x) M^-1 with M = aI + bJ and
// M^-1 = (1/a) (I - b/(a + K b) J). O(K^2) time, O(K) extra space.
void prior_precision_apply(const PriorSpec& prior, std::span<const double> v,
                           std::span<double> out);

// Options shared by the trainers. weight_cap, when set, caps w_n for the
// reweighted and contextual bandit objectives. l2_floor adds an optional
// tiny ridge -l2_floor/2 |beta|^2 to the three point estimators.
struct FitOptions {
    double grad_tol = 1e-6;  // infinity norm of the gradient
    int max_iters = 10000;
    double l2_floor = 0.0;
    std::optional<double> weight_cap;
};

// Each returns the objective value and fills `grad` (resized to K^2).
double obj_grad_likelihood(const ParamVector& beta, const LogDataset& data,
                           std::vector<double>& grad);

double obj_grad_reweighted(const ParamVector& beta, const LogDataset& data,
                           const FitOptions& opts, std::vector<double>& grad);

// Only clicked events contribute. Throws when the dataset has none (the
// objective would be constant in beta).
double obj_grad_contextual_bandit(const ParamVector& beta,
                                  const LogDataset& data,
                                  const FitOptions& opts,
                                  std::vector<double>& grad);

// Defined for empty data (pure prior, maximized at beta = mu 1).
double obj_grad_bayes_map(const ParamVector& beta, const LogDataset& data,
                          const PriorSpec& prior, std::vector<double>& grad);

}  // namespace banditlab
