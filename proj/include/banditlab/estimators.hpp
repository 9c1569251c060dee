#pragma once

#include "banditlab/types.hpp"

// Off-policy value estimation from logged bandit feedback. ips_value is the
// inverse-propensity estimate of the target policy's expected clicks per
// event; the clipped variant trades bias for variance. jensen_lower_bound is
// the tractable surrogate the contextual bandit trainer maximizes:
// by construction it never exceeds log(N * ips_value).

namespace banditlab {

// (1/N) sum_n c_n * pi_beta(a_n | x_n) / propensity_n
double ips_value(const LogDataset& data, const ParamVector& beta);

// as ips_value with min(1/propensity, cap) as the weight; cap > 0
double ips_value_clipped(const LogDataset& data, const ParamVector& beta,
                         double cap);

// [sum_n w_n c_n log pi_beta(a_n|x_n)] / [sum_n w_n c_n] + log(sum_n w_n c_n)
// Throws when no event is clicked.
double jensen_lower_bound(const LogDataset& data, const ParamVector& beta);

struct CtrEstimate {
    double ctr = 0.0;
    double stderr_ = 0.0;
};

CtrEstimate empirical_ctr(const LogDataset& data);

}  // namespace banditlab
