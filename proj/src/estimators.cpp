#include "banditlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "banditlab/feature_map.hpp"

namespace banditlab {

namespace {

double ips_value_impl(const LogDataset& data, const ParamVector& beta,
                      double cap) {
    if (data.empty()) throw std::invalid_argument("empty dataset");
    std::vector<double> probs(data.num_items);
    double total = 0.0;
    for (const BanditEvent& e : data.events) {
        if (!e.click) continue;
        if (!(e.propensity > 0.0))
            throw std::invalid_argument("nonpositive propensity");
        scores_into(e.context, beta, probs);
        softmax_inplace(probs);
        const double w = std::min(1.0 / e.propensity, cap);
        total += w * probs[e.action];
    }
    return total / static_cast<double>(data.size());
}

}  // namespace

double ips_value(const LogDataset& data, const ParamVector& beta) {
    return ips_value_impl(data, beta, std::numeric_limits<double>::infinity());
}

double ips_value_clipped(const LogDataset& data, const ParamVector& beta,
                         double cap) {
    if (!(cap > 0.0)) throw std::invalid_argument("cap must be > 0");
    return ips_value_impl(data, beta, cap);
}

double jensen_lower_bound(const LogDataset& data, const ParamVector& beta) {
    if (data.empty()) throw std::invalid_argument("empty dataset");
    std::vector<double> log_probs(data.num_items);
    double weighted_log = 0.0;  // sum w c log pi
    double weight_total = 0.0;  // sum w c
    for (const BanditEvent& e : data.events) {
        if (!e.click) continue;
        if (!(e.propensity > 0.0))
            throw std::invalid_argument("nonpositive propensity");
        scores_into(e.context, beta, log_probs);
        log_softmax_inplace(log_probs);
        const double w = 1.0 / e.propensity;
        weighted_log += w * log_probs[e.action];
        weight_total += w;
    }
    if (weight_total <= 0.0)
        throw std::invalid_argument("no clicked events: bound undefined");
    return weighted_log / weight_total + std::log(weight_total);
}

CtrEstimate empirical_ctr(const LogDataset& data) {
    if (data.empty()) throw std::invalid_argument("empty dataset");
    double clicks = 0.0;
    for (const BanditEvent& e : data.events) clicks += e.click;
    CtrEstimate est;
    const double n = static_cast<double>(data.size());
    est.ctr = clicks / n;
    est.stderr_ = std::sqrt(est.ctr * (1.0 - est.ctr) / n);
    return est;
}

}  // namespace banditlab
