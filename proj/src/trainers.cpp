#include "banditlab/trainers.hpp"

#include <stdexcept>
#include <string>

namespace banditlab {

Method method_from_name(std::string_view name) {
    if (name == "mle") return Method::MaxLikelihood;
    if (name == "reweighted") return Method::Reweighted;
    if (name == "cb") return Method::ContextualBandit;
    if (name == "bayes-map") return Method::BayesMap;
    throw std::invalid_argument("unknown method: " + std::string(name));
}

std::string_view method_name(Method method) {
    switch (method) {
        case Method::MaxLikelihood: return "mle";
        case Method::Reweighted: return "reweighted";
        case Method::ContextualBandit: return "cb";
        case Method::BayesMap: return "bayes-map";
    }
    throw std::logic_error("unreachable");
}

FitResult fit(Method method, const LogDataset& data,
              const std::optional<PriorSpec>& prior, const FitOptions& opts) {
    const int k = data.num_items;

    auto wrap = [k](const std::vector<double>& x) {
        return ParamVector{x, k};
    };

    switch (method) {
        case Method::MaxLikelihood:
            return optimize(
                [&, wrap](const std::vector<double>& x, std::vector<double>& g) {
                    double obj = obj_grad_likelihood(wrap(x), data, g);
                    if (opts.l2_floor > 0.0) {
                        double sq = 0.0;
                        for (std::size_t i = 0; i < x.size(); ++i) {
                            sq += x[i] * x[i];
                            g[i] -= opts.l2_floor * x[i];
                        }
                        obj -= 0.5 * opts.l2_floor * sq;
                    }
                    return obj;
                },
                ParamVector::zeros(k), opts);
        case Method::Reweighted:
            return optimize(
                [&, wrap](const std::vector<double>& x, std::vector<double>& g) {
                    return obj_grad_reweighted(wrap(x), data, opts, g);
                },
                ParamVector::zeros(k), opts);
        case Method::ContextualBandit:
            return optimize(
                [&, wrap](const std::vector<double>& x, std::vector<double>& g) {
                    return obj_grad_contextual_bandit(wrap(x), data, opts, g);
                },
                ParamVector::zeros(k), opts);
        case Method::BayesMap: {
            if (!prior)
                throw std::invalid_argument("bayes-map requires a prior");
            PriorSpec p = *prior;
            if (p.num_items == 0) p.num_items = k;
            if (p.num_items != k)
                throw std::invalid_argument("prior num_items does not match data");
            return optimize(
                [&, wrap, p](const std::vector<double>& x, std::vector<double>& g) {
                    return obj_grad_bayes_map(wrap(x), data, p, g);
                },
                ParamVector::constant(k, p.mu), opts);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace banditlab
