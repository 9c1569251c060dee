#include "banditlab/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "banditlab/feature_map.hpp"
#include "banditlab/kernels.hpp"

namespace banditlab {

namespace {

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

// compensated accumulator; keeps the value-oracle mean exact for constant
// integrands (and tighter for everything else)
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// number of compositions of s into k nonnegative parts: C(s+k-1, k-1)
double composition_count(int s, int k) {
    double c = 1.0;
    for (int i = 1; i <= k - 1; ++i) c *= static_cast<double>(s + i) / i;
    return c;
}

}  // namespace

void SimConfig::validate() const {
    if (num_items < 2) throw std::invalid_argument("num_items must be >= 2");
    if (latent_dim < 1) throw std::invalid_argument("latent_dim must be >= 1");
    if (organic_mean_session < 1.0)
        throw std::invalid_argument("organic_mean_session must be >= 1");
    if (bandit_events_per_user < 1)
        throw std::invalid_argument("bandit_events_per_user must be >= 1");
    if (mode == SimMode::FiniteType) {
        if (!finite_types || finite_types->types.empty())
            throw std::invalid_argument("finite-type mode needs a type table");
        if (finite_types->session_length < 1)
            throw std::invalid_argument("finite session_length must be >= 1");
        double prior_total = 0.0;
        for (const FiniteType& t : finite_types->types) {
            if (t.prior < 0.0)
                throw std::invalid_argument("type prior must be nonnegative");
            prior_total += t.prior;
            if (static_cast<int>(t.organic.size()) != num_items ||
                static_cast<int>(t.click_probs.size()) != num_items)
                throw std::invalid_argument(
                    "type tables must have num_items entries");
            double organic_total = 0.0;
            for (double p : t.organic) {
                if (p < 0.0)
                    throw std::invalid_argument("negative organic probability");
                organic_total += p;
            }
            if (std::abs(organic_total - 1.0) > 1e-9)
                throw std::invalid_argument("type organic distribution must sum to 1");
            for (double p : t.click_probs)
                if (!(p > 0.0 && p < 1.0))
                    throw std::invalid_argument(
                        "finite-type click probabilities must lie in (0,1)");
        }
        if (prior_total <= 0.0)
            throw std::invalid_argument("type priors must not all be zero");
    }
}

Env::Env(SimConfig config)
    : config_(std::move(config)),
      rng_(mix_seed(config_.seed, 0, /*tag=*/0x456e7669726f6eULL)) {
    config_.validate();
    // Gamma is drawn first so it depends only on (config, seed)
    gamma_.resize(static_cast<std::size_t>(config_.num_items) * config_.latent_dim);
    for (double& g : gamma_) g = rng_.normal();
}

std::span<const double> Env::item_embedding(int item) const {
    return {gamma_.data() + static_cast<std::size_t>(item) * config_.latent_dim,
            static_cast<std::size_t>(config_.latent_dim)};
}

UserSample Env::sample_user() {
    UserSample user;
    const int k = config_.num_items;
    user.context.views.assign(k, 0);

    if (config_.mode == SimMode::LatentGaussian) {
        const int l = config_.latent_dim;
        user.latent.resize(l);
        for (double& w : user.latent) w = rng_.normal();

        // organic item distribution: softmax(Gamma w)
        std::vector<double> logits(k, 0.0);
        for (int a = 0; a < k; ++a)
            logits[a] = kernels::dot(item_embedding(a).data(), user.latent.data(), l);
        softmax_inplace(logits);

        const std::int64_t session = rng_.session_length(config_.organic_mean_session);
        for (std::int64_t v = 0; v < session; ++v)
            user.context.views[sample_action(logits, rng_).first] += 1;
    } else {
        const FiniteTypeTable& table = *config_.finite_types;
        double prior_total = 0.0;
        for (const FiniteType& t : table.types) prior_total += t.prior;
        double u = rng_.uniform() * prior_total;
        int type = static_cast<int>(table.types.size()) - 1;
        double acc = 0.0;
        for (std::size_t t = 0; t < table.types.size(); ++t) {
            acc += table.types[t].prior;
            if (u < acc) {
                type = static_cast<int>(t);
                break;
            }
        }
        user.type_id = type;
        for (int v = 0; v < table.session_length; ++v)
            user.context.views[sample_action(table.types[type].organic, rng_).first] += 1;
    }
    return user;
}

double Env::click_prob(const UserSample& user, ActionId action) const {
    if (action < 0 || action >= config_.num_items)
        throw std::invalid_argument("action out of range");
    if (config_.mode == SimMode::FiniteType)
        return config_.finite_types->types[user.type_id].click_probs[action];
    const double affinity = kernels::dot(item_embedding(action).data(),
                                         user.latent.data(), config_.latent_dim);
    return sigmoid(config_.click_bias + config_.click_scale * affinity);
}

Env::TracedLogs Env::generate_logs_traced(const PolicyFn& policy,
                                          std::int64_t n_events) {
    if (n_events < 1) throw std::invalid_argument("n_events must be >= 1");
    TracedLogs out;
    out.data.num_items = config_.num_items;
    out.data.events.reserve(n_events);
    out.true_click_probs.reserve(n_events);

    while (static_cast<std::int64_t>(out.data.events.size()) < n_events) {
        const UserSample user = sample_user();
        const std::int64_t user_id = next_user_id_++;
        const std::vector<double> probs = policy(user.context);
        for (int b = 0; b < config_.bandit_events_per_user &&
                        static_cast<std::int64_t>(out.data.events.size()) < n_events;
             ++b) {
            auto [action, propensity] = sample_action(probs, rng_);
            const double p_click = click_prob(user, action);
            BanditEvent e;
            e.user_id = user_id;
            e.context = user.context;
            e.action = action;
            e.click = rng_.bernoulli(p_click) ? 1 : 0;
            e.propensity = propensity;
            out.data.events.push_back(std::move(e));
            out.true_click_probs.push_back(p_click);
        }
    }
    return out;
}

LogDataset Env::generate_logs(const PolicyFn& policy, std::int64_t n_events) {
    return generate_logs_traced(policy, n_events).data;
}

AbResult Env::ab_test(const ParamVector& beta, std::int64_t n_events) {
    if (n_events < 1) throw std::invalid_argument("n_events must be >= 1");
    if (beta.num_items != config_.num_items)
        throw std::invalid_argument("beta size does not match the catalogue");
    AbResult result;
    std::int64_t done = 0;
    while (done < n_events) {
        const UserSample user = sample_user();
        const ActionId action = greedy_action(user.context, beta);
        const double p_click = click_prob(user, action);
        for (int b = 0; b < config_.bandit_events_per_user && done < n_events;
             ++b, ++done)
            result.n_clicks += rng_.bernoulli(p_click) ? 1 : 0;
    }
    result.n_events = n_events;
    result.ctr = static_cast<double>(result.n_clicks) / n_events;
    result.stderr_ = std::sqrt(result.ctr * (1.0 - result.ctr) / n_events);
    return result;
}

ValueEstimate Env::true_policy_value(const PolicyFn& policy,
                                     std::int64_t n_users) {
    if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
    NeumaierSum total, total_sq;
    for (std::int64_t u = 0; u < n_users; ++u) {
        const UserSample user = sample_user();
        const std::vector<double> probs = policy(user.context);
        double value = 0.0;
        for (int a = 0; a < config_.num_items; ++a)
            if (probs[a] > 0.0) value += probs[a] * click_prob(user, a);
        total.add(value);
        total_sq.add(value * value);
    }
    ValueEstimate est;
    est.value = total.value() / n_users;
    const double var =
        std::max(0.0, total_sq.value() / n_users - est.value * est.value);
    est.stderr_ = std::sqrt(var / n_users);
    return est;
}

void for_each_finite_context(
    const FiniteTypeTable& table, int type_id, int num_items,
    const std::function<void(const Context&, double)>& visit) {
    const FiniteType& type = table.types[type_id];
    const int s = table.session_length;

    // log-multinomial via lgamma keeps this exact enough (1e-12-ish) for any
    // session length we can enumerate
    std::vector<double> log_organic(num_items);
    for (int i = 0; i < num_items; ++i)
        log_organic[i] = type.organic[i] > 0.0 ? std::log(type.organic[i])
                                               : -std::numeric_limits<double>::infinity();

    Context context;
    context.views.assign(num_items, 0);

    // recursive enumeration of compositions of s into num_items parts
    auto recurse = [&](auto&& self, int item, int remaining) -> void {
        if (item == num_items - 1) {
            context.views[item] = remaining;
            double logp = std::lgamma(s + 1.0);
            for (int i = 0; i < num_items; ++i) {
                const int c = context.views[i];
                if (c > 0) {
                    if (std::isinf(log_organic[i])) { context.views[item] = 0; return; }
                    logp += c * log_organic[i] - std::lgamma(c + 1.0);
                }
            }
            visit(context, std::exp(logp));
            context.views[item] = 0;
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            if (c > 0 && std::isinf(log_organic[item])) break;
            context.views[item] = c;
            self(self, item + 1, remaining - c);
        }
        context.views[item] = 0;
    };
    recurse(recurse, 0, s);
}

double Env::exact_policy_value_finite(const PolicyFn& policy) const {
    if (config_.mode != SimMode::FiniteType)
        throw std::invalid_argument(
            "exact_policy_value_finite requires finite-type mode");
    const FiniteTypeTable& table = *config_.finite_types;
    const double states = composition_count(table.session_length, config_.num_items) *
                          static_cast<double>(table.types.size());
    if (states > 1e6)
        throw std::invalid_argument("enumeration budget exceeded: " +
                                    std::to_string(states) + " states");

    double prior_total = 0.0;
    for (const FiniteType& t : table.types) prior_total += t.prior;

    double value = 0.0;
    for (std::size_t t = 0; t < table.types.size(); ++t) {
        const FiniteType& type = table.types[t];
        const double p_type = type.prior / prior_total;
        if (p_type == 0.0) continue;
        for_each_finite_context(
            table, static_cast<int>(t), config_.num_items,
            [&](const Context& context, double p_context) {
                const std::vector<double> probs = policy(context);
                double v = 0.0;
                for (int a = 0; a < config_.num_items; ++a)
                    if (probs[a] > 0.0) v += probs[a] * type.click_probs[a];
                value += p_type * p_context * v;
            });
    }
    return value;
}

}  // namespace banditlab
