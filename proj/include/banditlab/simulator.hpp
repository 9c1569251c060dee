#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "banditlab/policies.hpp"
#include "banditlab/rng.hpp"
#include "banditlab/types.hpp"

// Recommendation environment: latent-state users browse organically to build
// their context, then receive recommendations whose clicks follow a ground
// truth model. Two modes:
//
//  - latent-gaussian: user latent w ~ N(0, I_L), item embeddings Gamma drawn
//    once per environment, organic views from softmax(Gamma w), click
//    probability sigmoid(click_bias + click_scale * Gamma_a . w).
//  - finite-type: a small table of user types with explicit organic and
//    click probabilities and a fixed organic session length. Everything is
//    enumerable, which is what the exact value oracles need.
//
// An Env owns its rng; identical (config, seed) reproduce identical
// trajectories bit for bit.

namespace banditlab {

struct FiniteType {
    double prior = 1.0;                // P(type), normalized across the table
    std::vector<double> organic;       // distribution over items, sums to 1
    std::vector<double> click_probs;   // per action, each in (0,1)
};

struct FiniteTypeTable {
    int session_length = 2;            // fixed organic session length
    std::vector<FiniteType> types;
};

enum class SimMode { LatentGaussian, FiniteType };

struct SimConfig {
    int num_items = 10;
    int latent_dim = 2;
    double organic_mean_session = 10.0;
    int bandit_events_per_user = 10;
    double click_bias = -4.0;   // logit units
    double click_scale = 1.0;
    SimMode mode = SimMode::LatentGaussian;
    std::optional<FiniteTypeTable> finite_types;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

struct UserSample {
    std::vector<double> latent;  // length L in latent-gaussian mode
    int type_id = -1;            // set in finite-type mode
    Context context;
};

struct AbResult {
    double ctr = 0.0;
    double stderr_ = 0.0;
    std::int64_t n_events = 0;
    std::int64_t n_clicks = 0;
};

struct ValueEstimate {
    double value = 0.0;
    double stderr_ = 0.0;  // across-user standard error of the mean
};

class Env {
public:
    explicit Env(SimConfig config);

    const SimConfig& config() const { return config_; }
    int num_items() const { return config_.num_items; }

    // Row a of the item embedding matrix Gamma (latent-gaussian mode).
    std::span<const double> item_embedding(int item) const;

    UserSample sample_user();

    // Ground-truth click probability; exact and deterministic.
    double click_prob(const UserSample& user, ActionId action) const;

    // Logs exactly n_events bandit events, B per user with the context
    // frozen after the organic session (the final user may contribute
    // fewer).
    LogDataset generate_logs(const PolicyFn& policy, std::int64_t n_events);

    struct TracedLogs {
        LogDataset data;
        std::vector<double> true_click_probs;  // per event
    };
    TracedLogs generate_logs_traced(const PolicyFn& policy,
                                    std::int64_t n_events);

    // Plays greedy_action(context, beta) for n_events bandit events on fresh
    // users and reports the click rate with its binomial standard error.
    AbResult ab_test(const ParamVector& beta, std::int64_t n_events);

    // Exact-conditional Monte Carlo value of a policy: users are sampled,
    // clicks are not -- each user contributes sum_a policy(a|x) * click_prob.
    ValueEstimate true_policy_value(const PolicyFn& policy,
                                    std::int64_t n_users);

    // Exact policy value in finite-type mode by enumerating types x contexts
    // with multinomial context probabilities. Throws in latent-gaussian mode
    // or when the enumeration would exceed ~1e6 states.
    double exact_policy_value_finite(const PolicyFn& policy) const;

private:
    SimConfig config_;
    std::vector<double> gamma_;  // K x L row-major
    Rng rng_;
    std::int64_t next_user_id_ = 0;
};

// Enumerates all contexts reachable in finite-type mode (compositions of the
// session length into K parts) and calls visit(context, P(context | type)).
// Shared by the exact oracle above and by test-side estimator enumerations.
void for_each_finite_context(
    const FiniteTypeTable& table, int type_id, int num_items,
    const std::function<void(const Context&, double)>& visit);

}  // namespace banditlab
