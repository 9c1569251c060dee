#pragma once

#include <cstdint>
#include <vector>

// Core domain types shared by every module. All of them are plain value
// types, immutable by convention after construction, and safe to share
// read-only across threads.

namespace banditlab {

// Index into the item catalogue, valid range [0, num_items).
using ActionId = int;

// Per-user organic view counts over the catalogue, frozen at decision time.
// Raw counts, not frequencies: the popularity logging policy needs counts.
struct Context {
    std::vector<int> views;

    int size() const { return static_cast<int>(views.size()); }
    std::int64_t total_views() const {
        std::int64_t t = 0;
        for (int v : views) t += v;
        return t;
    }
};

// One logged recommendation: what the user looked like, what was shown,
// whether they clicked, and the logging policy's probability of that action.
struct BanditEvent {
    std::int64_t user_id = 0;
    Context context;
    ActionId action = 0;
    int click = 0;          // 0 or 1
    double propensity = 1.0; // in (0, 1]
};

struct LogDataset {
    std::vector<BanditEvent> events;
    int num_items = 0;

    std::size_t size() const { return events.size(); }
    bool empty() const { return events.empty(); }
};

// The shared parameter vector beta of length K*K. Entry (history item i,
// action j) lives at i*K + j; every trainer and the decision rule use this
// one convention.
struct ParamVector {
    std::vector<double> beta;
    int num_items = 0;

    static ParamVector zeros(int num_items) {
        return constant(num_items, 0.0);
    }
    static ParamVector constant(int num_items, double value) {
        ParamVector p;
        p.num_items = num_items;
        p.beta.assign(static_cast<std::size_t>(num_items) * num_items, value);
        return p;
    }

    double at(int history_item, int action) const {
        return beta[static_cast<std::size_t>(history_item) * num_items + action];
    }
    double& at(int history_item, int action) {
        return beta[static_cast<std::size_t>(history_item) * num_items + action];
    }
    const double* row(int history_item) const {
        return beta.data() + static_cast<std::size_t>(history_item) * num_items;
    }
};

// Throws std::invalid_argument naming the first offending event and the
// violated invariant.
void validate_dataset(const LogDataset& data);

}  // namespace banditlab
