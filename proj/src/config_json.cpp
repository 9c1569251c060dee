#include "banditlab/config_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace banditlab {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) { ok = true; break; }
        if (!ok)
            throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
    }
}

SimConfig sim_config_from(const json& j) {
    reject_unknown_keys(j,
                        {"num_items", "latent_dim", "organic_mean_session",
                         "bandit_events_per_user", "click_bias", "click_scale",
                         "mode", "seed", "finite_types"},
                        "sim config");
    SimConfig cfg;
    cfg.num_items = j.value("num_items", cfg.num_items);
    cfg.latent_dim = j.value("latent_dim", cfg.latent_dim);
    cfg.organic_mean_session =
        j.value("organic_mean_session", cfg.organic_mean_session);
    cfg.bandit_events_per_user =
        j.value("bandit_events_per_user", cfg.bandit_events_per_user);
    cfg.click_bias = j.value("click_bias", cfg.click_bias);
    cfg.click_scale = j.value("click_scale", cfg.click_scale);
    cfg.seed = j.value("seed", cfg.seed);
    const std::string mode = j.value("mode", "latent-gaussian");
    if (mode == "latent-gaussian") {
        cfg.mode = SimMode::LatentGaussian;
    } else if (mode == "finite-type") {
        cfg.mode = SimMode::FiniteType;
    } else {
        throw std::invalid_argument("unknown mode: " + mode);
    }
    if (j.contains("finite_types")) {
        const json& ft = j.at("finite_types");
        reject_unknown_keys(ft, {"session_length", "types"}, "finite_types");
        FiniteTypeTable table;
        table.session_length = ft.value("session_length", table.session_length);
        for (const json& tj : ft.at("types")) {
            reject_unknown_keys(tj, {"prior", "organic", "click_probs"}, "type");
            FiniteType type;
            type.prior = tj.value("prior", 1.0);
            type.organic = tj.at("organic").get<std::vector<double>>();
            type.click_probs = tj.at("click_probs").get<std::vector<double>>();
            table.types.push_back(std::move(type));
        }
        cfg.finite_types = std::move(table);
    }
    cfg.validate();
    return cfg;
}

FitOptions fit_options_from(const json& j) {
    reject_unknown_keys(j, {"grad_tol", "max_iters", "l2_floor", "weight_cap"},
                        "fit options");
    FitOptions opts;
    opts.grad_tol = j.value("grad_tol", opts.grad_tol);
    opts.max_iters = j.value("max_iters", opts.max_iters);
    opts.l2_floor = j.value("l2_floor", opts.l2_floor);
    if (j.contains("weight_cap")) opts.weight_cap = j.at("weight_cap").get<double>();
    return opts;
}

}  // namespace

SimConfig sim_config_from_json(const std::string& text) {
    return sim_config_from(json::parse(text));
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    reject_unknown_keys(j,
                        {"sim", "logging_policy", "methods", "train_sizes",
                         "ab_test_size", "n_seeds", "prior", "fit", "method",
                         "n_events", "record_timings", "jobs"},
                        "experiment config");
    ExperimentConfig cfg;
    if (j.contains("sim")) cfg.sim = sim_config_from(j.at("sim"));
    cfg.logging_policy = j.value("logging_policy", cfg.logging_policy);
    if (j.contains("methods")) {
        cfg.methods.clear();
        for (const json& m : j.at("methods"))
            cfg.methods.push_back(method_from_name(m.get<std::string>()));
    }
    if (j.contains("train_sizes"))
        cfg.train_sizes = j.at("train_sizes").get<std::vector<int>>();
    cfg.ab_test_size = j.value("ab_test_size", cfg.ab_test_size);
    cfg.n_seeds = j.value("n_seeds", cfg.n_seeds);
    if (j.contains("prior")) {
        const json& p = j.at("prior");
        reject_unknown_keys(p, {"mu", "a", "b"}, "prior");
        cfg.prior.mu = p.value("mu", cfg.prior.mu);
        cfg.prior.a = p.value("a", cfg.prior.a);
        cfg.prior.b = p.value("b", cfg.prior.b);
    }
    cfg.prior.num_items = cfg.sim.num_items;
    if (j.contains("fit")) cfg.fit_options = fit_options_from(j.at("fit"));
    cfg.record_timings = j.value("record_timings", cfg.record_timings);
    cfg.jobs = j.value("jobs", cfg.jobs);
    return cfg;
}

ShiftDemoConfig shift_demo_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    reject_unknown_keys(j, {"n_samples", "noise_sd", "seed"}, "shift demo config");
    ShiftDemoConfig cfg;
    cfg.n_samples = j.value("n_samples", cfg.n_samples);
    cfg.noise_sd = j.value("noise_sd", cfg.noise_sd);
    cfg.seed = j.value("seed", cfg.seed);
    return cfg;
}

std::string param_vector_to_json(const ParamVector& beta) {
    json j;
    j["num_items"] = beta.num_items;
    j["beta"] = beta.beta;
    return j.dump(2) + "\n";
}

ParamVector param_vector_from_json(const std::string& text) {
    const json j = json::parse(text);
    ParamVector beta;
    beta.num_items = j.at("num_items").get<int>();
    beta.beta = j.at("beta").get<std::vector<double>>();
    const std::size_t expect =
        static_cast<std::size_t>(beta.num_items) * beta.num_items;
    if (beta.beta.size() != expect)
        throw std::invalid_argument("beta length must be num_items^2");
    return beta;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace banditlab
