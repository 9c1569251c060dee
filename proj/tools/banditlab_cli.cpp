// banditlab command line: log simulation, training, evaluation, the full
// experiment sweep and the covariate-shift demo.
//
//   banditlab simulate   --config c.json --out dir [--seed S] [--n N]
//   banditlab train      --config c.json --log logs.jsonl --out dir [--method m]
//   banditlab evaluate   --config c.json --beta beta.json --out dir [--n N]
//   banditlab experiment --config c.json --out dir
//   banditlab shift-demo --out dir [--config c.json] [--seed S]
//
// Exits 0 on success, 1 with a one-line diagnostic on stderr otherwise.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "banditlab/config_json.hpp"
#include "banditlab/estimators.hpp"
#include "banditlab/log_io.hpp"

namespace fs = std::filesystem;
using namespace banditlab;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
};

std::string load_config_text(const CommonArgs& args) {
    if (args.config_path.empty()) return "{}";
    return read_text_file(args.config_path);
}

fs::path ensure_out_dir(const CommonArgs& args) {
    fs::path dir(args.out_dir);
    fs::create_directories(dir);
    return dir;
}

int cmd_simulate(const CommonArgs& args, std::int64_t n_override) {
    const std::string text = load_config_text(args);
    ExperimentConfig cfg = experiment_config_from_json(text);
    if (args.seed) cfg.sim.seed = *args.seed;

    std::int64_t n = n_override;
    if (n <= 0) {
        const auto j = nlohmann::json::parse(text);
        n = j.value("n_events", static_cast<std::int64_t>(cfg.train_sizes.front()));
    }

    Env env(cfg.sim);
    const PolicyFn policy = make_logging_policy(cfg.logging_policy, cfg.sim.num_items);
    const LogDataset logs = env.generate_logs(policy, n);
    const fs::path out = ensure_out_dir(args) / "bandit_log.jsonl";
    write_log_file(logs, out.string());
    const CtrEstimate ctr = empirical_ctr(logs);
    std::cout << "wrote " << logs.size() << " events to " << out.string()
              << " (empirical ctr " << ctr.ctr << ")\n";
    return 0;
}

int cmd_train(const CommonArgs& args, const std::string& log_path,
              std::string method_override) {
    const std::string text = load_config_text(args);
    ExperimentConfig cfg = experiment_config_from_json(text);

    std::string method_name_str = std::move(method_override);
    if (method_name_str.empty()) {
        const auto j = nlohmann::json::parse(text);
        method_name_str = j.value("method", "mle");
    }
    const Method method = method_from_name(method_name_str);

    const LogDataset logs = read_log_file(log_path);
    validate_dataset(logs);
    PriorSpec prior = cfg.prior;
    prior.num_items = logs.num_items;

    const FitResult result = fit(method, logs, prior, cfg.fit_options);
    const fs::path out = ensure_out_dir(args) / "beta.json";
    write_text_file(out.string(), param_vector_to_json(result.beta));
    std::cout << "fit " << method_name_str << " on " << logs.size()
              << " events: objective " << result.final_objective << ", grad norm "
              << result.final_grad_norm << ", iterations " << result.iterations
              << ", converged " << (result.converged ? "true" : "false")
              << "; wrote " << out.string() << "\n";
    return 0;
}

int cmd_evaluate(const CommonArgs& args, const std::string& beta_path,
                 std::int64_t n_override) {
    const std::string text = load_config_text(args);
    ExperimentConfig cfg = experiment_config_from_json(text);
    if (args.seed) cfg.sim.seed = *args.seed;
    const std::int64_t n = n_override > 0 ? n_override : cfg.ab_test_size;

    const ParamVector beta = param_vector_from_json(read_text_file(beta_path));
    Env env(cfg.sim);
    const AbResult ab = env.ab_test(beta, n);
    std::cout << "ab_ctr " << ab.ctr << " stderr " << ab.stderr_ << " n "
              << ab.n_events << "\n";
    return 0;
}

int cmd_experiment(const CommonArgs& args) {
    ExperimentConfig cfg = experiment_config_from_json(load_config_text(args));
    if (args.seed) cfg.sim.seed = *args.seed;
    const fs::path dir = ensure_out_dir(args);

    const std::vector<ResultRow> rows = run_experiment(cfg);
    const fs::path csv = dir / "results.csv";
    const fs::path svg = dir / "results.svg";
    write_results_csv(rows, csv.string());
    emit_plot_svg(rows, svg.string());
    std::cout << "wrote " << rows.size() << " rows to " << csv.string()
              << " and plot to " << svg.string() << "\n";
    return 0;
}

int cmd_shift_demo(const CommonArgs& args) {
    ShiftDemoConfig cfg;
    if (!args.config_path.empty())
        cfg = shift_demo_config_from_json(read_text_file(args.config_path));
    if (args.seed) cfg.seed = *args.seed;
    const fs::path dir = ensure_out_dir(args);

    const ShiftDemoReport report = run_shift_demo(cfg);
    write_shift_demo_csv(report, (dir / "shift_demo.csv").string());
    write_shift_demo_svg(report, (dir / "shift_demo.svg").string());
    std::cout << "mse_source_unweighted " << report.mse_source_unweighted
              << " mse_target_unweighted " << report.mse_target_unweighted
              << " mse_target_weighted " << report.mse_target_weighted << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"train and evaluate recommendation policies on logged bandit feedback"};
    app.require_subcommand(1);

    CommonArgs common;
    std::int64_t n_override = 0;
    std::string log_path, beta_path, method_override;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", common.config_path,
                                    "JSON config file");
        if (config_required) opt->required();
        sub->add_option("--out", common.out_dir, "output directory");
        sub->add_option("--seed", common.seed, "override the simulator seed");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "write a banditlog-v1 file");
    add_common(simulate, true);
    simulate->add_option("--n", n_override, "number of bandit events");

    CLI::App* train = app.add_subcommand("train", "fit a policy from a log file");
    add_common(train, true);
    train->add_option("--log", log_path, "banditlog-v1 input")->required();
    train->add_option("--method", method_override, "mle|reweighted|cb|bayes-map");

    CLI::App* evaluate = app.add_subcommand("evaluate", "simulated A/B test of a fitted beta");
    add_common(evaluate, true);
    evaluate->add_option("--beta", beta_path, "fitted beta JSON")->required();
    evaluate->add_option("--n", n_override, "number of A/B events");

    CLI::App* experiment = app.add_subcommand("experiment", "full sweep: CSV + SVG");
    add_common(experiment, true);

    CLI::App* shift = app.add_subcommand("shift-demo", "covariate shift regression demo");
    add_common(shift, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(common, n_override);
        if (train->parsed()) return cmd_train(common, log_path, method_override);
        if (evaluate->parsed()) return cmd_evaluate(common, beta_path, n_override);
        if (experiment->parsed()) return cmd_experiment(common);
        if (shift->parsed()) return cmd_shift_demo(common);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
