#include "banditlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "banditlab/estimators.hpp"
#include "banditlab/svg.hpp"

namespace banditlab {

void ExperimentConfig::validate() const {
    sim.validate();
    if (methods.empty()) throw std::invalid_argument("methods must be nonempty");
    if (train_sizes.empty())
        throw std::invalid_argument("train_sizes must be nonempty");
    for (int s : train_sizes)
        if (s < 1) throw std::invalid_argument("train sizes must be >= 1");
    if (ab_test_size < 1) throw std::invalid_argument("ab_test_size must be >= 1");
    if (n_seeds < 1) throw std::invalid_argument("n_seeds must be >= 1");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    PriorSpec p = prior;
    p.num_items = sim.num_items;
    p.validate();
}

ResultRow run_experiment_cell(const ExperimentConfig& config, Method method,
                              int train_size, int seed_index) {
    const auto start = std::chrono::steady_clock::now();

    SimConfig sim = config.sim;
    const std::uint64_t master = config.sim.seed;

    sim.seed = mix_seed(master, seed_index, kTrainTag);
    Env train_env(sim);
    const PolicyFn logging =
        make_logging_policy(config.logging_policy, sim.num_items);
    const LogDataset logs = train_env.generate_logs(logging, train_size);

    PriorSpec prior = config.prior;
    prior.num_items = sim.num_items;

    ResultRow row;
    row.method = std::string(method_name(method));
    row.logging_policy = config.logging_policy;
    row.train_size = train_size;
    row.seed = seed_index;

    ParamVector beta = method == Method::BayesMap
                           ? ParamVector::constant(sim.num_items, prior.mu)
                           : ParamVector::zeros(sim.num_items);
    try {
        FitResult fitted = fit(method, logs, prior, config.fit_options);
        beta = std::move(fitted.beta);
        row.train_converged = fitted.converged;
    } catch (const std::exception& err) {
        // e.g. the contextual bandit objective on a log without clicks;
        // evaluate the start point and keep going
        std::cerr << "[cell] fit failed (" << row.method << ", size "
                  << train_size << ", seed " << seed_index << "): " << err.what()
                  << "\n";
        row.train_converged = false;
    }

    sim.seed = mix_seed(master, seed_index, kEvalTag);
    Env eval_env(sim);
    const AbResult ab = eval_env.ab_test(beta, config.ab_test_size);
    row.ab_ctr = ab.ctr;
    row.ab_stderr = ab.stderr_;

    sim.seed = mix_seed(master, seed_index, kHoldoutTag);
    Env holdout_env(sim);
    const LogDataset holdout =
        holdout_env.generate_logs(logging, config.ab_test_size);
    row.ips_value_on_holdout = ips_value(holdout, beta);

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (config.record_timings) row.wall_time = seconds;
    std::cerr << "[cell] method=" << row.method << " size=" << train_size
              << " seed=" << seed_index << " ab_ctr=" << row.ab_ctr
              << " elapsed_s=" << seconds << "\n";
    return row;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
    config.validate();

    struct Cell {
        Method method;
        int size;
        int seed;
    };
    std::vector<Cell> cells;
    for (Method m : config.methods)
        for (int size : config.train_sizes)
            for (int seed = 0; seed < config.n_seeds; ++seed)
                cells.push_back({m, size, seed});

    std::vector<ResultRow> rows(cells.size());
    if (config.jobs <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            rows[i] = run_experiment_cell(config, cells[i].method, cells[i].size,
                                          cells[i].seed);
        return rows;
    }

    // cells are independent; schedule at most `jobs` at a time and store
    // results by cell index so the output order stays (method, size, seed)
    std::size_t next = 0;
    std::vector<std::pair<std::size_t, std::future<ResultRow>>> running;
    auto drain_one = [&]() {
        auto& [idx, fut] = running.front();
        rows[idx] = fut.get();
        running.erase(running.begin());
    };
    while (next < cells.size() || !running.empty()) {
        while (next < cells.size() &&
               running.size() < static_cast<std::size_t>(config.jobs)) {
            const Cell c = cells[next];
            running.emplace_back(next, std::async(std::launch::async, [&config, c] {
                                     return run_experiment_cell(config, c.method,
                                                                c.size, c.seed);
                                 }));
            ++next;
        }
        drain_one();
    }
    return rows;
}

namespace {

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("no rows to write");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "method,logging_policy,train_size,seed,ab_ctr,ab_stderr,"
           "ips_value_on_holdout,train_converged,wall_time\n";
    for (const ResultRow& r : rows) {
        out << csv_field(r.method) << ',' << csv_field(r.logging_policy) << ','
            << r.train_size << ',' << r.seed << ',' << fmt6(r.ab_ctr) << ','
            << fmt6(r.ab_stderr) << ',' << fmt6(r.ips_value_on_holdout) << ','
            << (r.train_converged ? "true" : "false") << ','
            << fmt6(r.wall_time) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 9)
            throw std::runtime_error("expected 9 csv fields, got " +
                                     std::to_string(f.size()));
        ResultRow r;
        r.method = f[0];
        r.logging_policy = f[1];
        r.train_size = std::stoi(f[2]);
        r.seed = std::stoi(f[3]);
        r.ab_ctr = std::stod(f[4]);
        r.ab_stderr = std::stod(f[5]);
        r.ips_value_on_holdout = std::stod(f[6]);
        r.train_converged = (f[7] == "true" || f[7] == "1");
        r.wall_time = std::stod(f[8]);
        rows.push_back(std::move(r));
    }
    return rows;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of empty set");
    std::sort(values.begin(), values.end());
    const double pos = q * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - lo;
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

namespace {

const char* method_color(const std::string& method) {
    if (method == "mle") return "#1f77b4";
    if (method == "reweighted") return "#d62728";
    if (method == "cb") return "#2ca02c";
    if (method == "bayes-map") return "#9467bd";
    return "#7f7f7f";
}

const char* method_dash(const std::string& method) {
    if (method == "mle") return "";
    if (method == "reweighted") return "stroke-dasharray:6,3;";
    if (method == "cb") return "stroke-dasharray:2,2;";
    if (method == "bayes-map") return "stroke-dasharray:8,3,2,3;";
    return "";
}

}  // namespace

void emit_plot_svg(const std::vector<ResultRow>& rows, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("no rows to plot");

    std::vector<std::string> policies;
    for (const ResultRow& r : rows)
        if (std::find(policies.begin(), policies.end(), r.logging_policy) ==
            policies.end())
            policies.push_back(r.logging_policy);

    const double chart_w = 640, chart_h = 420;
    const double ml = 70, mr = 160, mt = 40, mb = 50;  // margins
    SvgWriter svg(chart_w, chart_h * policies.size());

    for (std::size_t pi = 0; pi < policies.size(); ++pi) {
        const std::string& policy = policies[pi];
        const double top = pi * chart_h;

        // (method, size) -> seed ctrs, in first-seen method order
        std::vector<std::string> methods;
        std::set<int> sizes_set;
        std::map<std::pair<std::string, int>, std::vector<double>> ctrs;
        for (const ResultRow& r : rows) {
            if (r.logging_policy != policy) continue;
            if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
                methods.push_back(r.method);
            sizes_set.insert(r.train_size);
            ctrs[{r.method, r.train_size}].push_back(r.ab_ctr);
        }
        const std::vector<int> sizes(sizes_set.begin(), sizes_set.end());

        double y_min = 1.0, y_max = 0.0;
        for (const auto& [key, vals] : ctrs) {
            y_min = std::min(y_min, quantile(vals, 0.25));
            y_max = std::max(y_max, quantile(vals, 0.75));
        }
        const double pad = std::max(1e-4, (y_max - y_min) * 0.15);
        y_min = std::max(0.0, y_min - pad);
        y_max += pad;

        const double x_lo = sizes.front(), x_hi = std::max(sizes.back(), 1);
        auto sx = [&](double size) {
            if (x_hi == x_lo) return ml + (chart_w - ml - mr) / 2.0;
            return ml + (size - x_lo) / (x_hi - x_lo) * (chart_w - ml - mr);
        };
        auto sy = [&](double v) {
            return top + mt + (y_max - v) / (y_max - y_min) * (chart_h - mt - mb);
        };

        svg.open_group();
        svg.text(ml, top + 22, "simulated A/B CTR vs training size - " + policy,
                 "font-family:sans-serif;font-size:14px;font-weight:bold");
        // axes
        svg.line(ml, sy(y_min), chart_w - mr, sy(y_min),
                 "stroke:#333;stroke-width:1");
        svg.line(ml, sy(y_min), ml, sy(y_max), "stroke:#333;stroke-width:1");
        for (int size : sizes) {
            svg.line(sx(size), sy(y_min), sx(size), sy(y_min) + 4,
                     "stroke:#333;stroke-width:1");
            svg.text(sx(size) - 16, sy(y_min) + 18, std::to_string(size),
                     "font-family:sans-serif;font-size:11px");
        }
        for (int t = 0; t <= 4; ++t) {
            const double v = y_min + (y_max - y_min) * t / 4.0;
            svg.line(ml - 4, sy(v), ml, sy(v), "stroke:#333;stroke-width:1");
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", v);
            svg.text(8, sy(v) + 4, buf, "font-family:sans-serif;font-size:11px");
        }
        svg.text(ml + (chart_w - ml - mr) / 2 - 40, top + chart_h - 12,
                 "training events", "font-family:sans-serif;font-size:12px");

        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const std::string& method = methods[mi];
            std::vector<std::pair<double, double>> med_pts, band;
            std::vector<std::pair<double, double>> upper;
            for (int size : sizes) {
                auto it = ctrs.find({method, size});
                if (it == ctrs.end()) continue;
                med_pts.emplace_back(sx(size), sy(median(it->second)));
                band.emplace_back(sx(size), sy(quantile(it->second, 0.25)));
                upper.emplace_back(sx(size), sy(quantile(it->second, 0.75)));
            }
            if (med_pts.empty()) continue;
            // interquartile band: lower edge forward, upper edge back
            std::vector<std::pair<double, double>> poly = band;
            poly.insert(poly.end(), upper.rbegin(), upper.rend());
            const std::string color = method_color(method);
            svg.polygon(poly, "fill:" + color + ";fill-opacity:0.12;stroke:none");
            svg.polyline(med_pts, "stroke:" + color + ";stroke-width:2;" +
                                      method_dash(method));
            for (const auto& [x, y] : med_pts)
                svg.circle(x, y, 3, "fill:" + color);
            // legend
            const double ly = top + mt + 20 * mi;
            svg.line(chart_w - mr + 12, ly, chart_w - mr + 44, ly,
                     "stroke:" + color + ";stroke-width:2;" + method_dash(method));
            svg.text(chart_w - mr + 50, ly + 4, method,
                     "font-family:sans-serif;font-size:12px");
        }
        svg.close_group();
    }
    svg.save(path);
}

}  // namespace banditlab
