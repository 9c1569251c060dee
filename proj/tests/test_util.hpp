#pragma once

// Shared helpers for the unit and acceptance suites: random problem
// generators, the independent oracles (finite differences, dense prior
// algebra, brute-force feature dots) and a small XML well-formedness check
// for the SVG outputs. Everything here is deliberately written the dumb,
// obviously-correct way and never calls the code path it is used to check.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "banditlab/types.hpp"

namespace testutil {

using banditlab::BanditEvent;
using banditlab::Context;
using banditlab::LogDataset;
using banditlab::ParamVector;

// ---------------------------------------------------------------- generators

inline Context random_context(std::mt19937& gen, int num_items, int max_count = 5) {
    std::uniform_int_distribution<int> count(0, max_count);
    Context c;
    c.views.resize(num_items);
    for (int& v : c.views) v = count(gen);
    return c;
}

inline LogDataset random_dataset(std::mt19937& gen, int num_items, int n_events,
                                 double click_rate = 0.4) {
    std::uniform_int_distribution<int> action(0, num_items - 1);
    std::uniform_real_distribution<double> propensity(0.05, 1.0);
    std::bernoulli_distribution click(click_rate);
    LogDataset data;
    data.num_items = num_items;
    for (int n = 0; n < n_events; ++n) {
        BanditEvent e;
        e.user_id = n;
        e.context = random_context(gen, num_items);
        if (e.context.total_views() == 0) e.context.views[0] = 1;
        e.action = action(gen);
        e.click = click(gen) ? 1 : 0;
        e.propensity = propensity(gen);
        data.events.push_back(std::move(e));
    }
    return data;
}

inline ParamVector random_beta(std::mt19937& gen, int num_items, double scale = 0.5) {
    std::normal_distribution<double> coef(0.0, scale);
    ParamVector beta = ParamVector::zeros(num_items);
    for (double& b : beta.beta) b = coef(gen);
    return beta;
}

// ------------------------------------------------------------------- oracles

// Central finite differences of a scalar function of a flat vector.
inline std::vector<double> finite_difference_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h = 1e-5) {
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = x[i];
        x[i] = saved + h;
        const double hi = f(x);
        x[i] = saved - h;
        const double lo = f(x);
        x[i] = saved;
        grad[i] = (hi - lo) / (2.0 * h);
    }
    return grad;
}

// max_i |a_i - b_i| / max(1, |b_i|)
inline double max_rel_error(const std::vector<double>& a,
                            const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::logic_error("length mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max(1.0, std::abs(b[i]));
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

// Dense K^2 x K^2 covariance (aI + bJ) (x) (aI + bJ), entry by entry from
// the definition: Sigma[(i,j),(k,l)] = M[i,k] * M[j,l].
inline std::vector<std::vector<double>> dense_prior_covariance(int k, double a,
                                                               double b) {
    auto m_entry = [&](int r, int c) { return (r == c ? a + b : b); };
    const int kk = k * k;
    std::vector<std::vector<double>> sigma(kk, std::vector<double>(kk));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int kk2 = 0; kk2 < k; ++kk2)
                for (int l = 0; l < k; ++l)
                    sigma[i * k + j][kk2 * k + l] = m_entry(i, kk2) * m_entry(j, l);
    return sigma;
}

inline std::vector<double> dense_matvec(const std::vector<std::vector<double>>& m,
                                        const std::vector<double>& v) {
    std::vector<double> out(m.size(), 0.0);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
    return out;
}

// Gauss-Jordan solve of m x = v with partial pivoting; fine at these sizes.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> m,
                                       std::vector<double> v) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        std::swap(v[col], v[pivot]);
        if (m[col][col] == 0.0) throw std::runtime_error("singular matrix");
        const double inv = 1.0 / m[col][col];
        for (std::size_t c = col; c < n; ++c) m[col][c] *= inv;
        v[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0.0) continue;
            const double factor = m[r][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
            v[r] -= factor * v[col];
        }
    }
    return v;
}

// ----------------------------------------------------------------- xml check

// Minimal well-formedness scan: one root element, tags balanced, attribute
// quotes closed. Enough to catch broken SVG emission.
inline bool xml_well_formed(const std::string& text, std::string* error = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    std::vector<std::string> stack;
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool seen_root = false;
    while (i < n) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        if (text.compare(i, 2, "<?") == 0) {
            const std::size_t end = text.find("?>", i);
            if (end == std::string::npos) return fail("unterminated declaration");
            i = end + 2;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0) {
            const std::size_t end = text.find("-->", i);
            if (end == std::string::npos) return fail("unterminated comment");
            i = end + 3;
            continue;
        }
        const bool closing = i + 1 < n && text[i + 1] == '/';
        std::size_t j = i + (closing ? 2 : 1);
        std::size_t name_start = j;
        while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                         text[j] == ':' || text[j] == '-' || text[j] == '_'))
            ++j;
        const std::string name = text.substr(name_start, j - name_start);
        if (name.empty()) return fail("empty tag name");
        // scan to '>' honoring quoted attribute values
        bool self_closing = false;
        char quote = 0;
        while (j < n) {
            const char c = text[j];
            if (quote) {
                if (c == quote) quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '>') {
                break;
            } else if (c == '/' && j + 1 < n && text[j + 1] == '>') {
                self_closing = true;
            }
            ++j;
        }
        if (j >= n) return fail("unterminated tag " + name);
        if (closing) {
            if (stack.empty() || stack.back() != name)
                return fail("mismatched closing tag " + name);
            stack.pop_back();
        } else if (!self_closing) {
            if (stack.empty() && seen_root) return fail("multiple root elements");
            stack.push_back(name);
            seen_root = true;
        }
        i = j + 1;
    }
    if (!stack.empty()) return fail("unclosed tag " + stack.back());
    if (!seen_root) return fail("no root element");
    return true;
}

// Pairwise sum, exact for the small uniform-vector cases the tests assert.
inline double pairwise_sum(const double* a, std::size_t n) {
    if (n == 1) return a[0];
    const std::size_t half = n / 2;
    return pairwise_sum(a, half) + pairwise_sum(a + half, n - half);
}

}  // namespace testutil
