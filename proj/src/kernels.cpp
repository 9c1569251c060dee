#include "banditlab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace banditlab::kernels {

namespace {

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

double max_scalar(const double* a, std::size_t n) {
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}

void scale_scalar(double* a, double alpha, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= alpha;
}

constexpr detail::Backend kScalar{"scalar",   axpy_scalar, dot_scalar,
                                  sum_scalar, max_scalar,  scale_scalar};

const detail::Backend* pick_default() {
    if (const char* env = std::getenv("BANDITLAB_KERNELS")) {
        std::string_view want(env);
        if (want == "scalar") return &kScalar;
        if (want == "avx2" && detail::avx2_backend()) return detail::avx2_backend();
        // unknown value: fall through to auto-detection
    }
    if (const detail::Backend* avx2 = detail::avx2_backend()) return avx2;
    return &kScalar;
}

std::atomic<const detail::Backend*> g_active{nullptr};

const detail::Backend& active() {
    const detail::Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

}  // namespace

namespace detail {
const Backend& scalar_backend() { return kScalar; }
}  // namespace detail

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    active().axpy(alpha, x, y, n);
}

double dot(const double* a, const double* b, std::size_t n) {
    return active().dot(a, b, n);
}

double sum(const double* a, std::size_t n) { return active().sum(a, n); }

double max(const double* a, std::size_t n) { return active().max(a, n); }

void scale(double* a, double alpha, std::size_t n) { active().scale(a, alpha, n); }

std::string_view backend_name() { return active().name; }

bool set_backend(std::string_view name) {
    if (name == "scalar") {
        g_active.store(&kScalar, std::memory_order_release);
        return true;
    }
    if (name == "avx2") {
        if (const detail::Backend* b = detail::avx2_backend()) {
            g_active.store(b, std::memory_order_release);
            return true;
        }
        return false;
    }
    return false;
}

}  // namespace banditlab::kernels
