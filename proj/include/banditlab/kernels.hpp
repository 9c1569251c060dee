#pragma once

#include <cstddef>
#include <string_view>

// Arithmetic kernels behind the hot loops: per-action score accumulation,
// softmax reductions, gradient updates and the optimizer's vector algebra.
// A scalar reference implementation is always available; an AVX2 variant is
// selected at runtime when the CPU supports it. The two paths are
// equivalence-tested against each other (see tests/test_kernels.cpp).
//
// Backend selection can be forced through the BANDITLAB_KERNELS environment
// variable ("scalar" or "avx2") or set_backend().

namespace banditlab::kernels {

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

double sum(const double* a, std::size_t n);

// max over a[0..n); requires n >= 1
double max(const double* a, std::size_t n);

// a[i] *= alpha
void scale(double* a, double alpha, std::size_t n);

// Name of the active backend ("scalar" or "avx2").
std::string_view backend_name();

// Force a backend by name. Returns false (and leaves the current backend in
// place) when the requested one is unknown or unavailable on this CPU.
bool set_backend(std::string_view name);

namespace detail {

struct Backend {
    const char* name;
    void (*axpy)(double, const double*, double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*max)(const double*, std::size_t);
    void (*scale)(double*, double, std::size_t);
};

const Backend& scalar_backend();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const Backend* avx2_backend();

}  // namespace detail

}  // namespace banditlab::kernels
