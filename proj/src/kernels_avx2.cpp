// AVX2 kernel variants. This translation unit is compiled with -mavx2 -mfma
// (see src/CMakeLists.txt); whether it is used is decided at runtime from
// cpuid so the same binary still runs on pre-AVX2 hardware.

#include "banditlab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define BANDITLAB_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define BANDITLAB_HAVE_AVX2_TU 0
#endif

namespace banditlab::kernels::detail {

#if BANDITLAB_HAVE_AVX2_TU

namespace {

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vx, vy));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_fmadd_pd(va, vb, acc);
    }
    double result = hsum(acc);
    for (; i < n; ++i) result += a[i] * b[i];
    return result;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double result = hsum(acc);
    for (; i < n; ++i) result += a[i];
    return result;
}

double max_avx2(const double* a, std::size_t n) {
    if (n < 4) {
        double m = a[0];
        for (std::size_t i = 1; i < n; ++i)
            if (a[i] > m) m = a[i];
        return m;
    }
    __m256d vm = _mm256_loadu_pd(a);
    std::size_t i = 4;
    for (; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(a + i));
    __m128d lo = _mm256_castpd256_pd128(vm);
    __m128d hi = _mm256_extractf128_pd(vm, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    double m = _mm_cvtsd_f64(_mm_max_sd(lo, shuf));
    for (; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}

void scale_avx2(double* a, double alpha, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(a + i, _mm256_mul_pd(va, _mm256_loadu_pd(a + i)));
    for (; i < n; ++i) a[i] *= alpha;
}

constexpr Backend kAvx2{"avx2", axpy_avx2, dot_avx2, sum_avx2, max_avx2, scale_avx2};

}  // namespace

const Backend* avx2_backend() {
    static const bool supported =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &kAvx2 : nullptr;
}

#else

const Backend* avx2_backend() { return nullptr; }

#endif  // BANDITLAB_HAVE_AVX2_TU

}  // namespace banditlab::kernels::detail
