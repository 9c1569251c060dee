#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "banditlab/kernels.hpp"

using namespace banditlab;

namespace {

std::vector<double> random_vec(std::mt19937& gen, std::size_t n) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(gen);
    return v;
}

struct BackendGuard {
    std::string saved{kernels::backend_name()};
    ~BackendGuard() { kernels::set_backend(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match straightforward loops") {
    BackendGuard guard;
    REQUIRE(kernels::set_backend("scalar"));
    std::mt19937 gen(7);
    std::vector<double> a = random_vec(gen, 17);
    std::vector<double> b = random_vec(gen, 17);

    double dot_ref = 0.0, sum_ref = 0.0, max_ref = a[0];
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot_ref += a[i] * b[i];
        sum_ref += a[i];
        max_ref = std::max(max_ref, a[i]);
    }
    CHECK(kernels::dot(a.data(), b.data(), a.size()) == doctest::Approx(dot_ref));
    CHECK(kernels::sum(a.data(), a.size()) == doctest::Approx(sum_ref));
    CHECK(kernels::max(a.data(), a.size()) == max_ref);

    std::vector<double> y = b;
    kernels::axpy(1.5, a.data(), y.data(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(y[i] == doctest::Approx(b[i] + 1.5 * a[i]));

    std::vector<double> s = a;
    kernels::scale(s.data(), -0.25, s.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(s[i] == doctest::Approx(-0.25 * a[i]));
}

TEST_CASE("simd backend is equivalent to the scalar reference") {
    if (!kernels::detail::avx2_backend()) {
        MESSAGE("avx2 backend unavailable on this host; dispatch covered by scalar");
        return;
    }
    BackendGuard guard;
    std::mt19937 gen(11);

    // sizes straddling the vector width to hit every remainder path
    for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(3),
                          std::size_t(4), std::size_t(5), std::size_t(7),
                          std::size_t(8), std::size_t(9), std::size_t(15),
                          std::size_t(16), std::size_t(31), std::size_t(100),
                          std::size_t(101), std::size_t(128), std::size_t(131)}) {
        for (int rep = 0; rep < 8; ++rep) {
            std::vector<double> a = random_vec(gen, n);
            std::vector<double> b = random_vec(gen, n);
            const double alpha = random_vec(gen, 1)[0];

            REQUIRE(kernels::set_backend("scalar"));
            const double dot_s = kernels::dot(a.data(), b.data(), n);
            const double sum_s = kernels::sum(a.data(), n);
            const double max_s = kernels::max(a.data(), n);
            std::vector<double> axpy_s = b;
            kernels::axpy(alpha, a.data(), axpy_s.data(), n);
            std::vector<double> scale_s = a;
            kernels::scale(scale_s.data(), alpha, n);

            REQUIRE(kernels::set_backend("avx2"));
            const double dot_v = kernels::dot(a.data(), b.data(), n);
            const double sum_v = kernels::sum(a.data(), n);
            const double max_v = kernels::max(a.data(), n);
            std::vector<double> axpy_v = b;
            kernels::axpy(alpha, a.data(), axpy_v.data(), n);
            std::vector<double> scale_v = a;
            kernels::scale(scale_v.data(), alpha, n);

            CHECK(dot_v == doctest::Approx(dot_s).epsilon(1e-12));
            CHECK(sum_v == doctest::Approx(sum_s).epsilon(1e-12));
            CHECK(max_v == max_s);  // max never reassociates
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(axpy_v[i] == doctest::Approx(axpy_s[i]).epsilon(1e-12));
                CHECK(scale_v[i] == scale_s[i]);  // one multiply per lane
            }
        }
    }
}

TEST_CASE("backend selection") {
    BackendGuard guard;
    CHECK_FALSE(kernels::set_backend("no-such-backend"));
    REQUIRE(kernels::set_backend("scalar"));
    CHECK(kernels::backend_name() == "scalar");
    if (kernels::detail::avx2_backend()) {
        REQUIRE(kernels::set_backend("avx2"));
        CHECK(kernels::backend_name() == "avx2");
    }
}
