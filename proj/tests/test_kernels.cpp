#include "doctest.h"

#include <cmath>
#include <vector>

#include "stbc/kernels.hpp"
#include "stbc/rng.hpp"

using namespace stbc;

namespace {

std::vector<double> random_vec(PhiloxRng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    return v;
}

}  // namespace

TEST_CASE("dispatched kernels match the scalar reference") {
    PhiloxRng rng(7, 0);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 31u, 32u, 33u, 100u}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        double ref = kernels::detail::dot_scalar(a.data(), b.data(), n);
        double got = kernels::dot(a.data(), b.data(), n);
        CHECK(got == doctest::Approx(ref).epsilon(1e-13));

        double ref2 = kernels::detail::sum_sq_scalar(a.data(), n);
        CHECK(kernels::sum_sq(a.data(), n) == doctest::Approx(ref2).epsilon(1e-13));

        auto y1 = b, y2 = b;
        kernels::detail::axpy_scalar(0.37, a.data(), y1.data(), n);
        kernels::axpy(0.37, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-13));
    }
}

#if defined(__x86_64__)
TEST_CASE("avx2 variants agree with scalar when the CPU has them") {
    if (!kernels::detail::avx2_available()) return;
    PhiloxRng rng(11, 1);
    for (std::size_t n : {1u, 5u, 16u, 37u, 256u}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        double s = kernels::detail::dot_scalar(a.data(), b.data(), n);
        double v = kernels::detail::dot_avx2(a.data(), b.data(), n);
        CHECK(v == doctest::Approx(s).epsilon(1e-12));
        CHECK(kernels::detail::sum_sq_avx2(a.data(), n) ==
              doctest::Approx(kernels::detail::sum_sq_scalar(a.data(), n)).epsilon(1e-12));
        auto y1 = b, y2 = b;
        kernels::detail::axpy_scalar(-1.25, a.data(), y1.data(), n);
        kernels::detail::axpy_avx2(-1.25, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-12));
    }
}
#endif

TEST_CASE("matvec computes row dots") {
    PhiloxRng rng(3, 2);
    const std::size_t rows = 5, cols = 9;
    auto a = random_vec(rng, rows * cols);
    auto x = random_vec(rng, cols);
    std::vector<double> y(rows);
    kernels::matvec(a.data(), rows, cols, x.data(), y.data());
    for (std::size_t r = 0; r < rows; ++r) {
        double ref = 0;
        for (std::size_t c = 0; c < cols; ++c) ref += a[r * cols + c] * x[c];
        CHECK(y[r] == doctest::Approx(ref).epsilon(1e-13));
    }
}
