// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; nothing here may run unless avx2_available() returned true.
#include "stbc/kernels.hpp"

#if defined(__x86_64__)

#include <cpuid.h>
#include <immintrin.h>

namespace stbc::kernels::detail {

bool avx2_available() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    std::size_t n4 = n & ~std::size_t(3);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_fmadd_pd(va, vb, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double out = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (std::size_t i = n4; i < n; ++i) out += a[i] * b[i];
    return out;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    std::size_t n4 = n & ~std::size_t(3);
    __m256d va = _mm256_set1_pd(alpha);
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vx, vy));
    }
    for (std::size_t i = n4; i < n; ++i) y[i] += alpha * x[i];
}

double sum_sq_avx2(const double* a, std::size_t n) {
    std::size_t n4 = n & ~std::size_t(3);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(va, va, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double out = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (std::size_t i = n4; i < n; ++i) out += a[i] * a[i];
    return out;
}

}  // namespace stbc::kernels::detail

#endif  // __x86_64__
