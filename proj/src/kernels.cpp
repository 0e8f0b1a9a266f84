#include "stbc/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace stbc::kernels {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_sq_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
    return acc;
}

}  // namespace detail

namespace {

Backend select_backend() {
    const char* force = std::getenv("STBC_KERNELS");
#if defined(__x86_64__)
    bool have_avx2 = detail::avx2_available();
#else
    bool have_avx2 = false;
#endif
    if (force != nullptr) {
        if (std::strcmp(force, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(force, "avx2") == 0)
            return have_avx2 ? Backend::avx2 : Backend::scalar;
    }
    return have_avx2 ? Backend::avx2 : Backend::scalar;
}

const Backend g_backend = select_backend();

}  // namespace

Backend active_backend() { return g_backend; }

const char* backend_name() {
    return g_backend == Backend::avx2 ? "avx2" : "scalar";
}

double dot(const double* a, const double* b, std::size_t n) {
#if defined(__x86_64__)
    if (g_backend == Backend::avx2) return detail::dot_avx2(a, b, n);
#endif
    return detail::dot_scalar(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
#if defined(__x86_64__)
    if (g_backend == Backend::avx2) {
        detail::axpy_avx2(alpha, x, y, n);
        return;
    }
#endif
    detail::axpy_scalar(alpha, x, y, n);
}

double sum_sq(const double* a, std::size_t n) {
#if defined(__x86_64__)
    if (g_backend == Backend::avx2) return detail::sum_sq_avx2(a, n);
#endif
    return detail::sum_sq_scalar(a, n);
}

void matvec(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

}  // namespace stbc::kernels
