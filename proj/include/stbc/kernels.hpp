#ifndef STBC_KERNELS_HPP
#define STBC_KERNELS_HPP

#include <cstddef>

// Double-precision kernels behind the simulator's linear algebra.
// A scalar reference implementation always exists; on x86-64 an AVX2+FMA
// variant is selected at runtime when the CPU supports it. The environment
// variable STBC_KERNELS=scalar|avx2 forces a backend (avx2 falls back to
// scalar when unsupported).
namespace stbc::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name();

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

// sum_i a[i]^2
double sum_sq(const double* a, std::size_t n);

// y = A x, A row-major (rows x cols)
void matvec(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y);

namespace detail {
// Reference implementations, exposed for equivalence tests.
double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
double sum_sq_scalar(const double* a, std::size_t n);

#if defined(__x86_64__)
bool avx2_available();
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
double sum_sq_avx2(const double* a, std::size_t n);
#endif
}  // namespace detail

}  // namespace stbc::kernels

#endif
