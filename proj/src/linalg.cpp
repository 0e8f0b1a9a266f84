#include "stbc/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "stbc/kernels.hpp"

namespace stbc {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

std::vector<cxd> ComplexMatrix::vec() const {
    std::vector<cxd> v(rows_ * cols_);
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols_; ++c)
        for (std::size_t r = 0; r < rows_; ++r) v[k++] = (*this)(r, c);
    return v;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    ComplexMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cxd aik = a(i, k);
            if (aik == cxd{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum shape mismatch");
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference shape mismatch");
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

ComplexMatrix operator*(cxd s, const ComplexMatrix& a) {
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

double log2_det_hermitian(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = a.rows();
    ComplexMatrix lu = a;
    double log2det = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(lu(r, k)) > best) {
                best = std::abs(lu(r, k));
                piv = r;
            }
        if (best == 0.0) return -std::numeric_limits<double>::infinity();
        if (piv != k)
            for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
        log2det += std::log2(std::abs(lu(k, k)));
        for (std::size_t r = k + 1; r < n; ++r) {
            cxd f = lu(r, k) / lu(k, k);
            for (std::size_t c = k; c < n; ++c) lu(r, c) -= f * lu(k, c);
        }
    }
    return log2det;
}

bool qr_reduce(const RealMatrix& a, const double* y, std::vector<double>& r_upper,
               std::vector<double>& qty, QrScratch& scratch) {
    const std::size_t m = a.rows;
    const std::size_t n = a.cols;
    if (m < n) throw std::invalid_argument("qr_reduce requires rows >= cols");

    // column-major working copy of [A | y]
    auto& w = scratch.work;
    w.assign(m * (n + 1), 0.0);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < m; ++r) w[c * m + r] = a.at(r, c);
    for (std::size_t r = 0; r < m; ++r) w[n * m + r] = y[r];

    for (std::size_t k = 0; k < n; ++k) {
        double* col = &w[k * m];
        const std::size_t len = m - k;
        double sigma = kernels::sum_sq(col + k, len);
        double norm = std::sqrt(sigma);
        if (norm < 1e-12) return false;
        double alpha = (col[k] >= 0.0) ? -norm : norm;
        // Householder vector v = x - alpha*e1, scaled so v[0] = 1; its tail
        // is kept in col[k+1..] for application to the remaining columns
        double v0 = col[k] - alpha;
        col[k] = alpha;
        for (std::size_t r = k + 1; r < m; ++r) col[r] /= v0;
        double vtv = 1.0 + kernels::sum_sq(col + k + 1, len - 1);
        double tau = 2.0 / vtv;
        for (std::size_t c = k + 1; c <= n; ++c) {
            double* tgt = &w[c * m];
            double proj = tgt[k] + kernels::dot(col + k + 1, tgt + k + 1, len - 1);
            proj *= tau;
            tgt[k] -= proj;
            kernels::axpy(-proj, col + k + 1, tgt + k + 1, len - 1);
        }
    }

    r_upper.assign(n * n, 0.0);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r <= c; ++r) r_upper[r * n + c] = w[c * m + r];
    qty.assign(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) qty[r] = w[n * m + r];
    return true;
}

}  // namespace stbc
