#ifndef STBC_LINALG_HPP
#define STBC_LINALG_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace stbc {

using cxd = std::complex<double>;

// Dense complex matrix, row-major, double precision.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cxd& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cxd& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cxd>& data() const { return data_; }

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;

    // columns stacked one below the other
    std::vector<cxd> vec() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cxd> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cxd s, const ComplexMatrix& a);

// log2|det A| ... returns log2 of det for a Hermitian positive definite A
// (imaginary part of the determinant is discarded). LU with partial pivoting.
double log2_det_hermitian(const ComplexMatrix& a);

// Dense real matrix, row-major.
struct RealMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Householder QR of a (rows x cols, rows >= cols) applied jointly to y:
// fills r_upper (cols x cols, row-major upper triangular) and qty (first
// cols entries of Q^T y). Returns false when a diagonal pivot collapses
// (rank-deficient input). Scratch grows as needed; reusable across calls.
struct QrScratch {
    std::vector<double> work;  // column-major copy of [A | y]
};
bool qr_reduce(const RealMatrix& a, const double* y, std::vector<double>& r_upper,
               std::vector<double>& qty, QrScratch& scratch);

}  // namespace stbc

#endif
