// numerics.hpp — complex scalars and small dense complex matrices
//
// Row-major dense storage, sizes small (N <= 8 in practice). Every entry must
// be finite; constructors and operations reject NaN/Inf. All operations are
// pure functions returning new values, safe for unrestricted concurrent use.
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ptkit/errors.hpp"

namespace ptkit {

using Complex = std::complex<double>;

class DenseMatrix {
  public:
    DenseMatrix() = default;  // empty sentinel, 0x0
    DenseMatrix(std::size_t rows, std::size_t cols);  // zero-filled
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const Complex& operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    const std::vector<Complex>& entries() const noexcept { return entries_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix sub(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, Complex k);
DenseMatrix conj(const DenseMatrix& a);
DenseMatrix inverse(const DenseMatrix& a);
double frobenius_norm(const DenseMatrix& a);
Complex det(const DenseMatrix& a);
Complex trace(const DenseMatrix& a);

// ||a - b||_F <= tol
bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double tol);

// |det| at or below this flags the matrix as singular: 1e-12 * max(1, ||A||_F^2).
double singularity_threshold(const DenseMatrix& a);

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) { return matmul(a, b); }
inline DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) { return add(a, b); }
inline DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) { return sub(a, b); }

}  // namespace ptkit
