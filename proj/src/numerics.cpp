#include "ptkit/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

namespace ptkit {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite_entries(const std::vector<Complex>& entries, const char* where) {
    for (const Complex& z : entries) {
        if (!finite(z)) {
            throw std::invalid_argument(std::string(where) + ": non-finite matrix entry");
        }
    }
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(op) + ": shape mismatch (" + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()) + ")");
    }
}

void require_square(const DenseMatrix& a, const char* op) {
    if (!a.is_square() || a.rows() == 0) {
        throw ShapeError(std::string(op) + ": square matrix required, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("DenseMatrix: dimensions must be positive");
    }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("DenseMatrix: dimensions must be positive");
    }
    if (entries_.size() != rows * cols) {
        throw ShapeError("DenseMatrix: entry count " + std::to_string(entries_.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    require_finite_entries(entries_, "DenseMatrix");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) {
        throw ShapeError("DenseMatrix: dimensions must be positive");
    }
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw ShapeError("DenseMatrix: ragged initializer rows");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    require_finite_entries(entries_, "DenseMatrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
}

DenseMatrix DenseMatrix::zero(std::size_t rows, std::size_t cols) {
    return DenseMatrix(rows, cols);
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + ")");
    }
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
    require_finite_entries(out.entries(), "matmul");
    return out;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "add");
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    require_finite_entries(out.entries(), "add");
    return out;
}

DenseMatrix sub(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "sub");
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    require_finite_entries(out.entries(), "sub");
    return out;
}

DenseMatrix scale(const DenseMatrix& a, Complex k) {
    if (!finite(k)) throw std::invalid_argument("scale: non-finite factor");
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = k * a(i, j);
    require_finite_entries(out.entries(), "scale");
    return out;
}

DenseMatrix conj(const DenseMatrix& a) {
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = std::conj(a(i, j));
    return out;
}

double frobenius_norm(const DenseMatrix& a) {
    double sum = 0.0;
    for (const Complex& z : a.entries()) sum += std::norm(z);
    return std::sqrt(sum);
}

double singularity_threshold(const DenseMatrix& a) {
    const double nrm = frobenius_norm(a);
    return 1e-12 * std::max(1.0, nrm * nrm);
}

Complex det(const DenseMatrix& a) {
    require_square(a, "det");
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);

    // LU with partial pivoting; det = sign * product of pivots.
    DenseMatrix lu = a;
    Complex d(1.0, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(lu(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) return Complex(0.0, 0.0);
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(pivot, j));
            d = -d;
        }
        d *= lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = lu(r, col) / lu(col, col);
            for (std::size_t j = col; j < n; ++j) lu(r, j) -= f * lu(col, j);
        }
    }
    return d;
}

Complex trace(const DenseMatrix& a) {
    require_square(a, "trace");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

DenseMatrix inverse(const DenseMatrix& a) {
    require_square(a, "inverse");
    const std::size_t n = a.rows();
    const Complex d = det(a);
    if (std::abs(d) <= singularity_threshold(a)) {
        throw SingularMatrixError("inverse: matrix is singular (|det| = " +
                                  std::to_string(std::abs(d)) + ")");
    }

    if (n == 2) {
        DenseMatrix out(2, 2);
        out(0, 0) = a(1, 1) / d;
        out(0, 1) = -a(0, 1) / d;
        out(1, 0) = -a(1, 0) / d;
        out(1, 1) = a(0, 0) / d;
        require_finite_entries(out.entries(), "inverse");
        return out;
    }

    // Gauss-Jordan with partial pivoting on [A | I].
    DenseMatrix work = a;
    DenseMatrix out = DenseMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(work(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(work(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) throw SingularMatrixError("inverse: zero pivot column");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(col, j), work(pivot, j));
                std::swap(out(col, j), out(pivot, j));
            }
        }
        const Complex p = work(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) /= p;
            out(col, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Complex f = work(r, col);
            if (f == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= f * work(col, j);
                out(r, j) -= f * out(col, j);
            }
        }
    }
    require_finite_entries(out.entries(), "inverse");
    return out;
}

bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return frobenius_norm(sub(a, b)) <= tol;
}

}  // namespace ptkit
