#include "ptkit/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ptkit {

namespace {

void require_square_same(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw ShapeError(std::string(op) + ": square matrices of equal dimension required");
    }
}

double relative_cutoff(const DenseMatrix& h, double tol) {
    return tol * std::max(1.0, frobenius_norm(h));
}

// P conj(H) P^-1, the action of the antilinear PT composite on H.
DenseMatrix pt_image(const DenseMatrix& h, const DenseMatrix& p) {
    return matmul(matmul(p, conj(h)), inverse(p));
}

}  // namespace

const char* symmetry_kind_name(SymmetryKind k) {
    switch (k) {
        case SymmetryKind::LinearCommuting: return "LinearCommuting";
        case SymmetryKind::PTSymmetric: return "PTSymmetric";
        case SymmetryKind::AntiPTSymmetric: return "AntiPTSymmetric";
    }
    return "?";
}

SymmetryOperator SymmetryOperator::linear(DenseMatrix m) {
    if (!m.is_square()) throw ShapeError("SymmetryOperator: square matrix required");
    if (std::abs(det(m)) <= singularity_threshold(m)) {
        throw SingularMatrixError("SymmetryOperator: matrix must be non-singular");
    }
    return SymmetryOperator{std::move(m), false};
}

SymmetryOperator SymmetryOperator::antilinear_op(DenseMatrix m) {
    SymmetryOperator op = linear(std::move(m));
    op.antilinear = true;
    return op;
}

double SymmetryOperator::involution_defect() const {
    const DenseMatrix square =
        antilinear ? matmul(matrix, conj(matrix)) : matmul(matrix, matrix);
    return frobenius_norm(sub(square, DenseMatrix::identity(matrix.rows())));
}

DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b) {
    require_square_same(a, b, "commutator");
    return sub(matmul(a, b), matmul(b, a));
}

DenseMatrix anticommutator(const DenseMatrix& a, const DenseMatrix& b) {
    require_square_same(a, b, "anticommutator");
    return add(matmul(a, b), matmul(b, a));
}

SymmetryVerdict check_linear_symmetry(const DenseMatrix& h, const SymmetryOperator& op,
                                      double tol) {
    if (op.antilinear) {
        throw std::invalid_argument(
            "check_linear_symmetry: antilinear operator passed to a linear check");
    }
    require_square_same(h, op.matrix, "check_linear_symmetry");
    SymmetryVerdict v;
    v.kind = SymmetryKind::LinearCommuting;
    v.residual = frobenius_norm(commutator(h, op.matrix));
    v.holds = v.residual <= relative_cutoff(h, tol);
    return v;
}

SymmetryVerdict check_pt_symmetry(const DenseMatrix& h, const SymmetryOperator& parity,
                                  double tol) {
    if (parity.antilinear) {
        throw std::invalid_argument(
            "check_pt_symmetry: pass the linear parity; conjugation is applied internally");
    }
    require_square_same(h, parity.matrix, "check_pt_symmetry");
    SymmetryVerdict v;
    v.kind = SymmetryKind::PTSymmetric;
    v.residual = frobenius_norm(sub(pt_image(h, parity.matrix), h));
    v.holds = v.residual <= relative_cutoff(h, tol);
    return v;
}

SymmetryVerdict check_anti_pt_symmetry(const DenseMatrix& h, const SymmetryOperator& parity,
                                       double tol) {
    if (parity.antilinear) {
        throw std::invalid_argument(
            "check_anti_pt_symmetry: pass the linear parity; conjugation is applied internally");
    }
    require_square_same(h, parity.matrix, "check_anti_pt_symmetry");
    SymmetryVerdict v;
    v.kind = SymmetryKind::AntiPTSymmetric;
    v.residual = frobenius_norm(add(pt_image(h, parity.matrix), h));
    v.holds = v.residual <= relative_cutoff(h, tol);
    return v;
}

namespace {

SymmetryOperator build_c_like(double a, double b, double diag_sign, const char* name) {
    const double radicand = a * a - b * b;
    if (std::abs(radicand) <= 1e-12 * std::max(1.0, a * a + b * b)) {
        throw ExceptionalPointError(std::string(name) +
                                    ": a^2 - b^2 vanishes, normalization undefined");
    }
    const Complex norm = std::sqrt(Complex(radicand, 0.0));
    DenseMatrix m(2, 2);
    m(0, 0) = Complex(diag_sign * a, 0.0) / norm;
    m(0, 1) = Complex(0.0, b) / norm;
    m(1, 0) = Complex(0.0, b) / norm;
    m(1, 1) = Complex(-diag_sign * a, 0.0) / norm;
    return SymmetryOperator::linear(std::move(m));
}

}  // namespace

SymmetryOperator build_C(double a, double b) { return build_c_like(a, b, +1.0, "build_C"); }

SymmetryOperator build_C_pt(double a, double b) { return build_c_like(a, b, -1.0, "build_C_pt"); }

std::vector<std::pair<SymmetryOperator, SymmetryVerdict>> search_parity(const DenseMatrix& h) {
    if (!h.is_square()) throw ShapeError("search_parity: square matrix required");
    const std::size_t n = h.rows();
    if (n > 4) {
        throw ShapeError("search_parity: supported up to 4x4, got " + std::to_string(n) + "x" +
                         std::to_string(n));
    }

    std::vector<std::pair<SymmetryOperator, SymmetryVerdict>> hits;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs) {
            DenseMatrix p(n, n);
            for (std::size_t row = 0; row < n; ++row) {
                const double s = (signs >> row) & 1u ? -1.0 : 1.0;
                p(row, perm[row]) = Complex(s, 0.0);
            }
            const SymmetryOperator op = SymmetryOperator::linear(p);
            const SymmetryVerdict pt = check_pt_symmetry(h, op);
            if (pt.holds) hits.emplace_back(op, pt);
            const SymmetryVerdict anti = check_anti_pt_symmetry(h, op);
            if (anti.holds) hits.emplace_back(op, anti);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return hits;
}

}  // namespace ptkit
