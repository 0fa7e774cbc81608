#include "ptkit/eigen.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ptkit {

namespace {

constexpr std::size_t kMaxIterativeDim = 8;

bool canonical_less(Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
}

bool degenerate_flag(const std::vector<Complex>& vals, double matrix_norm) {
    if (vals.size() < 2) return false;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            min_gap = std::min(min_gap, std::abs(vals[i] - vals[j]));
    return min_gap <= kCoalescenceFactor * std::max(1.0, matrix_norm);
}

}  // namespace

void sort_canonical(std::vector<Complex>& eigenvalues) {
    std::sort(eigenvalues.begin(), eigenvalues.end(), canonical_less);
}

Spectrum eig2_closed(const DenseMatrix& m) {
    if (!m.is_square() || m.rows() != 2) {
        throw ShapeError("eig2_closed: 2x2 matrix required, got " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
    }
    const Complex mean = trace(m) / 2.0;
    const Complex d = det(m);
    Complex disc = mean * mean - d;
    // Pin the branch cut: a signed-zero imaginary part must not flip the
    // principal root onto the negative-imaginary side.
    if (disc.imag() == 0.0) disc = Complex(disc.real(), 0.0);
    const Complex root = std::sqrt(disc);

    Spectrum s;
    s.eigenvalues = {mean + root, mean - root};
    sort_canonical(s.eigenvalues);
    s.degenerate = degenerate_flag(s.eigenvalues, frobenius_norm(m));
    return s;
}

Spectrum eig_iterative(const DenseMatrix& m) {
    if (!m.is_square() || m.rows() == 0) {
        throw ShapeError("eig_iterative: square matrix required");
    }
    if (m.rows() > kMaxIterativeDim) {
        throw ShapeError("eig_iterative: dimension " + std::to_string(m.rows()) +
                         " exceeds the supported maximum of 8");
    }
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
    solver.setMaxIterations(static_cast<Eigen::Index>(100 * m.rows() * m.rows()));
    solver.compute(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eig_iterative: QR iteration did not converge within the cap");
    }

    Spectrum s;
    s.eigenvalues.reserve(m.rows());
    for (Eigen::Index i = 0; i < n; ++i) s.eigenvalues.push_back(solver.eigenvalues()(i));
    sort_canonical(s.eigenvalues);
    s.degenerate = degenerate_flag(s.eigenvalues, frobenius_norm(m));
    return s;
}

double spectral_gap(const Spectrum& s) {
    if (s.eigenvalues.size() < 2) {
        throw ShapeError("spectral_gap: at least two eigenvalues required");
    }
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        for (std::size_t j = i + 1; j < s.eigenvalues.size(); ++j)
            min_gap = std::min(min_gap, std::abs(s.eigenvalues[i] - s.eigenvalues[j]));
    return min_gap;
}

double spectra_match_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) {
        throw ShapeError("spectra_match_distance: size mismatch");
    }
    if (a.empty()) return 0.0;
    if (a.size() > 8) {
        throw ShapeError("spectra_match_distance: supported up to 8 eigenvalues");
    }
    std::vector<std::size_t> idx(a.size());
    std::iota(idx.begin(), idx.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[idx[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

}  // namespace ptkit
