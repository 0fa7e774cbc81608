#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "ptkit/numerics.hpp"

using namespace ptkit;

namespace {

DenseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                          double span = 10.0) {
    std::uniform_real_distribution<double> dist(-span, span);
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

}  // namespace

TEST_CASE("matmul identity and hand-checked products") {
    std::mt19937 rng(7);
    const DenseMatrix m = random_matrix(rng, 2, 2);
    CHECK(approx_equal(matmul(DenseMatrix::identity(2), m), m, 0.0));

    // S * S^-1 for the canonical transform matrix
    const DenseMatrix s{{Complex(0, 0), Complex(1, 0)}, {Complex(0, -1), Complex(0, 0)}};
    const DenseMatrix s_inv{{Complex(0, 0), Complex(0, 1)}, {Complex(1, 0), Complex(0, 0)}};
    CHECK(approx_equal(matmul(s, s_inv), DenseMatrix::identity(2), 0.0));

    const DenseMatrix parity{{Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(-1, 0)}};
    CHECK(approx_equal(matmul(parity, parity), DenseMatrix::identity(2), 0.0));
}

TEST_CASE("matmul rejects mismatched inner dimensions") {
    std::mt19937 rng(8);
    const DenseMatrix a = random_matrix(rng, 2, 3);
    const DenseMatrix b = random_matrix(rng, 2, 3);
    CHECK_THROWS_AS(matmul(a, b), ShapeError);
}

TEST_CASE("add, sub, scale") {
    std::mt19937 rng(9);
    const DenseMatrix m = random_matrix(rng, 3, 3);
    CHECK(approx_equal(add(m, DenseMatrix::zero(3, 3)), m, 0.0));
    CHECK(approx_equal(add(m, scale(m, Complex(-1, 0))), DenseMatrix::zero(3, 3), 0.0));

    // 1/sqrt(a^2 - b^2) at a=8, b=0
    const DenseMatrix eighth = scale(DenseMatrix::identity(2), Complex(1.0 / 8.0, 0.0));
    CHECK(eighth(0, 0) == Complex(0.125, 0.0));
    CHECK(eighth(0, 1) == Complex(0.0, 0.0));

    CHECK_THROWS_AS(add(m, DenseMatrix::zero(2, 2)), ShapeError);
    CHECK_THROWS_AS(scale(m, Complex(std::numeric_limits<double>::infinity(), 0.0)),
                    std::invalid_argument);
}

TEST_CASE("conj is the entrywise conjugate and an involution") {
    const DenseMatrix real_m{{Complex(1, 0), Complex(2, 0)}, {Complex(3, 0), Complex(4, 0)}};
    CHECK(approx_equal(conj(real_m), real_m, 0.0));

    // [[a+ic, ib], [ib, -a+ic]] at a=8, b=2, c=-3
    const DenseMatrix h{{Complex(8, -3), Complex(0, 2)}, {Complex(0, 2), Complex(-8, -3)}};
    const DenseMatrix hc = conj(h);
    CHECK(hc(0, 0) == Complex(8, 3));
    CHECK(hc(0, 1) == Complex(0, -2));
    CHECK(hc(1, 1) == Complex(-8, 3));

    std::mt19937 rng(10);
    const DenseMatrix m = random_matrix(rng, 4, 4);
    CHECK(approx_equal(conj(conj(m)), m, 0.0));
}

TEST_CASE("inverse closed form and error cases") {
    CHECK(approx_equal(inverse(DenseMatrix::identity(2)), DenseMatrix::identity(2), 0.0));

    const DenseMatrix s{{Complex(0, 0), Complex(1, 0)}, {Complex(0, -1), Complex(0, 0)}};
    const DenseMatrix s_inv = inverse(s);
    CHECK(s_inv(0, 0) == Complex(0, 0));
    CHECK(s_inv(0, 1) == Complex(0, 1));
    CHECK(s_inv(1, 0) == Complex(1, 0));
    CHECK(s_inv(1, 1) == Complex(0, 0));

    CHECK_THROWS_AS(inverse(DenseMatrix::zero(2, 2)), SingularMatrixError);
    CHECK_THROWS_AS(inverse(DenseMatrix::zero(3, 3)), SingularMatrixError);
    std::mt19937 rng(11);
    CHECK_THROWS_AS(inverse(random_matrix(rng, 2, 3)), ShapeError);
}

TEST_CASE("inverse residual on random well-conditioned matrices") {
    std::mt19937 rng(12);
    for (std::size_t n = 2; n <= 6; ++n) {
        int produced = 0;
        while (produced < 25) {
            const DenseMatrix a = random_matrix(rng, n, n, 1.0);
            DenseMatrix a_inv;
            try {
                a_inv = inverse(a);
            } catch (const SingularMatrixError&) {
                continue;
            }
            if (frobenius_norm(a) * frobenius_norm(a_inv) > 1e3) continue;  // ill-conditioned
            ++produced;
            const DenseMatrix residual = sub(matmul(a, a_inv), DenseMatrix::identity(n));
            CHECK(frobenius_norm(residual) <= 1e-10 * frobenius_norm(a));
        }
    }
}

TEST_CASE("frobenius norm values") {
    CHECK(frobenius_norm(DenseMatrix::zero(3, 2)) == 0.0);
    CHECK(frobenius_norm(DenseMatrix::identity(2)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const DenseMatrix parity{{Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(-1, 0)}};
    CHECK(frobenius_norm(parity) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("det and trace") {
    const DenseMatrix s{{Complex(0, 0), Complex(1, 0)}, {Complex(0, -1), Complex(0, 0)}};
    CHECK(det(s) == Complex(0, 1));
    CHECK(det(DenseMatrix::identity(2)) == Complex(1, 0));

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int k = 0; k < 50; ++k) {
        const double a = dist(rng), b = dist(rng), c = dist(rng);
        const DenseMatrix h{{Complex(a, c), Complex(0, b)}, {Complex(0, b), Complex(-a, c)}};
        CHECK(std::abs(trace(h) - Complex(0, 2 * c)) <= 1e-14 * std::max(1.0, std::abs(c)));
    }

    CHECK_THROWS_AS(det(random_matrix(rng, 2, 3)), ShapeError);
    CHECK_THROWS_AS(trace(random_matrix(rng, 3, 2)), ShapeError);
}

TEST_CASE("det via elimination matches cofactor expansion on 3x3") {
    std::mt19937 rng(14);
    for (int k = 0; k < 50; ++k) {
        const DenseMatrix m = random_matrix(rng, 3, 3, 2.0);
        const Complex expected = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                                 m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                                 m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        CHECK(std::abs(det(m) - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("matmul associativity within 1e-12 relative") {
    std::mt19937 rng(15);
    for (int k = 0; k < 100; ++k) {
        const DenseMatrix a = random_matrix(rng, 3, 4, 2.0);
        const DenseMatrix b = random_matrix(rng, 4, 2, 2.0);
        const DenseMatrix c = random_matrix(rng, 2, 3, 2.0);
        const DenseMatrix left = matmul(matmul(a, b), c);
        const DenseMatrix right = matmul(a, matmul(b, c));
        CHECK(frobenius_norm(sub(left, right)) <= 1e-12 * std::max(1.0, frobenius_norm(left)));
    }
}

TEST_CASE("conj distributes over products within 1e-12") {
    std::mt19937 rng(16);
    for (int k = 0; k < 100; ++k) {
        const DenseMatrix a = random_matrix(rng, 3, 3, 3.0);
        const DenseMatrix b = random_matrix(rng, 3, 3, 3.0);
        const DenseMatrix lhs = conj(matmul(a, b));
        const DenseMatrix rhs = matmul(conj(a), conj(b));
        CHECK(frobenius_norm(sub(lhs, rhs)) <= 1e-12 * std::max(1.0, frobenius_norm(lhs)));
    }
}

TEST_CASE("constructors enforce the finiteness and shape invariants") {
    CHECK_THROWS_AS(DenseMatrix(0, 2), ShapeError);
    CHECK_THROWS_AS(DenseMatrix(2, 2, std::vector<Complex>(3)), ShapeError);
    std::vector<Complex> bad(4, Complex(0, 0));
    bad[2] = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(DenseMatrix(2, 2, bad), std::invalid_argument);
    std::vector<Complex> inf_entry(4, Complex(0, 0));
    inf_entry[0] = Complex(0.0, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(DenseMatrix(2, 2, inf_entry), std::invalid_argument);
}
