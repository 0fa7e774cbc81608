// symmetry.hpp — parity / time-reversal / charge-type symmetry operators and checks
//
// An antilinear operator is represented as a linear matrix composed with
// entrywise complex conjugation (the antilinear flag), so each check reduces
// to one matrix identity:
//   linear commutation:  [H, O]           = 0
//   PT-symmetry:         P conj(H) P^-1   = H
//   anti-PT-symmetry:    P conj(H) P^-1   = -H
// Verdicts hold when the residual is at or below tol * max(1, ||H||_F).
#pragma once

#include <utility>
#include <vector>

#include "ptkit/eigen.hpp"
#include "ptkit/numerics.hpp"

namespace ptkit {

struct SymmetryOperator {
    DenseMatrix matrix;      // square, non-singular
    bool antilinear = false; // true = composed with entrywise conjugation

    static SymmetryOperator linear(DenseMatrix m);
    static SymmetryOperator antilinear_op(DenseMatrix m);

    // ||O^2 - I||_F, with the conjugation folded in for antilinear operators.
    // Reported, not asserted: involution status is a property of specific
    // operators (parities, C), not of the representation.
    double involution_defect() const;
};

enum class SymmetryKind { LinearCommuting, PTSymmetric, AntiPTSymmetric };

const char* symmetry_kind_name(SymmetryKind k);

struct SymmetryVerdict {
    SymmetryKind kind = SymmetryKind::LinearCommuting;
    double residual = 0.0;
    bool holds = false;
};

inline constexpr double kSymmetryTolerance = 1e-10;

DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b);      // AB - BA
DenseMatrix anticommutator(const DenseMatrix& a, const DenseMatrix& b);  // AB + BA

SymmetryVerdict check_linear_symmetry(const DenseMatrix& h, const SymmetryOperator& op,
                                      double tol = kSymmetryTolerance);
SymmetryVerdict check_pt_symmetry(const DenseMatrix& h, const SymmetryOperator& parity,
                                  double tol = kSymmetryTolerance);
SymmetryVerdict check_anti_pt_symmetry(const DenseMatrix& h, const SymmetryOperator& parity,
                                       double tol = kSymmetryTolerance);

// C = [[a, ib], [ib, -a]] / sqrt(a^2 - b^2); C_pt flips the diagonal sign.
// The normalization uses the principal complex root when a^2 < b^2.
// Throws ExceptionalPointError when |a^2 - b^2| is below tolerance.
SymmetryOperator build_C(double a, double b);
SymmetryOperator build_C_pt(double a, double b);

// Enumerates all signed permutation matrices (2^N * N! candidates, N <= 4)
// and returns every parity P under which H is PT- or anti-PT-symmetric,
// in a deterministic canonical order (permutations lexicographic, then sign
// patterns in binary counting order; PT verdict before anti-PT per parity).
std::vector<std::pair<SymmetryOperator, SymmetryVerdict>> search_parity(const DenseMatrix& h);

}  // namespace ptkit
