// eigen.hpp — eigenvalue computation for small dense complex matrices
//
// Two routes: eig2_closed solves 2x2 via the quadratic formula with the
// principal complex square root; eig_iterative is a general dense solver used
// as an independent cross-check. Both return eigenvalues in canonical order
// (Re descending, then Im descending).
#pragma once

#include <vector>

#include "ptkit/numerics.hpp"

namespace ptkit {

// Eigenvalues in canonical order; degenerate is set when the minimum pairwise
// gap is at or below kCoalescenceFactor * max(1, ||M||_F).
struct Spectrum {
    std::vector<Complex> eigenvalues;
    bool degenerate = false;
};

inline constexpr double kCoalescenceFactor = 1e-8;

Spectrum eig2_closed(const DenseMatrix& m);
Spectrum eig_iterative(const DenseMatrix& m);

// Minimum pairwise |lambda_i - lambda_j|; requires at least two eigenvalues.
double spectral_gap(const Spectrum& s);

// Smallest achievable max pointwise distance over eigenvalue pairings.
// Exact (all permutations); sizes up to 8.
double spectra_match_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

// Re descending, then Im descending.
void sort_canonical(std::vector<Complex>& eigenvalues);

}  // namespace ptkit
