// transform.hpp — built-in operator families and the similarity machinery
//
// Four 2x2 families over real parameters (a, b, c):
//   h_original          [[a+ic, ib], [ib, -a+ic]]
//   h_pt_printed        [[-a+c, ib], [ib,  a+c]]
//   h1_pt               [[ a+c, ib], [ib, -a+c]]
//   h_similarity_exact  inverse(S) * h_original * S with the canonical S
// The printed family and the exact similarity image disagree for c != 0
// (different spectra); discrepancy_report exposes both side by side.
#pragma once

#include <string>

#include "ptkit/numerics.hpp"

namespace ptkit {

struct HamiltonianParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

enum class FamilyId { HOriginal, HPtPrinted, H1Pt, HSimilarityExact };

const char* family_name(FamilyId id);
FamilyId family_from_name(const std::string& name);  // throws std::invalid_argument

DenseMatrix build_family(FamilyId id, const HamiltonianParams& p);

// The canonical transform matrix [[0, 1], [-i, 0]].
DenseMatrix canonical_S();

// S^-1 H S. Throws SingularMatrixError / ShapeError.
DenseMatrix similarity(const DenseMatrix& s, const DenseMatrix& h);

struct DiscrepancyReport {
    DenseMatrix exact;    // inverse(S) * h_original * S
    DenseMatrix printed;  // h_pt_printed at the same parameters
    double entry_diff_norm = 0.0;
    bool spectra_equal = false;
};

DiscrepancyReport discrepancy_report(const HamiltonianParams& p);

}  // namespace ptkit
