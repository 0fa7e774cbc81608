#include "ptkit/transform.hpp"

#include <cmath>
#include <stdexcept>

#include "ptkit/eigen.hpp"

namespace ptkit {

const char* family_name(FamilyId id) {
    switch (id) {
        case FamilyId::HOriginal: return "h_original";
        case FamilyId::HPtPrinted: return "h_pt_printed";
        case FamilyId::H1Pt: return "h1_pt";
        case FamilyId::HSimilarityExact: return "h_similarity_exact";
    }
    return "?";
}

FamilyId family_from_name(const std::string& name) {
    if (name == "h_original") return FamilyId::HOriginal;
    if (name == "h_pt_printed") return FamilyId::HPtPrinted;
    if (name == "h1_pt") return FamilyId::H1Pt;
    if (name == "h_similarity_exact") return FamilyId::HSimilarityExact;
    throw std::invalid_argument("unknown family '" + name +
                                "' (expected h_original, h_pt_printed, h1_pt, or "
                                "h_similarity_exact)");
}

DenseMatrix build_family(FamilyId id, const HamiltonianParams& p) {
    switch (id) {
        case FamilyId::HOriginal:
            return DenseMatrix{{Complex(p.a, p.c), Complex(0.0, p.b)},
                               {Complex(0.0, p.b), Complex(-p.a, p.c)}};
        case FamilyId::HPtPrinted:
            return DenseMatrix{{Complex(-p.a + p.c, 0.0), Complex(0.0, p.b)},
                               {Complex(0.0, p.b), Complex(p.a + p.c, 0.0)}};
        case FamilyId::H1Pt:
            return DenseMatrix{{Complex(p.a + p.c, 0.0), Complex(0.0, p.b)},
                               {Complex(0.0, p.b), Complex(-p.a + p.c, 0.0)}};
        case FamilyId::HSimilarityExact: {
            const DenseMatrix s = canonical_S();
            return similarity(s, build_family(FamilyId::HOriginal, p));
        }
    }
    throw std::invalid_argument("build_family: invalid family id");
}

DenseMatrix canonical_S() {
    return DenseMatrix{{Complex(0.0, 0.0), Complex(1.0, 0.0)},
                       {Complex(0.0, -1.0), Complex(0.0, 0.0)}};
}

DenseMatrix similarity(const DenseMatrix& s, const DenseMatrix& h) {
    if (!s.is_square() || !h.is_square() || s.rows() != h.rows()) {
        throw ShapeError("similarity: square matrices of equal dimension required");
    }
    return matmul(matmul(inverse(s), h), s);
}

DiscrepancyReport discrepancy_report(const HamiltonianParams& p) {
    DiscrepancyReport r;
    r.exact = build_family(FamilyId::HSimilarityExact, p);
    r.printed = build_family(FamilyId::HPtPrinted, p);
    r.entry_diff_norm = frobenius_norm(sub(r.exact, r.printed));

    const Spectrum exact_spec = eig2_closed(r.exact);
    const Spectrum printed_spec = eig2_closed(r.printed);
    const double scale =
        std::max(1.0, std::max(frobenius_norm(r.exact), frobenius_norm(r.printed)));
    r.spectra_equal =
        spectra_match_distance(exact_spec.eigenvalues, printed_spec.eigenvalues) <=
        1e-9 * scale;
    return r;
}

}  // namespace ptkit
