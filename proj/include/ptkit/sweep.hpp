// sweep.hpp — parameter sweeps: branch tracking, exceptional points, phases
//
// A sweep walks one named parameter over a uniform inclusive grid while the
// remaining family parameters are bound to constants or aliased to the sweep
// value. At each point the matrix is instantiated and its spectrum computed
// (closed form for 2x2, iterative otherwise); eigenvalues are mapped through
// the requested output quantity and assigned to branches by nearest-neighbor
// continuity from the previous grid point.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptkit/eigen.hpp"
#include "ptkit/matrix_template.hpp"
#include "ptkit/transform.hpp"

namespace ptkit {

enum class OutputQuantity {
    Eigenvalue,         // lambda
    EigenvalueSquared,  // lambda^2 (complex square)
    AbsSquared,         // |lambda|^2
    RealSquared,        // (Re lambda)^2
};

const char* quantity_name(OutputQuantity q);
OutputQuantity quantity_from_name(const std::string& name);  // throws std::invalid_argument

struct Binding {
    enum class Kind { Constant, SweepAlias };
    Kind kind = Kind::Constant;
    double value = 0.0;

    static Binding constant(double v) { return {Kind::Constant, v}; }
    static Binding alias() { return {Kind::SweepAlias, 0.0}; }
};

inline constexpr std::size_t kDefaultSteps = 1001;
inline constexpr double kDefaultEpRefineTol = 1e-6;

struct SweepSpec {
    std::variant<FamilyId, HamiltonianTemplate> family;
    std::string sweep_param;
    double lo = 0.0;
    double hi = 1.0;
    std::size_t steps = kDefaultSteps;
    std::map<std::string, Binding> bindings;  // remaining parameters
    OutputQuantity quantity = OutputQuantity::Eigenvalue;

    std::vector<std::string> family_params() const;  // {a, b, c} or template params
    std::string family_label() const;

    // lo < hi, steps >= 2, every family parameter bound exactly once.
    // Throws std::invalid_argument with a description of the violation.
    void validate() const;
};

enum class PhaseLabel { RealSplit, ImaginarySplit, Degenerate, Mixed };

const char* phase_name(PhaseLabel p);
PhaseLabel phase_from_name(const std::string& name);  // throws std::invalid_argument

struct SweepResult {
    std::vector<double> grid;
    std::vector<std::vector<Complex>> branches;  // branches[k][i] at grid[i]
    std::vector<PhaseLabel> phases;
    std::vector<double> exceptional_points;  // within [lo, hi], ascending
    std::vector<double> asymmetry;           // NaN where the mirror point is undefined
    std::optional<std::pair<double, double>> asymmetry_window;
};

// Full pipeline; exceptional points are located at the default refinement
// tolerance. Grid-point failures are rethrown as SweepError with the index.
SweepResult run_sweep(const SweepSpec& spec);

// Scan the grid for spectral-gap coalescence candidates (split-character sign
// changes and local gap minima), refine each by bisection to refine_tol, and
// deduplicate. Empty when the range holds no exceptional point.
std::vector<double> find_exceptional_points(const SweepSpec& spec,
                                            double refine_tol = kDefaultEpRefineTol);

// d = lambda_+ - lambda_-:  Degenerate if |d| <= tol; RealSplit if
// |Im d| <= tol * |d|; ImaginarySplit if |Re d| <= tol * |d|; else Mixed.
// Spectra longer than 2 are labeled by pairwise majority.
PhaseLabel classify_phase(const Spectrum& s, double tol);

// A(t) = max over branches of |Re q(t) - Re q(-t)| + |Im q(t) - Im q(-t)|,
// branches matched by continuity through t = 0. Defined only on the symmetric
// sub-interval around 0; NaN elsewhere. window_out receives the sub-interval
// used (nullopt when the range does not straddle 0).
std::vector<double> asymmetry_metric(
    const std::vector<double>& grid, const std::vector<std::vector<Complex>>& branches,
    std::optional<std::pair<double, double>>* window_out = nullptr);

// The four shipped presets over the h1_pt family, 1001 grid points:
//   1: a=8,  c=-3,  b in [0, 10]
//   2: a=20, c=b,   b in [-10, 0]
//   3: a=8,  c=b,   b in [-10, 10]
//   4: a=20, c=b,   b in [-10, 10], eigenvalues squared
// Throws std::out_of_range for any other case number.
SweepSpec preset_case(int n);

// Matrix / spectrum of the spec's family at one sweep-parameter value.
DenseMatrix matrix_at(const SweepSpec& spec, double t);
Spectrum spectrum_at(const SweepSpec& spec, double t);

}  // namespace ptkit
