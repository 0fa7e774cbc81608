// report.hpp — CSV / JSON / SVG serialization of sweep results and verdicts
//
// All floating-point values are written with 17 significant digits so text
// output round-trips binary64 losslessly. Writers are deterministic: the same
// bundle always serializes to the same bytes.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptkit/sweep.hpp"
#include "ptkit/symmetry.hpp"

namespace ptkit {

// A named symmetry check result, e.g. {"pt", "diag(-1,1)", verdict}.
struct VerdictEntry {
    std::string check;
    std::string parity;  // empty when not applicable
    SymmetryVerdict verdict;
    std::optional<double> involution_defect;
};

struct ReportMetadata {
    enum class Kind { Sweep, Classify };
    Kind kind = Kind::Sweep;
    std::string family;  // family id or "template:<name>"
    std::string tool_version;

    // Sweep fields
    std::string sweep_param;
    double lo = 0.0, hi = 0.0;
    std::size_t steps = 0;
    std::map<std::string, Binding> bindings;
    OutputQuantity quantity = OutputQuantity::Eigenvalue;
    std::optional<std::pair<double, double>> asymmetry_window;

    // Classify fields
    std::map<std::string, double> assignment;
    std::string parity_mode;
};

struct ReportBundle {
    ReportMetadata metadata;
    std::variant<SweepResult, std::vector<VerdictEntry>> payload;
};

ReportBundle make_sweep_bundle(const SweepSpec& spec, SweepResult result);
ReportBundle make_classify_bundle(std::string family_label,
                                  std::map<std::string, double> assignment,
                                  std::string parity_mode, std::vector<VerdictEntry> verdicts);

// Header: param,re_l1,im_l1,re_l2,im_l2,phase,asymmetry (extended past l2 for
// wider spectra). Requires a sweep payload.
std::string to_csv(const ReportBundle& r);

// Top-level keys for sweep payloads: metadata, grid, branches, phases,
// exceptional_points, asymmetry. Verdict payloads carry metadata + verdicts.
std::string to_json(const ReportBundle& r);

enum class SvgComponent { Re, Im, Both };

// Standalone 800x600 SVG: one polyline per branch per selected component,
// axes with tick labels, vertical dashed exceptional-point markers, legend.
std::string to_svg(const ReportBundle& r, SvgComponent which = SvgComponent::Both);

// %.17g, with NaN rendered as "nan".
std::string format_double(double v);

}  // namespace ptkit
