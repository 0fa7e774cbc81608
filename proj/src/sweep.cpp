#include "ptkit/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace ptkit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Complex apply_quantity(Complex lambda, OutputQuantity q) {
    switch (q) {
        case OutputQuantity::Eigenvalue: return lambda;
        case OutputQuantity::EigenvalueSquared: return lambda * lambda;
        case OutputQuantity::AbsSquared: return Complex(std::norm(lambda), 0.0);
        case OutputQuantity::RealSquared: return Complex(lambda.real() * lambda.real(), 0.0);
    }
    return lambda;
}

std::vector<double> make_grid(double lo, double hi, std::size_t steps) {
    std::vector<double> grid(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        grid[k] = lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(steps - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

// Difference of the closest eigenvalue pair, canonical-order first minus second.
Complex closest_pair_difference(const Spectrum& s) {
    const auto& v = s.eigenvalues;
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            const double gap = std::abs(v[i] - v[j]);
            if (gap < best) {
                best = gap;
                bi = i;
                bj = j;
            }
        }
    }
    return v[bi] - v[bj];
}

// |Re d| - |Im d| of the closest pair: positive in a real-split region,
// negative in an imaginary-split region, zero at coalescence.
double split_character(const Spectrum& s) {
    const Complex d = closest_pair_difference(s);
    return std::abs(d.real()) - std::abs(d.imag());
}

PhaseLabel classify_pair(Complex x, Complex y, double tol) {
    const Complex d = x - y;
    const double mag = std::abs(d);
    if (mag <= tol) return PhaseLabel::Degenerate;
    if (std::abs(d.imag()) <= tol * mag) return PhaseLabel::RealSplit;
    if (std::abs(d.real()) <= tol * mag) return PhaseLabel::ImaginarySplit;
    return PhaseLabel::Mixed;
}

// Assign current (canonical-order) values to branches by nearest-neighbor
// continuity. Two branches get the optimal pairing with ties resolved toward
// the canonical order; more branches are matched greedily in branch order.
std::vector<Complex> match_branches(const std::vector<Complex>& prev,
                                    const std::vector<Complex>& cur) {
    const std::size_t n = cur.size();
    if (n == 2) {
        const double cost_id = std::abs(prev[0] - cur[0]) + std::abs(prev[1] - cur[1]);
        const double cost_swap = std::abs(prev[0] - cur[1]) + std::abs(prev[1] - cur[0]);
        const double eps = 1e-12 * std::max(1.0, cost_id);
        if (cost_swap + eps < cost_id) return {cur[1], cur[0]};
        return cur;
    }
    std::vector<Complex> out(n);
    std::vector<bool> used(n, false);
    for (std::size_t b = 0; b < n; ++b) {
        std::size_t pick = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double dist = std::abs(prev[b] - cur[j]);
            if (dist < best) {
                best = dist;
                pick = j;
            }
        }
        used[pick] = true;
        out[b] = cur[pick];
    }
    return out;
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double width_tol) {
    constexpr double kRatio = 0.6180339887498949;
    double c = b - kRatio * (b - a);
    double d = a + kRatio * (b - a);
    double fc = f(c), fd = f(d);
    for (int iter = 0; iter < 400 && (b - a) > width_tol; ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kRatio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kRatio * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

const char* quantity_name(OutputQuantity q) {
    switch (q) {
        case OutputQuantity::Eigenvalue: return "eigenvalue";
        case OutputQuantity::EigenvalueSquared: return "eigenvalue_squared";
        case OutputQuantity::AbsSquared: return "abs_squared";
        case OutputQuantity::RealSquared: return "real_squared";
    }
    return "?";
}

OutputQuantity quantity_from_name(const std::string& name) {
    if (name == "eig" || name == "eigenvalue") return OutputQuantity::Eigenvalue;
    if (name == "eig2" || name == "eigenvalue_squared") return OutputQuantity::EigenvalueSquared;
    if (name == "abs2" || name == "abs_squared") return OutputQuantity::AbsSquared;
    if (name == "re2" || name == "real_squared") return OutputQuantity::RealSquared;
    throw std::invalid_argument("unknown output quantity '" + name +
                                "' (expected eig, eig2, abs2, or re2)");
}

const char* phase_name(PhaseLabel p) {
    switch (p) {
        case PhaseLabel::RealSplit: return "RealSplit";
        case PhaseLabel::ImaginarySplit: return "ImaginarySplit";
        case PhaseLabel::Degenerate: return "Degenerate";
        case PhaseLabel::Mixed: return "Mixed";
    }
    return "?";
}

PhaseLabel phase_from_name(const std::string& name) {
    if (name == "RealSplit") return PhaseLabel::RealSplit;
    if (name == "ImaginarySplit") return PhaseLabel::ImaginarySplit;
    if (name == "Degenerate") return PhaseLabel::Degenerate;
    if (name == "Mixed") return PhaseLabel::Mixed;
    throw std::invalid_argument("unknown phase label '" + name + "'");
}

std::vector<std::string> SweepSpec::family_params() const {
    if (std::holds_alternative<FamilyId>(family)) return {"a", "b", "c"};
    return std::get<HamiltonianTemplate>(family).params;
}

std::string SweepSpec::family_label() const {
    if (std::holds_alternative<FamilyId>(family)) {
        return family_name(std::get<FamilyId>(family));
    }
    return "template:" + std::get<HamiltonianTemplate>(family).name;
}

void SweepSpec::validate() const {
    if (sweep_param.empty()) throw std::invalid_argument("sweep: sweep parameter is required");
    if (!(lo < hi)) throw std::invalid_argument("sweep: range requires lo < hi");
    if (steps < 2) throw std::invalid_argument("sweep: at least 2 steps required");

    const std::vector<std::string> params = family_params();
    const auto known = [&](const std::string& name) {
        return std::find(params.begin(), params.end(), name) != params.end();
    };
    if (!known(sweep_param)) {
        throw std::invalid_argument("sweep: '" + sweep_param + "' is not a parameter of " +
                                    family_label());
    }
    for (const auto& [name, binding] : bindings) {
        (void)binding;
        if (!known(name)) {
            throw std::invalid_argument("sweep: binding for unknown parameter '" + name + "'");
        }
        if (name == sweep_param) {
            throw std::invalid_argument("sweep: sweep parameter '" + name +
                                        "' must not also be bound");
        }
    }
    for (const std::string& p : params) {
        if (p != sweep_param && bindings.find(p) == bindings.end()) {
            throw std::invalid_argument("sweep: parameter '" + p + "' is unbound");
        }
    }
}

DenseMatrix matrix_at(const SweepSpec& spec, double t) {
    std::map<std::string, double> assignment;
    assignment[spec.sweep_param] = t;
    for (const auto& [name, binding] : spec.bindings) {
        assignment[name] = binding.kind == Binding::Kind::SweepAlias ? t : binding.value;
    }
    if (std::holds_alternative<FamilyId>(spec.family)) {
        const HamiltonianParams p{assignment.at("a"), assignment.at("b"), assignment.at("c")};
        return build_family(std::get<FamilyId>(spec.family), p);
    }
    return instantiate(std::get<HamiltonianTemplate>(spec.family), assignment);
}

Spectrum spectrum_at(const SweepSpec& spec, double t) {
    const DenseMatrix m = matrix_at(spec, t);
    return m.rows() == 2 ? eig2_closed(m) : eig_iterative(m);
}

std::vector<double> asymmetry_metric(
    const std::vector<double>& grid, const std::vector<std::vector<Complex>>& branches,
    std::optional<std::pair<double, double>>* window_out) {
    std::vector<double> result(grid.size(), kNaN);
    if (window_out) *window_out = std::nullopt;
    if (grid.size() < 2) return result;

    const double lo = grid.front();
    const double hi = grid.back();
    if (!(lo < 0.0 && hi > 0.0)) return result;  // no mirror points

    const double m = std::min(-lo, hi);
    if (window_out) *window_out = std::make_pair(-m, m);
    const double h = (hi - lo) / static_cast<double>(grid.size() - 1);
    const double eps = 1e-9 * (hi - lo);

    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid[k];
        if (std::abs(t) > m + eps) continue;
        const auto j_signed = std::llround((-t - lo) / h);
        if (j_signed < 0 || j_signed >= static_cast<long long>(grid.size())) continue;
        const auto j = static_cast<std::size_t>(j_signed);
        if (std::abs(grid[j] + t) > eps) continue;

        double worst = 0.0;
        for (const auto& branch : branches) {
            const Complex q_here = branch[k];
            const Complex q_mirror = branch[j];
            worst = std::max(worst, std::abs(q_here.real() - q_mirror.real()) +
                                        std::abs(q_here.imag() - q_mirror.imag()));
        }
        result[k] = worst;
    }
    return result;
}

PhaseLabel classify_phase(const Spectrum& s, double tol) {
    const std::size_t n = s.eigenvalues.size();
    if (n < 2) throw ShapeError("classify_phase: at least two eigenvalues required");
    if (n == 2) return classify_pair(s.eigenvalues[0], s.eigenvalues[1], tol);

    // Pairwise majority; ties fall back to Mixed.
    std::size_t counts[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            ++counts[static_cast<std::size_t>(classify_pair(s.eigenvalues[i], s.eigenvalues[j], tol))];
    std::size_t best = 0;
    bool tie = false;
    for (std::size_t k = 1; k < 4; ++k) {
        if (counts[k] > counts[best]) {
            best = k;
            tie = false;
        } else if (counts[k] == counts[best]) {
            tie = true;
        }
    }
    return tie ? PhaseLabel::Mixed : static_cast<PhaseLabel>(best);
}

std::vector<double> find_exceptional_points(const SweepSpec& spec, double refine_tol) {
    spec.validate();
    if (!(refine_tol > 0.0)) {
        throw std::invalid_argument("find_exceptional_points: refine_tol must be positive");
    }

    const std::vector<double> grid = make_grid(spec.lo, spec.hi, spec.steps);
    const double h = (spec.hi - spec.lo) / static_cast<double>(spec.steps - 1);

    std::vector<double> gap(grid.size()), sigma(grid.size()), scale(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const DenseMatrix m = matrix_at(spec, grid[k]);
        const Spectrum s = m.rows() == 2 ? eig2_closed(m) : eig_iterative(m);
        gap[k] = spectral_gap(s);
        sigma[k] = split_character(s);
        scale[k] = std::max(1.0, frobenius_norm(m));
    }

    const auto gap_at = [&](double t) { return spectral_gap(spectrum_at(spec, t)); };
    const auto sigma_at = [&](double t) { return split_character(spectrum_at(spec, t)); };
    const auto scale_at = [&](double t) { return std::max(1.0, frobenius_norm(matrix_at(spec, t))); };

    // A refined location counts as coalescence when the gap is negligible
    // outright, or collapses relative to the gap one grid spacing away
    // (distinguishes a true closing from an avoided crossing).
    const auto is_coalescent = [&](double t, double g) {
        if (g <= kCoalescenceFactor * scale_at(t)) return true;
        const double left = std::max(spec.lo, t - h);
        const double right = std::min(spec.hi, t + h);
        const double neighbor = std::min(gap_at(left), gap_at(right));
        return g <= 0.25 * neighbor;
    };

    const double width_tol = refine_tol / 4.0;
    std::vector<std::pair<double, double>> candidates;  // (location, gap there)

    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (gap[k] <= kCoalescenceFactor * scale[k]) {
            candidates.emplace_back(grid[k], gap[k]);
        }
    }

    // Split-character sign changes bracket a coalescence point exactly.
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        if (!(sigma[k] * sigma[k + 1] < 0.0)) continue;
        double a = grid[k], b = grid[k + 1];
        double sa = sigma[k];
        double root = 0.5 * (a + b);
        for (int iter = 0; iter < 200 && (b - a) > width_tol; ++iter) {
            root = 0.5 * (a + b);
            const double sm = sigma_at(root);
            if (sm == 0.0) break;
            if ((sm > 0.0) == (sa > 0.0)) {
                a = root;
                sa = sm;
            } else {
                b = root;
            }
        }
        const double g = gap_at(root);
        if (is_coalescent(root, g)) candidates.emplace_back(root, g);
    }

    // Interior local minima of the gap (covers closings with no character flip).
    for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
        if (!(gap[k] <= gap[k - 1] && gap[k] <= gap[k + 1])) continue;
        if (gap[k] <= kCoalescenceFactor * scale[k]) continue;  // already recorded
        const double refined = golden_section_min(gap_at, grid[k - 1], grid[k + 1], width_tol);
        const double g = gap_at(refined);
        if (is_coalescent(refined, g)) candidates.emplace_back(refined, g);
    }

    // Deduplicate within refine_tol; keep the best-coalesced representative.
    std::sort(candidates.begin(), candidates.end());
    std::vector<double> out;
    std::size_t i = 0;
    while (i < candidates.size()) {
        std::size_t j = i;
        std::pair<double, double> best = candidates[i];
        while (j + 1 < candidates.size() &&
               candidates[j + 1].first - candidates[j].first <= refine_tol) {
            ++j;
            if (candidates[j].second < best.second) best = candidates[j];
        }
        out.push_back(std::clamp(best.first, spec.lo, spec.hi));
        i = j + 1;
    }
    return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();

    SweepResult result;
    result.grid = make_grid(spec.lo, spec.hi, spec.steps);

    std::vector<Spectrum> spectra(result.grid.size());
    std::vector<double> norms(result.grid.size());
    for (std::size_t k = 0; k < result.grid.size(); ++k) {
        try {
            const DenseMatrix m = matrix_at(spec, result.grid[k]);
            norms[k] = frobenius_norm(m);
            spectra[k] = m.rows() == 2 ? eig2_closed(m) : eig_iterative(m);
        } catch (const std::exception& e) {
            throw SweepError("grid point " + std::to_string(k) + " (" + spec.sweep_param + " = " +
                                 std::to_string(result.grid[k]) + "): " + e.what(),
                             k);
        }
    }

    const std::size_t n_branches = spectra.front().eigenvalues.size();
    result.branches.assign(n_branches, std::vector<Complex>(result.grid.size()));
    result.phases.resize(result.grid.size());

    std::vector<Complex> prev(n_branches);
    for (std::size_t k = 0; k < result.grid.size(); ++k) {
        std::vector<Complex> cur(n_branches);
        for (std::size_t b = 0; b < n_branches; ++b) {
            cur[b] = apply_quantity(spectra[k].eigenvalues[b], spec.quantity);
        }
        const std::vector<Complex> assigned = k == 0 ? cur : match_branches(prev, cur);
        for (std::size_t b = 0; b < n_branches; ++b) result.branches[b][k] = assigned[b];
        prev = assigned;

        result.phases[k] =
            classify_phase(spectra[k], kCoalescenceFactor * std::max(1.0, norms[k]));
    }

    result.exceptional_points = find_exceptional_points(spec, kDefaultEpRefineTol);
    result.asymmetry =
        asymmetry_metric(result.grid, result.branches, &result.asymmetry_window);
    return result;
}

SweepSpec preset_case(int n) {
    SweepSpec spec;
    spec.family = FamilyId::H1Pt;
    spec.sweep_param = "b";
    spec.steps = kDefaultSteps;
    switch (n) {
        case 1:
            spec.lo = 0.0;
            spec.hi = 10.0;
            spec.bindings = {{"a", Binding::constant(8.0)}, {"c", Binding::constant(-3.0)}};
            break;
        case 2:
            spec.lo = -10.0;
            spec.hi = 0.0;
            spec.bindings = {{"a", Binding::constant(20.0)}, {"c", Binding::alias()}};
            break;
        case 3:
            spec.lo = -10.0;
            spec.hi = 10.0;
            spec.bindings = {{"a", Binding::constant(8.0)}, {"c", Binding::alias()}};
            break;
        case 4:
            spec.lo = -10.0;
            spec.hi = 10.0;
            spec.bindings = {{"a", Binding::constant(20.0)}, {"c", Binding::alias()}};
            spec.quantity = OutputQuantity::EigenvalueSquared;
            break;
        default:
            throw std::out_of_range("preset_case: case number must be 1..4, got " +
                                    std::to_string(n));
    }
    return spec;
}

}  // namespace ptkit
