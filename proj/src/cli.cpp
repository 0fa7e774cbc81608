#include "ptkit/cli.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ptkit/matrix_template.hpp"
#include "ptkit/report.hpp"
#include "ptkit/sweep.hpp"
#include "ptkit/symmetry.hpp"
#include "ptkit/transform.hpp"
#include "ptkit/version.hpp"

namespace fs = std::filesystem;

namespace ptkit::cli {

namespace {

constexpr const char* kUsage =
    "usage: ptkit <classify|sweep|case|ep|transform> [options]\n"
    "  classify  --family <id>|--template <file> --set a=8,b=2,c=-3 [--parity diag(1,-1)|search]\n"
    "  sweep     --family|--template ... --param b --range lo:hi [--steps N] [--set k=v]\n"
    "            [--alias k=param] [--quantity eig|eig2|abs2|re2] --out <dir>\n"
    "  case      <1|2|3|4> --out <dir> [--family <id>] [--steps N]\n"
    "  ep        --family|--template ... --param b --range lo:hi [--steps N] [--set k=v]\n"
    "            [--alias k=param] [--tol 1e-6]\n"
    "  transform --set a=8,b=2,c=-3\n";

// Invocation problems; mapped to exit code 1.
struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw UsageFailure(what + ": expected a number, got '" + text + "'");
    }
    return v;
}

std::map<std::string, double> parse_assignments(const std::vector<std::string>& set_args) {
    std::map<std::string, double> out;
    for (const std::string& arg : set_args) {
        std::size_t start = 0;
        while (start <= arg.size()) {
            const std::size_t comma = arg.find(',', start);
            const std::string piece =
                trim(arg.substr(start, comma == std::string::npos ? comma : comma - start));
            start = comma == std::string::npos ? arg.size() + 1 : comma + 1;
            if (piece.empty()) continue;
            const std::size_t eq = piece.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw UsageFailure("--set expects k=v pairs, got '" + piece + "'");
            }
            const std::string key = trim(piece.substr(0, eq));
            if (out.count(key)) throw UsageFailure("--set: duplicate parameter '" + key + "'");
            out[key] = parse_double(trim(piece.substr(eq + 1)), "--set " + key);
        }
    }
    return out;
}

std::pair<double, double> parse_range(const std::string& text) {
    const std::size_t colon = text.find(':', 1);
    if (colon == std::string::npos || colon + 1 >= text.size()) {
        throw UsageFailure("--range expects lo:hi, got '" + text + "'");
    }
    const double lo = parse_double(trim(text.substr(0, colon)), "--range lo");
    const double hi = parse_double(trim(text.substr(colon + 1)), "--range hi");
    return {lo, hi};
}

std::variant<FamilyId, HamiltonianTemplate> resolve_family(const std::string& family,
                                                           const std::string& template_path) {
    if (!family.empty() && !template_path.empty()) {
        throw UsageFailure("--family and --template are mutually exclusive");
    }
    if (family.empty() && template_path.empty()) {
        throw UsageFailure("one of --family or --template is required");
    }
    if (!family.empty()) {
        try {
            return family_from_name(family);
        } catch (const std::invalid_argument& e) {
            throw UsageFailure(e.what());
        }
    }
    return load_template_file(template_path);
}

std::vector<std::string> params_of(const std::variant<FamilyId, HamiltonianTemplate>& fam) {
    if (std::holds_alternative<FamilyId>(fam)) return {"a", "b", "c"};
    return std::get<HamiltonianTemplate>(fam).params;
}

std::string label_of(const std::variant<FamilyId, HamiltonianTemplate>& fam) {
    if (std::holds_alternative<FamilyId>(fam)) return family_name(std::get<FamilyId>(fam));
    return "template:" + std::get<HamiltonianTemplate>(fam).name;
}

DenseMatrix materialize(const std::variant<FamilyId, HamiltonianTemplate>& fam,
                        const std::map<std::string, double>& assignment) {
    const std::vector<std::string> params = params_of(fam);
    for (const std::string& p : params) {
        if (!assignment.count(p)) {
            throw UsageFailure("--set must bind parameter '" + p + "' of " + label_of(fam));
        }
    }
    for (const auto& [name, value] : assignment) {
        (void)value;
        if (std::find(params.begin(), params.end(), name) == params.end()) {
            throw UsageFailure("unknown parameter '" + name + "' for " + label_of(fam));
        }
    }
    if (std::holds_alternative<FamilyId>(fam)) {
        const HamiltonianParams p{assignment.at("a"), assignment.at("b"), assignment.at("c")};
        return build_family(std::get<FamilyId>(fam), p);
    }
    return instantiate(std::get<HamiltonianTemplate>(fam), assignment);
}

SymmetryOperator parse_parity(const std::string& text, std::size_t dim) {
    const std::string t = trim(text);
    if (t.rfind("diag(", 0) != 0 || t.back() != ')') {
        throw UsageFailure("--parity expects diag(+-1,...) or 'search', got '" + text + "'");
    }
    const std::string inner = t.substr(5, t.size() - 6);
    std::vector<double> diag;
    std::size_t start = 0;
    while (start <= inner.size()) {
        const std::size_t comma = inner.find(',', start);
        const std::string piece =
            trim(inner.substr(start, comma == std::string::npos ? comma : comma - start));
        start = comma == std::string::npos ? inner.size() + 1 : comma + 1;
        if (piece.empty()) throw UsageFailure("--parity: empty diagonal entry");
        if (piece == "1" || piece == "+1") {
            diag.push_back(1.0);
        } else if (piece == "-1") {
            diag.push_back(-1.0);
        } else {
            throw UsageFailure("--parity: diagonal entries must be 1 or -1, got '" + piece + "'");
        }
    }
    if (diag.size() != dim) {
        throw UsageFailure("--parity: expected " + std::to_string(dim) + " diagonal entries, got " +
                           std::to_string(diag.size()));
    }
    DenseMatrix p(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) p(i, i) = Complex(diag[i], 0.0);
    return SymmetryOperator::linear(std::move(p));
}

std::string parity_string(const DenseMatrix& m) {
    bool diagonal = true;
    for (std::size_t i = 0; i < m.rows() && diagonal; ++i)
        for (std::size_t j = 0; j < m.cols() && diagonal; ++j)
            if (i != j && m(i, j) != Complex(0.0, 0.0)) diagonal = false;
    std::string out;
    if (diagonal) {
        out = "diag(";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i) out += ',';
            out += m(i, i).real() > 0 ? "1" : "-1";
        }
        out += ')';
        return out;
    }
    out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ',';
        out += '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += std::to_string(static_cast<int>(std::lround(m(i, j).real())));
        }
        out += ']';
    }
    out += ']';
    return out;
}

SweepSpec build_spec(const std::string& family, const std::string& template_path,
                     const std::string& param, const std::string& range_text, std::size_t steps,
                     const std::vector<std::string>& set_args,
                     const std::vector<std::string>& alias_args, const std::string& quantity) {
    SweepSpec spec;
    spec.family = resolve_family(family, template_path);
    spec.sweep_param = param;
    const auto [lo, hi] = parse_range(range_text);
    spec.lo = lo;
    spec.hi = hi;
    spec.steps = steps;
    try {
        spec.quantity = quantity_from_name(quantity);
    } catch (const std::invalid_argument& e) {
        throw UsageFailure(e.what());
    }
    for (const auto& [name, value] : parse_assignments(set_args)) {
        spec.bindings.emplace(name, Binding::constant(value));
    }
    for (const std::string& alias : alias_args) {
        const std::size_t eq = alias.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= alias.size()) {
            throw UsageFailure("--alias expects k=param, got '" + alias + "'");
        }
        const std::string key = trim(alias.substr(0, eq));
        const std::string target = trim(alias.substr(eq + 1));
        if (target != param) {
            throw UsageFailure("--alias: '" + key + "' must alias the sweep parameter '" + param +
                               "', got '" + target + "'");
        }
        if (!spec.bindings.emplace(key, Binding::alias()).second) {
            throw UsageFailure("parameter '" + key + "' bound more than once");
        }
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageFailure(e.what());
    }
    return spec;
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << bytes;
    if (!out) throw std::runtime_error("failed writing output file: " + path.string());
}

void write_outputs(const ReportBundle& bundle, const std::string& out_dir,
                   const std::string& base, std::ostream& out) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const fs::path csv = dir / (base + ".csv");
    const fs::path json = dir / (base + ".json");
    const fs::path svg = dir / (base + ".svg");
    write_file(csv, to_csv(bundle));
    write_file(json, to_json(bundle));
    write_file(svg, to_svg(bundle, SvgComponent::Both));
    out << "wrote " << csv.string() << "\n";
    out << "wrote " << json.string() << "\n";
    out << "wrote " << svg.string() << "\n";
}

std::string matrix_json(const DenseMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ", ";
        out += '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += '[' + format_double(m(i, j).real()) + ", " + format_double(m(i, j).imag()) +
                   ']';
        }
        out += ']';
    }
    out += ']';
    return out;
}

std::string spectrum_json(const std::vector<Complex>& vals) {
    std::string out = "[";
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) out += ", ";
        out += '[' + format_double(vals[i].real()) + ", " + format_double(vals[i].imag()) + ']';
    }
    out += ']';
    return out;
}

int run_classify(const std::string& family, const std::string& template_path,
                 const std::vector<std::string>& set_args, const std::string& parity,
                 std::ostream& out) {
    const auto fam = resolve_family(family, template_path);
    const auto assignment = parse_assignments(set_args);
    const DenseMatrix h = materialize(fam, assignment);

    std::vector<VerdictEntry> verdicts;
    if (parity == "search") {
        for (const auto& [op, verdict] : search_parity(h)) {
            verdicts.push_back({verdict.kind == SymmetryKind::PTSymmetric ? "pt" : "anti_pt",
                                parity_string(op.matrix), verdict, std::nullopt});
        }
    } else {
        const SymmetryOperator p = parse_parity(parity, h.rows());
        verdicts.push_back({"pt", parity_string(p.matrix), check_pt_symmetry(h, p), std::nullopt});
        verdicts.push_back(
            {"anti_pt", parity_string(p.matrix), check_anti_pt_symmetry(h, p), std::nullopt});
    }

    // C-operator commutation needs named (a, b) away from a^2 == b^2.
    const auto a_it = assignment.find("a");
    const auto b_it = assignment.find("b");
    if (h.rows() == 2 && a_it != assignment.end() && b_it != assignment.end()) {
        const double a = a_it->second, b = b_it->second;
        if (std::abs(a * a - b * b) > 1e-12 * std::max(1.0, a * a + b * b)) {
            const SymmetryOperator c = build_C(a, b);
            const SymmetryOperator c_pt = build_C_pt(a, b);
            verdicts.push_back(
                {"commutes_with_c", "", check_linear_symmetry(h, c), c.involution_defect()});
            verdicts.push_back({"commutes_with_c_pt", "", check_linear_symmetry(h, c_pt),
                                c_pt.involution_defect()});
        }
    }

    const ReportBundle bundle =
        make_classify_bundle(label_of(fam), assignment, parity, std::move(verdicts));
    out << to_json(bundle);
    return 0;
}

int run_transform(const std::vector<std::string>& set_args, std::ostream& out) {
    const auto assignment = parse_assignments(set_args);
    for (const char* key : {"a", "b", "c"}) {
        if (!assignment.count(key)) {
            throw UsageFailure(std::string("--set must bind parameter '") + key + "'");
        }
    }
    const HamiltonianParams p{assignment.at("a"), assignment.at("b"), assignment.at("c")};
    const DiscrepancyReport rep = discrepancy_report(p);
    const Spectrum exact_spec = eig2_closed(rep.exact);
    const Spectrum printed_spec = eig2_closed(rep.printed);

    out << "{\n";
    out << "\"metadata\": {\"a\": " << format_double(p.a) << ", \"b\": " << format_double(p.b)
        << ", \"c\": " << format_double(p.c) << ", \"tool_version\": \"" << kToolVersion
        << "\"},\n";
    out << "\"exact\": " << matrix_json(rep.exact) << ",\n";
    out << "\"printed\": " << matrix_json(rep.printed) << ",\n";
    out << "\"entry_diff_norm\": " << format_double(rep.entry_diff_norm) << ",\n";
    out << "\"spectra_equal\": " << (rep.spectra_equal ? "true" : "false") << ",\n";
    out << "\"exact_spectrum\": " << spectrum_json(exact_spec.eigenvalues) << ",\n";
    out << "\"printed_spectrum\": " << spectrum_json(printed_spec.eigenvalues) << "\n";
    out << "}\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"symmetry toolkit for small non-Hermitian matrix families"};
    app.name("ptkit");
    app.require_subcommand(1);

    auto* classify =
        app.add_subcommand("classify", "symmetry verdicts at one parameter point");
    std::string cl_family, cl_template, cl_parity = "search";
    std::vector<std::string> cl_set;
    classify->add_option("--family", cl_family, "built-in family id");
    classify->add_option("--template", cl_template, "template file (.ham)");
    classify->add_option("--set", cl_set, "parameter assignments k=v[,k=v...]");
    classify->add_option("--parity", cl_parity, "diag(+-1,...) literal or 'search'");

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter and write CSV/JSON/SVG");
    std::string sw_family, sw_template, sw_param, sw_range, sw_quantity = "eig", sw_out;
    std::size_t sw_steps = kDefaultSteps;
    std::vector<std::string> sw_set, sw_alias;
    sweep->add_option("--family", sw_family, "built-in family id");
    sweep->add_option("--template", sw_template, "template file (.ham)");
    sweep->add_option("--param", sw_param, "sweep parameter name")->required();
    sweep->add_option("--range", sw_range, "sweep range lo:hi")->required();
    sweep->add_option("--steps", sw_steps, "grid points (default 1001)");
    sweep->add_option("--set", sw_set, "constant bindings k=v[,k=v...]");
    sweep->add_option("--alias", sw_alias, "alias binding k=<sweep param>");
    sweep->add_option("--quantity", sw_quantity, "eig | eig2 | abs2 | re2");
    sweep->add_option("--out", sw_out, "output directory")->required();

    auto* preset = app.add_subcommand("case", "run a built-in preset sweep");
    int case_n = 0;
    std::string case_out, case_family;
    std::size_t case_steps = kDefaultSteps;
    preset->add_option("n", case_n, "case number (1..4)")->required();
    preset->add_option("--out", case_out, "output directory")->required();
    preset->add_option("--family", case_family, "override the preset family");
    preset->add_option("--steps", case_steps, "grid points (default 1001)");

    auto* ep = app.add_subcommand("ep", "locate exceptional points along a sweep");
    std::string ep_family, ep_template, ep_param, ep_range;
    std::size_t ep_steps = kDefaultSteps;
    double ep_tol = kDefaultEpRefineTol;
    std::vector<std::string> ep_set, ep_alias;
    ep->add_option("--family", ep_family, "built-in family id");
    ep->add_option("--template", ep_template, "template file (.ham)");
    ep->add_option("--param", ep_param, "sweep parameter name")->required();
    ep->add_option("--range", ep_range, "sweep range lo:hi")->required();
    ep->add_option("--steps", ep_steps, "grid points (default 1001)");
    ep->add_option("--set", ep_set, "constant bindings k=v[,k=v...]");
    ep->add_option("--alias", ep_alias, "alias binding k=<sweep param>");
    ep->add_option("--tol", ep_tol, "refinement tolerance (default 1e-6)");

    auto* transform = app.add_subcommand("transform", "similarity-vs-printed discrepancy report");
    std::vector<std::string> tr_set;
    transform->add_option("--set", tr_set, "parameter assignments a=..,b=..,c=..");

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("ptkit");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ptkit: " << e.what() << "\n" << kUsage;
        return 1;
    }

    try {
        if (classify->parsed()) {
            return run_classify(cl_family, cl_template, cl_set, cl_parity, out);
        }
        if (sweep->parsed()) {
            const SweepSpec spec = build_spec(sw_family, sw_template, sw_param, sw_range,
                                              sw_steps, sw_set, sw_alias, sw_quantity);
            const ReportBundle bundle = make_sweep_bundle(spec, run_sweep(spec));
            write_outputs(bundle, sw_out, "sweep", out);
            return 0;
        }
        if (preset->parsed()) {
            SweepSpec spec;
            try {
                spec = preset_case(case_n);
            } catch (const std::out_of_range& e) {
                throw UsageFailure(e.what());
            }
            if (!case_family.empty()) {
                try {
                    spec.family = family_from_name(case_family);
                } catch (const std::invalid_argument& e) {
                    throw UsageFailure(e.what());
                }
            }
            spec.steps = case_steps;
            try {
                spec.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageFailure(e.what());
            }
            const ReportBundle bundle = make_sweep_bundle(spec, run_sweep(spec));
            write_outputs(bundle, case_out, "case" + std::to_string(case_n), out);
            return 0;
        }
        if (ep->parsed()) {
            if (!(ep_tol > 0.0)) throw UsageFailure("--tol must be positive");
            const SweepSpec spec = build_spec(ep_family, ep_template, ep_param, ep_range,
                                              ep_steps, ep_set, ep_alias, "eig");
            for (double v : find_exceptional_points(spec, ep_tol)) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.6f", v);
                out << buf << "\n";
            }
            return 0;
        }
        if (transform->parsed()) {
            return run_transform(tr_set, out);
        }
        err << "ptkit: no subcommand\n" << kUsage;
        return 1;
    } catch (const UsageFailure& e) {
        err << "ptkit: " << e.what() << "\n" << kUsage;
        return 1;
    } catch (const std::exception& e) {
        err << "ptkit: error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ptkit::cli
