#include "ptkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "ptkit/version.hpp"

namespace ptkit {

namespace {

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fmt_tick(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string json_number(double v) {
    if (std::isnan(v)) return "null";
    return format_double(v);
}

void append_number_array(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += json_number(values[i]);
    }
    out += ']';
}

std::string binding_json(const Binding& b, const std::string& sweep_param) {
    if (b.kind == Binding::Kind::SweepAlias) return "\"=" + json_escape(sweep_param) + "\"";
    return format_double(b.value);
}

std::string metadata_json(const ReportMetadata& m) {
    std::string out = "{";
    out += "\"family\": \"" + json_escape(m.family) + "\"";
    if (m.kind == ReportMetadata::Kind::Sweep) {
        out += ", \"sweep_param\": \"" + json_escape(m.sweep_param) + "\"";
        out += ", \"range\": [" + format_double(m.lo) + ", " + format_double(m.hi) + "]";
        out += ", \"steps\": " + std::to_string(m.steps);
        out += ", \"bindings\": {";
        bool first = true;
        for (const auto& [name, binding] : m.bindings) {
            if (!first) out += ", ";
            first = false;
            out += "\"" + json_escape(name) + "\": " + binding_json(binding, m.sweep_param);
        }
        out += "}";
        out += ", \"output_quantity\": \"" + std::string(quantity_name(m.quantity)) + "\"";
        out += ", \"asymmetry_window\": ";
        if (m.asymmetry_window) {
            out += "[" + format_double(m.asymmetry_window->first) + ", " +
                   format_double(m.asymmetry_window->second) + "]";
        } else {
            out += "null";
        }
    } else {
        out += ", \"assignment\": {";
        bool first = true;
        for (const auto& [name, value] : m.assignment) {
            if (!first) out += ", ";
            first = false;
            out += "\"" + json_escape(name) + "\": " + format_double(value);
        }
        out += "}";
        out += ", \"parity_mode\": \"" + json_escape(m.parity_mode) + "\"";
    }
    out += ", \"tool_version\": \"" + json_escape(m.tool_version) + "\"";
    out += "}";
    return out;
}

const SweepResult& sweep_payload(const ReportBundle& r, const char* op) {
    if (!std::holds_alternative<SweepResult>(r.payload)) {
        throw std::invalid_argument(std::string(op) + ": bundle does not hold a sweep result");
    }
    return std::get<SweepResult>(r.payload);
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ReportBundle make_sweep_bundle(const SweepSpec& spec, SweepResult result) {
    ReportBundle r;
    r.metadata.kind = ReportMetadata::Kind::Sweep;
    r.metadata.family = spec.family_label();
    r.metadata.sweep_param = spec.sweep_param;
    r.metadata.lo = spec.lo;
    r.metadata.hi = spec.hi;
    r.metadata.steps = spec.steps;
    r.metadata.bindings = spec.bindings;
    r.metadata.quantity = spec.quantity;
    r.metadata.asymmetry_window = result.asymmetry_window;
    r.metadata.tool_version = kToolVersion;
    r.payload = std::move(result);
    return r;
}

ReportBundle make_classify_bundle(std::string family_label,
                                  std::map<std::string, double> assignment,
                                  std::string parity_mode,
                                  std::vector<VerdictEntry> verdicts) {
    ReportBundle r;
    r.metadata.kind = ReportMetadata::Kind::Classify;
    r.metadata.family = std::move(family_label);
    r.metadata.assignment = std::move(assignment);
    r.metadata.parity_mode = std::move(parity_mode);
    r.metadata.tool_version = kToolVersion;
    r.payload = std::move(verdicts);
    return r;
}

std::string to_csv(const ReportBundle& r) {
    const SweepResult& res = sweep_payload(r, "to_csv");
    std::string out = "param";
    for (std::size_t b = 0; b < res.branches.size(); ++b) {
        out += ",re_l" + std::to_string(b + 1) + ",im_l" + std::to_string(b + 1);
    }
    out += ",phase,asymmetry\n";

    for (std::size_t k = 0; k < res.grid.size(); ++k) {
        out += format_double(res.grid[k]);
        for (const auto& branch : res.branches) {
            out += ',' + format_double(branch[k].real());
            out += ',' + format_double(branch[k].imag());
        }
        out += ',';
        out += phase_name(res.phases[k]);
        out += ',' + format_double(res.asymmetry[k]);
        out += '\n';
    }
    return out;
}

std::string to_json(const ReportBundle& r) {
    std::string out = "{\n";
    out += "\"metadata\": " + metadata_json(r.metadata);

    if (std::holds_alternative<SweepResult>(r.payload)) {
        const SweepResult& res = std::get<SweepResult>(r.payload);
        out += ",\n\"grid\": ";
        append_number_array(out, res.grid);
        out += ",\n\"branches\": [";
        for (std::size_t b = 0; b < res.branches.size(); ++b) {
            if (b) out += ", ";
            std::vector<double> re(res.branches[b].size()), im(res.branches[b].size());
            for (std::size_t k = 0; k < res.branches[b].size(); ++k) {
                re[k] = res.branches[b][k].real();
                im[k] = res.branches[b][k].imag();
            }
            out += "{\"re\": ";
            append_number_array(out, re);
            out += ", \"im\": ";
            append_number_array(out, im);
            out += "}";
        }
        out += "],\n\"phases\": [";
        for (std::size_t k = 0; k < res.phases.size(); ++k) {
            if (k) out += ',';
            out += '"';
            out += phase_name(res.phases[k]);
            out += '"';
        }
        out += "],\n\"exceptional_points\": ";
        append_number_array(out, res.exceptional_points);
        out += ",\n\"asymmetry\": ";
        append_number_array(out, res.asymmetry);
    } else {
        const auto& verdicts = std::get<std::vector<VerdictEntry>>(r.payload);
        out += ",\n\"verdicts\": [";
        for (std::size_t k = 0; k < verdicts.size(); ++k) {
            const VerdictEntry& v = verdicts[k];
            if (k) out += ", ";
            out += "{\"check\": \"" + json_escape(v.check) + "\"";
            if (!v.parity.empty()) out += ", \"parity\": \"" + json_escape(v.parity) + "\"";
            out += ", \"kind\": \"" + std::string(symmetry_kind_name(v.verdict.kind)) + "\"";
            out += ", \"residual\": " + json_number(v.verdict.residual);
            out += ", \"holds\": " + std::string(v.verdict.holds ? "true" : "false");
            if (v.involution_defect) {
                out += ", \"involution_defect\": " + json_number(*v.involution_defect);
            }
            out += "}";
        }
        out += "]";
    }
    out += "\n}\n";
    return out;
}

namespace {

constexpr double kCanvasW = 800.0;
constexpr double kCanvasH = 600.0;
constexpr double kMargin = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

double nice_step(double range, int target_ticks) {
    const double raw = range / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double factor = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
    return factor * mag;
}

}  // namespace

std::string to_svg(const ReportBundle& r, SvgComponent which) {
    const SweepResult& res = sweep_payload(r, "to_svg");
    const bool draw_re = which != SvgComponent::Im;
    const bool draw_im = which != SvgComponent::Re;

    const double x_lo = res.grid.front();
    const double x_hi = res.grid.back();

    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -std::numeric_limits<double>::infinity();
    for (const auto& branch : res.branches) {
        for (const Complex& q : branch) {
            if (draw_re) {
                y_lo = std::min(y_lo, q.real());
                y_hi = std::max(y_hi, q.real());
            }
            if (draw_im) {
                y_lo = std::min(y_lo, q.imag());
                y_hi = std::max(y_hi, q.imag());
            }
        }
    }
    if (!(y_lo < y_hi)) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const double plot_w = kCanvasW - 2.0 * kMargin;
    const double plot_h = kCanvasH - 2.0 * kMargin;
    const auto sx = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto sy = [&](double y) {
        return kCanvasH - kMargin - (y - y_lo) / (y_hi - y_lo) * plot_h;
    };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
    svg += "<rect x=\"" + fmt3(kMargin) + "\" y=\"" + fmt3(kMargin) + "\" width=\"" +
           fmt3(plot_w) + "\" height=\"" + fmt3(plot_h) +
           "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

    svg += "<text x=\"" + fmt3(kCanvasW / 2.0) + "\" y=\"30\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" +
           json_escape(r.metadata.family) + " / " + quantity_name(r.metadata.quantity) +
           "</text>\n";

    // x ticks
    {
        const double step = nice_step(x_hi - x_lo, 6);
        for (double v = std::ceil(x_lo / step) * step; v <= x_hi + 1e-9 * step; v += step) {
            const double px = sx(v);
            svg += "<line x1=\"" + fmt3(px) + "\" y1=\"" + fmt3(kCanvasH - kMargin) + "\" x2=\"" +
                   fmt3(px) + "\" y2=\"" + fmt3(kCanvasH - kMargin + 6.0) +
                   "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
            svg += "<text x=\"" + fmt3(px) + "\" y=\"" + fmt3(kCanvasH - kMargin + 20.0) +
                   "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
                   fmt_tick(v) + "</text>\n";
        }
        svg += "<text x=\"" + fmt3(kCanvasW / 2.0) + "\" y=\"" + fmt3(kCanvasH - 15.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
               json_escape(r.metadata.sweep_param) + "</text>\n";
    }
    // y ticks
    {
        const double step = nice_step(y_hi - y_lo, 6);
        for (double v = std::ceil(y_lo / step) * step; v <= y_hi + 1e-9 * step; v += step) {
            const double py = sy(v);
            svg += "<line x1=\"" + fmt3(kMargin - 6.0) + "\" y1=\"" + fmt3(py) + "\" x2=\"" +
                   fmt3(kMargin) + "\" y2=\"" + fmt3(py) +
                   "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
            svg += "<text x=\"" + fmt3(kMargin - 10.0) + "\" y=\"" + fmt3(py + 4.0) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
                   fmt_tick(v) + "</text>\n";
        }
    }

    for (double ep : res.exceptional_points) {
        const double px = sx(ep);
        svg += "<line class=\"ep-marker\" x1=\"" + fmt3(px) + "\" y1=\"" + fmt3(kMargin) +
               "\" x2=\"" + fmt3(px) + "\" y2=\"" + fmt3(kCanvasH - kMargin) +
               "\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
    }

    struct Series {
        std::string label;
        std::string color;
        bool dashed;
        const std::vector<Complex>* data;
        bool imag;
    };
    std::vector<Series> series;
    for (std::size_t b = 0; b < res.branches.size(); ++b) {
        const std::string color = kPalette[b % (sizeof kPalette / sizeof kPalette[0])];
        if (draw_re) {
            series.push_back({"l" + std::to_string(b + 1) + " Re", color, false,
                              &res.branches[b], false});
        }
        if (draw_im) {
            series.push_back({"l" + std::to_string(b + 1) + " Im", color, true,
                              &res.branches[b], true});
        }
    }

    for (const Series& s : series) {
        svg += "<polyline class=\"branch\" fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1.5\"";
        if (s.dashed) svg += " stroke-dasharray=\"5,3\"";
        svg += " points=\"";
        for (std::size_t k = 0; k < res.grid.size(); ++k) {
            if (k) svg += ' ';
            const double y = s.imag ? (*s.data)[k].imag() : (*s.data)[k].real();
            svg += fmt3(sx(res.grid[k])) + "," + fmt3(sy(y));
        }
        svg += "\"/>\n";
    }

    // legend, top-right corner of the plot area
    {
        double ly = kMargin + 16.0;
        const double lx = kCanvasW - kMargin - 110.0;
        for (const Series& s : series) {
            svg += "<line x1=\"" + fmt3(lx) + "\" y1=\"" + fmt3(ly - 4.0) + "\" x2=\"" +
                   fmt3(lx + 24.0) + "\" y2=\"" + fmt3(ly - 4.0) + "\" stroke=\"" + s.color +
                   "\" stroke-width=\"1.5\"";
            if (s.dashed) svg += " stroke-dasharray=\"5,3\"";
            svg += "/>\n";
            svg += "<text x=\"" + fmt3(lx + 30.0) + "\" y=\"" + fmt3(ly) +
                   "\" font-family=\"sans-serif\" font-size=\"12\">" + s.label + "</text>\n";
            ly += 16.0;
        }
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace ptkit
