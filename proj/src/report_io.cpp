#include "spectra/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spectra {

namespace {

constexpr const char* kCsvHeader = "t,lambda,dlambda_hadamard,dlambda_fd,mesh_h,residual,iterations\n";

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

std::string escape_xml(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out = kCsvHeader;
    for (const auto& r : records) {
        out += format_number(r.t) + ',' + format_number(r.lambda) + ',' + format_number(r.hadamard_deriv) + ',' +
               (r.fd_deriv ? format_number(*r.fd_deriv) : std::string()) + ',' + format_number(r.mesh_h) + ',' +
               format_number(r.solver_residual) + ',' + std::to_string(r.iterations) + '\n';
    }
    return out;
}

std::string quantity_csv(const QuantitySweep& sweep) {
    std::string out = kCsvHeader;
    for (const auto& r : sweep.records) {
        out += format_number(r.t) + ',' + format_number(r.value) + ",,," + format_number(r.mesh_h) + ',' +
               format_number(r.residual) + ',' + std::to_string(r.iterations) + '\n';
    }
    return out;
}

std::string line_plot_svg(const std::string& title, const std::string& y_label, const std::vector<double>& t,
                          const std::vector<double>& values) {
    constexpr double width = 640, height = 420, left = 80, right = 20, top = 40, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double t_lo = 0.0, t_hi = 1.0, v_lo = 0.0, v_hi = 1.0;
    if (!t.empty()) {
        t_lo = *std::min_element(t.begin(), t.end());
        t_hi = *std::max_element(t.begin(), t.end());
        v_lo = *std::min_element(values.begin(), values.end());
        v_hi = *std::max_element(values.begin(), values.end());
    }
    if (t_hi <= t_lo) {
        t_hi = t_lo + 1.0;
    }
    // A flat curve still gets a visible band around it.
    const double pad = std::max(0.05 * (v_hi - v_lo), 1e-3 * std::max(std::fabs(v_hi), 1e-12));
    v_lo -= pad;
    v_hi += pad;
    auto px = [&](double x) { return left + (x - t_lo) / (t_hi - t_lo) * plot_w; };
    auto py = [&](double y) { return top + (v_hi - y) / (v_hi - v_lo) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << escape_xml(title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double tv = t_lo + (t_hi - t_lo) * k / 4.0;
        const double vv = v_lo + (v_hi - v_lo) * k / 4.0;
        svg << "<text x=\"" << fixed(px(tv), 2) << "\" y=\"" << height - bottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fixed(tv, 3) << "</text>\n";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << fixed(py(vv) + 4, 2)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_number(vv).substr(0, 9)
            << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">t (rad)</text>\n";
    svg << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"13\" transform=\"rotate(-90 18 " << top + plot_h / 2 << ")\">" << escape_xml(y_label)
        << "</text>\n";

    if (!t.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < t.size(); ++i) {
            svg << (i ? " " : "") << fixed(px(t[i]), 2) << ',' << fixed(py(values[i]), 2);
        }
        svg << "\"/>\n";
        const std::size_t last = t.size() - 1;
        svg << "<circle cx=\"" << fixed(px(t[0]), 2) << "\" cy=\"" << fixed(py(values[0]), 2)
            << "\" r=\"6\" fill=\"firebrick\"/>\n";
        svg << "<text x=\"" << fixed(px(t[0]) + 10, 2) << "\" y=\"" << fixed(py(values[0]) - 8, 2)
            << "\" font-family=\"sans-serif\" font-size=\"12\">ON</text>\n";
        svg << "<rect x=\"" << fixed(px(t[last]) - 6, 2) << "\" y=\"" << fixed(py(values[last]) - 6, 2)
            << "\" width=\"12\" height=\"12\" fill=\"darkgreen\"/>\n";
        svg << "<text x=\"" << fixed(px(t[last]) - 10, 2) << "\" y=\"" << fixed(py(values[last]) - 10, 2)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">OFF</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

nlohmann::ordered_json to_json(const TheoremCheck& check) {
    return {{"name", check.name},
            {"passed", check.passed},
            {"margin", check.margin},
            {"tolerance", check.tolerance},
            {"detail", check.detail}};
}

nlohmann::ordered_json to_json(const TheoremReport& report) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        checks.push_back(to_json(c));
    }
    return {{"all_passed", report.all_passed()}, {"checks", checks}};
}

nlohmann::ordered_json to_json(const SweepRecord& r) {
    nlohmann::ordered_json j{{"t", r.t},
                             {"lambda", r.lambda},
                             {"lambda_coarse", r.lambda_coarse},
                             {"dlambda_hadamard", r.hadamard_deriv},
                             {"dlambda_hadamard_coarse", r.hadamard_coarse},
                             {"dlambda_fd", nullptr},
                             {"mesh_h", r.mesh_h},
                             {"residual", r.solver_residual},
                             {"iterations", r.iterations},
                             {"min_flux", r.min_flux},
                             {"max_flux", r.max_flux}};
    if (r.fd_deriv) {
        j["dlambda_fd"] = *r.fd_deriv;
    }
    return j;
}

nlohmann::ordered_json to_json(const ReflectionReport& r) {
    std::size_t near = 0;
    for (bool b : r.near_outer) {
        near += b ? 1 : 0;
    }
    return {{"t", r.t},
            {"samples", r.points.size()},
            {"near_outer_samples", near},
            {"max_w", r.max_w},
            {"max_u", r.max_u},
            {"min_w_near_outer", r.min_w_near_outer},
            {"passed", r.passed},
            {"strict", r.strict},
            {"seed", kReflectionSeed}};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed while writing " + path);
    }
}

}  // namespace spectra
