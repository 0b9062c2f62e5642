#include "crp/crc_io.hpp"

#include "crp/error.hpp"
#include "crp/util.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace crp {

std::string write_crc_csv(const CrcCurve& curve) {
    std::string out = "confidence,delta,err,unc\n";
    for (std::size_t i = 0; i < curve.grid_deltas.size(); ++i) {
        double delta = curve.grid_deltas[i];
        out += fmt_double(1.0 - delta);
        out += ',';
        out += fmt_double(delta);
        out += ',';
        out += fmt_double(curve.err_at[i]);
        out += ',';
        out += fmt_double(curve.unc_at[i]);
        out += '\n';
    }
    return out;
}

CrcCurve parse_crc_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "confidence,delta,err,unc") {
        fail_validation("CRC table: expected header 'confidence,delta,err,unc'");
    }
    CrcCurve curve;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        auto cells = split_csv(t);
        if (cells.size() != 4) {
            fail_validation("CRC table line " + std::to_string(line_no) + ": expected 4 columns");
        }
        auto conf = parse_double(cells[0]);
        auto delta = parse_double(cells[1]);
        auto err = parse_double(cells[2]);
        auto unc = parse_double(cells[3]);
        if (!conf || !delta || !err || !unc) {
            fail_validation("CRC table line " + std::to_string(line_no) + ": unparseable number");
        }
        if (std::abs((1.0 - *conf) - *delta) > 1e-9) {
            fail_validation("CRC table line " + std::to_string(line_no) +
                            ": confidence and delta disagree");
        }
        if (*err < 0.0 || *err > 1.0 || *unc < 0.0 || *unc > 1.0) {
            fail_validation("CRC table line " + std::to_string(line_no) + ": value outside [0,1]");
        }
        if (!curve.grid_deltas.empty() && *delta <= curve.grid_deltas.back()) {
            fail_validation("CRC table line " + std::to_string(line_no) +
                            ": delta must be strictly increasing");
        }
        curve.grid_deltas.push_back(*delta);
        curve.err_at.push_back(*err);
        curve.unc_at.push_back(*unc);
    }
    if (curve.grid_deltas.size() < 2) {
        fail_validation("CRC table: needs at least 2 grid rows");
    }
    return curve;
}

std::string write_crc_summary_json(const CrcCurve& curve, const CalibrationVerdict& verdict,
                                   int grid_intervals) {
    nlohmann::ordered_json j;
    j["n"] = curve.n;
    j["grid_intervals"] = grid_intervals;
    j["err_above_area"] = verdict.err_above_area;
    j["avg_width_area"] = verdict.avg_width_area;
    j["strict_calibrated"] = verdict.strict_calibrated;
    j["loose_calibrated"] = verdict.loose_calibrated;
    j["loose_tolerance"] = verdict.loose_tolerance;
    return j.dump(2) + "\n";
}

namespace {

constexpr double kMargin = 48.0;
constexpr double kPlot = 400.0;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Horizontal axis: confidence 1-delta in [0,1]; vertical axis: fraction.
std::string point(double confidence, double value) {
    return px(kMargin + kPlot * confidence) + "," + px(kMargin + kPlot * (1.0 - value));
}

} // namespace

std::string render_crc_svg(const CrcCurve& curve) {
    if (curve.grid_deltas.size() < 2) fail_validation("CRC curve too small to plot");
    const double size = 2 * kMargin + kPlot;
    std::string diag;
    std::string err_line;
    std::string unc_line;
    diag = point(0.0, 1.0) + " " + point(1.0, 0.0);
    for (std::size_t i = 0; i < curve.grid_deltas.size(); ++i) {
        double confidence = 1.0 - curve.grid_deltas[i];
        if (i) {
            err_line += ' ';
            unc_line += ' ';
        }
        err_line += point(confidence, curve.err_at[i]);
        unc_line += point(confidence, curve.unc_at[i]);
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(size) + "\" height=\"" +
           px(size) + "\" viewBox=\"0 0 " + px(size) + " " + px(size) + "\">\n";
    svg += "  <rect x=\"" + px(kMargin) + "\" y=\"" + px(kMargin) + "\" width=\"" + px(kPlot) +
           "\" height=\"" + px(kPlot) + "\" fill=\"white\" stroke=\"black\"/>\n";
    svg += "  <text x=\"" + px(kMargin + kPlot / 2) + "\" y=\"" + px(size - 12.0) +
           "\" text-anchor=\"middle\" font-size=\"13\">confidence level 1 - delta</text>\n";
    svg += "  <text x=\"14\" y=\"" + px(kMargin + kPlot / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 14 " +
           px(kMargin + kPlot / 2) + ")\">fraction</text>\n";
    svg += "  <text x=\"" + px(kMargin) + "\" y=\"" + px(size - 28.0) +
           "\" text-anchor=\"middle\" font-size=\"11\">0</text>\n";
    svg += "  <text x=\"" + px(kMargin + kPlot) + "\" y=\"" + px(size - 28.0) +
           "\" text-anchor=\"middle\" font-size=\"11\">1</text>\n";
    svg += "  <polyline points=\"" + diag +
           "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    svg += "  <polyline points=\"" + err_line +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    svg += "  <polyline points=\"" + unc_line +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace crp
