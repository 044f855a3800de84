#include "qwalk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qwalk {

namespace {

constexpr double kLeft = 70.0, kTop = 48.0, kPlotW = 560.0, kPlotH = 400.0;
constexpr double kLegendX = kLeft + kPlotW + 24.0;
constexpr double kWidth = 860.0, kHeight = 520.0;

const char* const kPalette[] = {"#1b6ca8", "#c0392b", "#1e8449",
                                "#8e44ad", "#d68910", "#117a8b"};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '&') out += "&amp;";
        else if (ch == '<') out += "&lt;";
        else if (ch == '>') out += "&gt;";
        else out += ch;
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double nice_step(double span) {
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double nice = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0;
    return nice * mag;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    bool seen = false;

    void add(double v) {
        if (!std::isfinite(v)) return;
        if (!seen) {
            lo = hi = v;
            seen = true;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void finalize() {
        if (!seen) { lo = 0.0; hi = 1.0; }
        if (hi - lo < 1e-300) { lo -= 0.5; hi += 0.5; }
        double pad = (hi - lo) * 0.05;
        lo -= pad;
        hi += pad;
    }
    double frac(double v) const { return (v - lo) / (hi - lo); }
};

}  // namespace

std::string render_plot_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const std::vector<PlotSeries>& series) {
    Range rx, ry;
    for (const PlotSeries& s : series) {
        size_t n = std::min(s.x.size(), s.y.size());
        for (size_t i = 0; i < n; ++i) {
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                rx.add(s.x[i]);
                ry.add(s.y[i]);
            }
        }
    }
    rx.finalize();
    ry.finalize();

    auto px = [&](double v) { return kLeft + rx.frac(v) * kPlotW; };
    auto py = [&](double v) { return kTop + (1.0 - ry.frac(v)) * kPlotH; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(kWidth) + " " +
           num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg += "<rect width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + num(kLeft + kPlotW / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-size=\"16\">" + escape_xml(title) + "</text>\n";

    // Frame.
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kPlotW) +
           "\" height=\"" + num(kPlotH) + "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // Ticks and grid.
    double sx = nice_step(rx.hi - rx.lo);
    for (double v = std::ceil(rx.lo / sx) * sx; v <= rx.hi + sx * 1e-9; v += sx) {
        double x = px(v);
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(kTop + kPlotH) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + kPlotH) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(kTop + kPlotH + 5) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + kPlotH + 20) +
               "\" text-anchor=\"middle\">" + num(v) + "</text>\n";
    }
    double sy = nice_step(ry.hi - ry.lo);
    for (double v = std::ceil(ry.lo / sy) * sy; v <= ry.hi + sy * 1e-9; v += sy) {
        double y = py(v);
        svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(kLeft + kPlotW) + "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
               "\" y2=\"" + num(y) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + num(kLeft - 9) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\">" + num(v) + "</text>\n";
    }

    // Axis labels.
    svg += "<text x=\"" + num(kLeft + kPlotW / 2) + "\" y=\"" + num(kTop + kPlotH + 42) +
           "\" text-anchor=\"middle\">" + escape_xml(x_label) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + num(kTop + kPlotH / 2) + "\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " + num(kTop + kPlotH / 2) + ")\">" +
           escape_xml(y_label) + "</text>\n";

    // Series polylines, broken at non-finite points.
    for (size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* color = kPalette[si % kPaletteSize];
        size_t n = std::min(s.x.size(), s.y.size());
        std::string points;
        auto flush = [&]() {
            if (!points.empty()) {
                svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                       "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
                points.clear();
            }
        };
        for (size_t i = 0; i < n; ++i) {
            if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                if (!points.empty()) points += ' ';
                points += num(px(s.x[i])) + "," + num(py(s.y[i]));
            } else {
                flush();
            }
        }
        flush();

        double ly = kTop + 10.0 + 22.0 * static_cast<double>(si);
        svg += "<line x1=\"" + num(kLegendX) + "\" y1=\"" + num(ly) + "\" x2=\"" +
               num(kLegendX + 26) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(kLegendX + 32) + "\" y=\"" + num(ly + 4) + "\">" +
               escape_xml(s.label) + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace qwalk
