#include "fhidep/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fhidep {

namespace {

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Tick step of the form {1,2,5} x 10^k giving 4..8 ticks over `range`.
double nice_step(double range) {
    if (!(range > 0.0) || !std::isfinite(range)) return 1.0;
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step;
    if (frac < 1.5) {
        step = 1.0;
    } else if (frac < 3.5) {
        step = 2.0;
    } else if (frac < 7.5) {
        step = 5.0;
    } else {
        step = 10.0;
    }
    return step * mag;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2", "#393b79", "#637939"};

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<SvgSeries>& series) {
    const double width = 880, height = 560;
    const double ml = 90, mr = 220, mt = 50, mb = 60;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool any = false;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (!any) {
                x_lo = x_hi = s.x[i];
                y_lo = y_hi = s.y[i];
                any = true;
            } else {
                x_lo = std::min(x_lo, s.x[i]);
                x_hi = std::max(x_hi, s.x[i]);
                y_lo = std::min(y_lo, s.y[i]);
                y_hi = std::max(y_hi, s.y[i]);
            }
        }
    }
    if (!any) {
        x_lo = y_lo = 0;
        x_hi = y_hi = 1;
    }
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo) {
        const double pad = std::max(0.5, std::abs(y_hi) * 0.5);
        y_lo -= pad;
        y_hi += pad;
    }
    const double ypad = 0.05 * (y_hi - y_lo);
    y_lo -= ypad;
    y_hi += ypad;

    const auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
    const auto py = [&](double y) { return mt + ph - (y - y_lo) / (y_hi - y_lo) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"28\" font-family=\"sans-serif\" "
        << "font-size=\"16\" text-anchor=\"middle\">" << escape_xml(title)
        << "</text>\n";

    // Gridlines and ticks.
    const double xs = nice_step(x_hi - x_lo);
    const double ys = nice_step(y_hi - y_lo);
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    for (double x = std::ceil(x_lo / xs) * xs; x <= x_hi + 1e-9 * xs; x += xs) {
        svg << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(mt) << "\" x2=\""
            << num(px(x)) << "\" y2=\"" << num(mt + ph)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(px(x)) << "\" y=\"" << num(mt + ph + 16)
            << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    }
    for (double y = std::ceil(y_lo / ys) * ys; y <= y_hi + 1e-9 * ys; y += ys) {
        svg << "<line x1=\"" << num(ml) << "\" y1=\"" << num(py(y)) << "\" x2=\""
            << num(ml + pw) << "\" y2=\"" << num(py(y))
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(ml - 6) << "\" y=\"" << num(py(y) + 4)
            << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
    }
    svg << "</g>\n";

    // Axes.
    svg << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw)
        << "\" height=\"" << num(ph)
        << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(height - 14)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << escape_xml(x_label) << "</text>\n";
    svg << "<text x=\"20\" y=\"" << num(mt + ph / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 20 " << num(mt + ph / 2) << ")\">"
        << escape_xml(y_label) << "</text>\n";

    // Series and legend.
    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
        std::ostringstream pts;
        bool started = false;
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (started) pts << " ";
            pts << num(px(s.x[i])) << "," << num(py(s.y[i]));
            started = true;
        }
        if (started) {
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.6\" points=\"" << pts.str() << "\"/>\n";
        }
        const double ly = mt + 10 + 18.0 * static_cast<double>(si);
        svg << "<line x1=\"" << num(ml + pw + 14) << "\" y1=\"" << num(ly) << "\" x2=\""
            << num(ml + pw + 38) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(ml + pw + 44) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(s.label)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace fhidep
