#include "typhoid/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace typhoid {

namespace {

constexpr int kWidth = 880, kHeight = 540;
constexpr int kLeft = 72, kRight = 24, kTop = 44, kBottom = 56;
constexpr size_t kMaxPointsPerSeries = 1200;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void widen(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
};

// Round tick spacing to a 1/2/5 decade step.
std::vector<double> ticks(double lo, double hi, int target = 6) {
    std::vector<double> out;
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    double step = std::pow(10.0, std::floor(std::log10(span / target)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (span / (step * mult) <= target) {
            step *= mult;
            break;
        }
    }
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + 1e-12 * span; t += step)
        out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return out;
}

} // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<Series>& series) {
    Range rx, ry;
    bool any = false;
    for (const auto& s : series)
        for (size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
            if (!any) {
                rx = {s.x[k], s.x[k]};
                ry = {s.y[k], s.y[k]};
                any = true;
            } else {
                rx.widen(s.x[k]);
                ry.widen(s.y[k]);
            }
        }
    if (!any) {
        rx = {0.0, 1.0};
        ry = {0.0, 1.0};
    }
    if (rx.hi - rx.lo <= 0.0) {
        rx.lo -= 0.5;
        rx.hi += 0.5;
    }
    if (ry.hi - ry.lo <= 0.0) {
        ry.lo -= 0.5;
        ry.hi += 0.5;
    }
    const double pad = 0.04 * (ry.hi - ry.lo);
    ry.lo -= pad;
    ry.hi += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double v) { return kLeft + (v - rx.lo) / (rx.hi - rx.lo) * plot_w; };
    const auto py = [&](double v) { return kTop + (ry.hi - v) / (ry.hi - ry.lo) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"26\" font-family=\"sans-serif\" font-size=\"16\""
        << " text-anchor=\"middle\">" << escape(title) << "</text>\n";

    // Gridlines + tick labels.
    for (double t : ticks(rx.lo, rx.hi)) {
        const double x = px(t);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << kTop << "\" x2=\"" << num(x)
            << "\" y2=\"" << kTop + plot_h << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << num(x) << "\" y=\"" << kTop + plot_h + 18
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(t)
            << "</text>\n";
    }
    for (double t : ticks(ry.lo, ry.hi)) {
        const double y = py(t);
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft + plot_w
            << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
            << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(t)
            << "</text>\n";
    }

    // Axes.
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + plot_h << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 14
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << escape(x_label) << "</text>\n"
        << "<text x=\"20\" y=\"" << kTop + plot_h / 2
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 20 " << kTop + plot_h / 2 << ")\">" << escape(y_label)
        << "</text>\n";

    for (size_t sidx = 0; sidx < series.size(); ++sidx) {
        const auto& s = series[sidx];
        const size_t n = std::min(s.x.size(), s.y.size());
        const size_t stride = std::max<size_t>(1, (n + kMaxPointsPerSeries - 1) / kMaxPointsPerSeries);
        svg << "<polyline fill=\"none\" stroke=\"" << kPalette[sidx % 6]
            << "\" stroke-width=\"1.6\" points=\"";
        for (size_t k = 0; k < n; k += stride)
            svg << num(px(s.x[k])) << "," << num(py(s.y[k])) << " ";
        if (n > 0 && (n - 1) % stride != 0)
            svg << num(px(s.x[n - 1])) << "," << num(py(s.y[n - 1]));
        svg << "\"/>\n";
    }

    // Legend, top-right inside the plot area.
    for (size_t sidx = 0; sidx < series.size(); ++sidx) {
        const double ly = kTop + 14 + 18.0 * static_cast<double>(sidx);
        svg << "<line x1=\"" << kLeft + plot_w - 130 << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << kLeft + plot_w - 104 << "\" y2=\"" << num(ly - 4) << "\" stroke=\""
            << kPalette[sidx % 6] << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kLeft + plot_w - 98 << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(series[sidx].label)
            << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

} // namespace typhoid
