#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "liftlab/errors.hpp"

namespace liftlab {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Least-squares slope of log10(y) against log10(x).
inline double fit_loglog_slope(const Series& s) {
    if (s.points.size() < 2) throw Error(ErrorCode::EmptySeries, "need at least 2 points to fit a slope");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = 0;
    for (auto& [x, y] : s.points) {
        if (!(x > 0.0) || !(y > 0.0)) continue;
        double lx = std::log10(x), ly = std::log10(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        n += 1;
    }
    if (n < 2) throw Error(ErrorCode::EmptySeries, "need at least 2 positive points to fit a slope");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Single SVG with log-log axes, one polyline per series and the fitted
/// slope of the first series annotated.
inline void emit_plot(const std::vector<Series>& series, const std::string& path) {
    if (series.empty()) throw Error(ErrorCode::EmptySeries, "no series");
    for (const auto& s : series)
        if (s.points.size() < 2) throw Error(ErrorCode::EmptySeries, "series '" + s.label + "' has fewer than 2 points");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            xmin = std::min(xmin, std::log10(x));
            xmax = std::max(xmax, std::log10(x));
            ymin = std::min(ymin, std::log10(y));
            ymax = std::max(ymax, std::log10(y));
        }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;

    const double W = 640, H = 480, ml = 60, mr = 20, mt = 20, mb = 40;
    auto X = [&](double lx) { return ml + (lx - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double ly) { return H - mb - (ly - ymin) / (ymax - ymin) * (H - mb - mt); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", ml, H - mb, W - mr,
                  H - mb);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", ml, H - mb, ml, mt);
    svg += buf;
    // decade ticks
    for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax)); ++d) {
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\">1e%d</text>\n",
                      X(d), H - mb, X(d), H - mb + 5, X(d), H - mb + 18, d);
        svg += buf;
    }
    for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax)); ++d) {
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>"
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"end\">1e%d</text>\n",
                      ml - 5, Y(d), ml, Y(d), ml - 8, Y(d) + 4, d);
        svg += buf;
    }
    int ci = 0;
    for (const auto& s : series) {
        std::string pts;
        for (auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", X(std::log10(x)), Y(std::log10(y)));
            pts += buf;
        }
        std::snprintf(buf, sizeof(buf), "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\"/>\n",
                      pts.c_str(), colors[ci % 6]);
        svg += buf;
        std::snprintf(buf, sizeof(buf), "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                      W - mr - 150.0, mt + 16.0 * (ci + 1), colors[ci % 6], s.label.c_str());
        svg += buf;
        ++ci;
    }
    double slope = fit_loglog_slope(series[0]);
    std::snprintf(buf, sizeof(buf), "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\">fitted slope = %.4f</text>\n", ml + 10.0,
                  mt + 14.0, slope);
    svg += buf;
    svg += "</svg>\n";

    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp);
        out << svg;
        if (!out) throw Error(ErrorCode::IoError, "write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::IoError, "rename failed: " + path);
}

}  // namespace liftlab
