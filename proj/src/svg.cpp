#include "sqbench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sqbench {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 160;
constexpr int kMarginTop = 48;
constexpr int kMarginBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string render_line_chart(const std::vector<PlotSeries>& series,
                              const PlotOptions& options) {
    if (series.empty()) throw std::invalid_argument("no series to plot");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmin > xmax) throw std::invalid_argument("series have no points");
    if (options.zero_line) {
        ymin = std::min(ymin, 0.0);
        ymax = std::max(ymax, 0.0);
    }
    if (xmax == xmin) { xmax += 1.0; xmin -= 1.0; }
    if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }
    double ypad = 0.06 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << options.title
        << "</text>\n";

    // axes
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";

    const int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        double xv = xmin + (xmax - xmin) * i / kTicks;
        double yv = ymin + (ymax - ymin) * i / kTicks;
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << kMarginTop + plot_h
            << "\" x2=\"" << px(xv) << "\" y2=\"" << kMarginTop + plot_h + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(xv) << "\" y=\"" << kMarginTop + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << fmt(xv) << "</text>\n";
        out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py(yv)
            << "\" x2=\"" << kMarginLeft << "\" y2=\"" << py(yv)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kMarginLeft - 9 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << fmt(yv) << "</text>\n";
    }
    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << options.xlabel << "</text>\n";
    out << "<text x=\"20\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << kMarginTop + plot_h / 2 << ")\">"
        << options.ylabel << "</text>\n";

    if (options.zero_line && ymin < 0.0 && ymax > 0.0) {
        out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << py(0.0) << "\" x2=\""
            << kMarginLeft + plot_w << "\" y2=\"" << py(0.0)
            << "\" stroke=\"#888\" stroke-dasharray=\"6,4\"/>\n";
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
        if (series[i].points.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"2\" points=\"";
            for (auto [x, y] : series[i].points) out << px(x) << "," << py(y) << " ";
            out << "\"/>\n";
        }
        for (auto [x, y] : series[i].points)
            out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        double ly = kMarginTop + 16.0 * static_cast<double>(i);
        out << "<line x1=\"" << kMarginLeft + plot_w + 12 << "\" y1=\"" << ly
            << "\" x2=\"" << kMarginLeft + plot_w + 34 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kMarginLeft + plot_w + 40 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[i].label
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace sqbench
