#include "detunesim/svg.hpp"

#include "detunesim/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace dsim::cli {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 160;  // legend lives here
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

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

} // namespace

void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series) {
    if (series.empty())
        throw SimError(ErrorCode::ValidationError, "plot needs at least one series");
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw SimError(ErrorCode::ValidationError,
                           "plot series '" + s.label + "' is empty or ragged");
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";

    // axes box and ticks
    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double xv = xmin + (xmax - xmin) * i / ticks;
        const double yv = ymin + (ymax - ymin) * i / ticks;
        const double xp = px(xv), yp = py(yv);
        svg << "<line x1=\"" << fmt(xp) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
            << fmt(xp) << "\" y2=\"" << fmt(kMarginTop + plot_h + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(xp) << "\" y=\"" << fmt(kMarginTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(xv) << "</text>\n"
            << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << fmt(yp) << "\" x2=\""
            << kMarginLeft << "\" y2=\"" << fmt(yp) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(yp + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(yv)
            << "</text>\n";
    }
    svg << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << fmt(kMarginTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << fmt(kMarginTop + plot_h / 2) << ")\">"
        << escape(y_label) << "</text>\n";

    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (!s.dash.empty()) svg << " stroke-dasharray=\"" << s.dash << "\"";
        svg << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
        }
        svg << "\"/>\n";
    }

    // legend
    const double lx = kMarginLeft + plot_w + 12;
    double ly = kMarginTop + 10;
    for (const auto& s : series) {
        svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
            << fmt(lx + 24) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"1.5\"";
        if (!s.dash.empty()) svg << " stroke-dasharray=\"" << s.dash << "\"";
        svg << "/>\n<text x=\"" << fmt(lx + 30) << "\" y=\"" << fmt(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label)
            << "</text>\n";
        ly += 18;
    }
    svg << "</svg>\n";

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw SimError(ErrorCode::IoError, "cannot open " + tmp.string());
        const std::string text = svg.str();
        out.write(text.data(), std::streamsize(text.size()));
        if (!out)
            throw SimError(ErrorCode::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw SimError(ErrorCode::IoError,
                       "rename to " + path.string() + " failed: " + ec.message());
    }
}

} // namespace dsim::cli
