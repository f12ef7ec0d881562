#include "omqm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace omqm::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 48.0;

std::string escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Frame {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

    double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
    double py(double y) const {
        return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
    }
};

Frame frame_for(const std::vector<Series>& series) {
    Frame f{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("svg: series x and y differ in length");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            f.x0 = std::min(f.x0, s.x[i]);
            f.x1 = std::max(f.x1, s.x[i]);
            f.y0 = std::min(f.y0, s.y[i]);
            f.y1 = std::max(f.y1, s.y[i]);
        }
    }
    if (!std::isfinite(f.x0)) f = Frame{};
    if (f.x1 == f.x0) f.x1 = f.x0 + 1;
    if (f.y1 == f.y0) f.y1 = f.y0 + 1;
    return f;
}

void open(std::ostringstream& os, const std::string& title) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"14\">"
       << escape(title) << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f) {
    os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
       << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"#444\"/>\n";
    auto label = [&](double x, double y, const std::string& text, const char* anchor) {
        os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
           << "\" font-family=\"sans-serif\" font-size=\"10\">" << text << "</text>\n";
    };
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", f.x0);
    label(kMargin, kHeight - kMargin + 14, buf, "start");
    std::snprintf(buf, sizeof buf, "%.4g", f.x1);
    label(kWidth - kMargin, kHeight - kMargin + 14, buf, "end");
    std::snprintf(buf, sizeof buf, "%.4g", f.y0);
    label(kMargin - 4, kHeight - kMargin, buf, "end");
    std::snprintf(buf, sizeof buf, "%.4g", f.y1);
    label(kMargin - 4, kMargin + 10, buf, "end");
}

}  // namespace

std::string line_plot(const std::vector<Series>& series, const std::string& title) {
    const Frame f = frame_for(series);
    std::ostringstream os;
    open(os, title);
    axes(os, f);
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << escape(s.colour) << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i])) << ' ';
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string scatter_plot(const std::vector<Series>& series, const std::string& title) {
    const Frame f = frame_for(series);
    std::ostringstream os;
    open(os, title);
    axes(os, f);
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            os << "<circle cx=\"" << num(f.px(s.x[i])) << "\" cy=\"" << num(f.py(s.y[i]))
               << "\" r=\"1.5\" fill=\"" << escape(s.colour) << "\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string histogram(const std::vector<double>& bars, const std::vector<double>& overlay,
                      const std::string& title) {
    if (!overlay.empty() && overlay.size() != bars.size()) {
        throw std::invalid_argument("svg: overlay must match the bar count");
    }
    double top = 0.0;
    for (const double v : bars) top = std::max(top, v);
    for (const double v : overlay) top = std::max(top, v);
    const Frame f{-0.5, static_cast<double>(bars.size()) - 0.5, 0.0, top > 0 ? top : 1.0};
    std::ostringstream os;
    open(os, title);
    axes(os, f);
    const double w = (kWidth - 2 * kMargin) / std::max<std::size_t>(bars.size(), 1) * 0.8;
    for (std::size_t k = 0; k < bars.size(); ++k) {
        const double cx = f.px(static_cast<double>(k));
        const double y = f.py(bars[k]);
        os << "<rect x=\"" << num(cx - w / 2) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
           << "\" height=\"" << num(f.py(0.0) - y) << "\" fill=\"#9ecae1\" stroke=\"#3182bd\"/>\n";
    }
    if (!overlay.empty()) {
        os << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < overlay.size(); ++k) {
            os << num(f.px(static_cast<double>(k))) << ',' << num(f.py(overlay[k])) << ' ';
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string heatmap(const std::vector<double>& values, std::size_t rows, std::size_t cols,
                    const std::string& title) {
    if (values.size() != rows * cols || rows == 0 || cols == 0) {
        throw std::invalid_argument("svg: heatmap dimensions do not match the data");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const double v : values) {
        if (!std::isfinite(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi == lo) hi = lo + 1.0;
    std::ostringstream os;
    open(os, title);
    const double cw = (kWidth - 2 * kMargin) / static_cast<double>(cols);
    const double ch = (kHeight - 2 * kMargin) / static_cast<double>(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = values[r * cols + c];
            const double t = std::isfinite(v) ? (v - lo) / (hi - lo) : 1.0;
            const int red = static_cast<int>(std::lround(230 - 200 * t));
            const int green = static_cast<int>(std::lround(230 - 150 * t));
            const int blue = static_cast<int>(std::lround(230 + 25 * t));
            char fill[16];
            std::snprintf(fill, sizeof fill, "#%02x%02x%02x", red, green, blue);
            os << "<rect x=\"" << num(kMargin + static_cast<double>(c) * cw) << "\" y=\""
               << num(kHeight - kMargin - static_cast<double>(r + 1) * ch) << "\" width=\""
               << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"" << fill << "\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace omqm::svg
