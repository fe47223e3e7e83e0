#include "bohmflow/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace bohmflow::svg {
namespace {

constexpr double kPlotW = 320.0, kPlotH = 260.0;
constexpr double kLeft = 62.0, kRight = 18.0, kTop = 30.0, kBottom = 46.0;
constexpr double kPanelW = kLeft + kPlotW + kRight;
constexpr double kPanelH = kTop + kPlotH + kBottom;
constexpr double kHeader = 34.0;
constexpr int kLevels = 64;

// Inferno anchors.
constexpr std::array<std::array<int, 3>, 8> kMap = {{{0, 0, 4},
                                                     {40, 11, 84},
                                                     {101, 21, 110},
                                                     {159, 42, 99},
                                                     {212, 72, 66},
                                                     {245, 125, 21},
                                                     {250, 193, 39},
                                                     {252, 255, 164}}};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string level_color(int level) {
    const double t = static_cast<double>(level) / (kLevels - 1) * (kMap.size() - 1);
    const size_t i = std::min(static_cast<size_t>(t), kMap.size() - 2);
    const double f = t - static_cast<double>(i);
    char buf[8];
    int rgb[3];
    for (int c = 0; c < 3; ++c)
        rgb[c] = static_cast<int>(std::lround(kMap[i][static_cast<size_t>(c)] * (1 - f) + kMap[i + 1][static_cast<size_t>(c)] * f));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

// Quantized colour levels of a heatmap: 99.5th percentile clip (linear) or four decades (log).
std::vector<int> quantize(const Heatmap& h) {
    std::vector<double> finite;
    for (double v : h.values)
        if (std::isfinite(v)) finite.push_back(v);
    double top = 0.0;
    if (!finite.empty()) {
        std::sort(finite.begin(), finite.end());
        top = h.log_scale ? finite.back() : finite[static_cast<size_t>(0.995 * (finite.size() - 1))];
    }
    std::vector<int> levels(h.values.size(), 0);
    if (!(top > 0.0)) return levels;
    for (size_t i = 0; i < h.values.size(); ++i) {
        const double v = h.values[i];
        double u;
        if (std::isnan(v)) u = 0.0;
        else if (!std::isfinite(v)) u = 1.0;
        else if (h.log_scale) u = (std::log10(std::max(v, top * 1e-4)) - std::log10(top)) / 4.0 + 1.0;
        else u = v / top;
        levels[i] = static_cast<int>(std::clamp(u, 0.0, 1.0) * (kLevels - 1) + 0.5);
    }
    return levels;
}

void draw_panel(std::string& s, const Panel& p, double ox, double oy, int id) {
    const double px0 = ox + kLeft, py0 = oy + kTop;
    auto X = [&](double x) { return px0 + (x - p.x_min) / (p.x_max - p.x_min) * kPlotW; };
    auto Y = [&](double y) { return py0 + kPlotH - (y - p.y_min) / (p.y_max - p.y_min) * kPlotH; };

    s += "<clipPath id=\"c" + std::to_string(id) + "\"><rect x=\"" + num(px0) + "\" y=\"" + num(py0) +
         "\" width=\"" + num(kPlotW) + "\" height=\"" + num(kPlotH) + "\"/></clipPath>\n";
    s += "<rect x=\"" + num(px0) + "\" y=\"" + num(py0) + "\" width=\"" + num(kPlotW) + "\" height=\"" + num(kPlotH) +
         "\" fill=\"" + (p.heatmap ? level_color(0) : std::string("#ffffff")) + "\"/>\n";
    s += "<g clip-path=\"url(#c" + std::to_string(id) + ")\">\n";
    if (p.heatmap) {
        const auto& h = *p.heatmap;
        const auto levels = quantize(h);
        const double dx = h.nx > 1 ? (h.x_max - h.x_min) / (h.nx - 1) : (h.x_max - h.x_min);
        const double dy = h.ny > 1 ? (h.y_max - h.y_min) / (h.ny - 1) : (h.y_max - h.y_min);
        for (int iy = 0; iy < h.ny; ++iy) {
            const double yc = h.y_min + iy * dy;
            const double ytop = Y(yc + dy / 2), ybot = Y(yc - dy / 2);
            int ix = 0;
            while (ix < h.nx) {
                const int lv = levels[static_cast<size_t>(iy * h.nx + ix)];
                int end = ix + 1;
                while (end < h.nx && levels[static_cast<size_t>(iy * h.nx + end)] == lv) ++end;
                if (lv > 0) {
                    const double xl = X(h.x_min + (ix - 0.5) * dx), xr = X(h.x_min + (end - 0.5) * dx);
                    s += "<rect x=\"" + num(xl) + "\" y=\"" + num(ytop) + "\" width=\"" + num(xr - xl) +
                         "\" height=\"" + num(ybot - ytop) + "\" fill=\"" + level_color(lv) + "\"/>\n";
                }
                ix = end;
            }
        }
    }
    for (const auto& c : p.curves) {
        if (c.markers) {
            for (size_t i = 0; i < c.x.size() && i < c.y.size(); ++i)
                if (std::isfinite(c.x[i]) && std::isfinite(c.y[i]))
                    s += "<circle cx=\"" + num(X(c.x[i])) + "\" cy=\"" + num(Y(c.y[i])) + "\" r=\"3\" fill=\"none\" stroke=\"" +
                         c.color + "\" stroke-width=\"" + num(c.width) + "\"/>\n";
            continue;
        }
        std::string pts;
        auto flush = [&] {
            if (!pts.empty())
                s += "<polyline fill=\"none\" stroke=\"" + c.color + "\" stroke-width=\"" + num(c.width) + "\"" +
                     (c.dashed ? " stroke-dasharray=\"5,4\"" : "") + " points=\"" + pts + "\"/>\n";
            pts.clear();
        };
        for (size_t i = 0; i < c.x.size() && i < c.y.size(); ++i) {
            if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i])) {
                flush();
                continue;
            }
            if (!pts.empty()) pts += ' ';
            pts += num(X(c.x[i])) + "," + num(Y(c.y[i]));
        }
        flush();
    }
    s += "</g>\n";
    s += "<rect x=\"" + num(px0) + "\" y=\"" + num(py0) + "\" width=\"" + num(kPlotW) + "\" height=\"" + num(kPlotH) +
         "\" fill=\"none\" stroke=\"#000000\"/>\n";

    const double xs = nice_step(p.x_max - p.x_min), ys = nice_step(p.y_max - p.y_min);
    for (double t = std::ceil(p.x_min / xs) * xs; t <= p.x_max + 1e-9 * xs; t += xs) {
        const double x = X(t);
        s += "<line x1=\"" + num(x) + "\" y1=\"" + num(py0 + kPlotH) + "\" x2=\"" + num(x) + "\" y2=\"" +
             num(py0 + kPlotH + 5) + "\" stroke=\"#000000\"/>\n";
        s += "<text x=\"" + num(x) + "\" y=\"" + num(py0 + kPlotH + 18) + "\" text-anchor=\"middle\">" +
             tick_label(t) + "</text>\n";
    }
    for (double t = std::ceil(p.y_min / ys) * ys; t <= p.y_max + 1e-9 * ys; t += ys) {
        const double y = Y(t);
        s += "<line x1=\"" + num(px0 - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(px0) + "\" y2=\"" + num(y) +
             "\" stroke=\"#000000\"/>\n";
        s += "<text x=\"" + num(px0 - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + tick_label(t) +
             "</text>\n";
    }
    s += "<text x=\"" + num(px0 + kPlotW / 2) + "\" y=\"" + num(py0 + kPlotH + 38) + "\" text-anchor=\"middle\">" +
         escape(p.x_label) + "</text>\n";
    s += "<text transform=\"translate(" + num(ox + 16) + "," + num(py0 + kPlotH / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(p.y_label) + "</text>\n";
    s += "<text x=\"" + num(px0 + kPlotW / 2) + "\" y=\"" + num(oy + 20) + "\" text-anchor=\"middle\" font-weight=\"bold\">" +
         escape(p.title) + "</text>\n";
}

} // namespace

std::string render(const std::string& title, const std::vector<Panel>& panels, int columns) {
    columns = std::max(1, std::min<int>(columns, static_cast<int>(std::max<size_t>(1, panels.size()))));
    const int rows = static_cast<int>((panels.size() + static_cast<size_t>(columns) - 1) / static_cast<size_t>(columns));
    const double width = columns * kPanelW, height = kHeader + rows * kPanelH;
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"" + num(width / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape(title) +
         "</text>\n";
    for (size_t i = 0; i < panels.size(); ++i) {
        const double ox = static_cast<double>(i % static_cast<size_t>(columns)) * kPanelW;
        const double oy = kHeader + static_cast<double>(i / static_cast<size_t>(columns)) * kPanelH;
        draw_panel(s, panels[i], ox, oy, static_cast<int>(i));
    }
    s += "</svg>\n";
    return s;
}

} // namespace bohmflow::svg
