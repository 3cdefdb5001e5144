#include "manifuse/viz.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace manifuse::viz {

Color ramp(double unit_position) {
    double u = unit_position - std::floor(unit_position);   // wrap to [0,1)
    const double h = u * 6.0;
    const int sector = static_cast<int>(h) % 6;
    const double f = h - std::floor(h);
    const double v = 0.9, s = 0.85;
    const double p = v * (1.0 - s);
    const double q = v * (1.0 - s * f);
    const double t = v * (1.0 - s * (1.0 - f));
    switch (sector) {
        case 0: return {v, t, p};
        case 1: return {q, v, p};
        case 2: return {p, v, t};
        case 3: return {p, q, v};
        case 4: return {t, p, v};
        default: return {v, p, q};
    }
}

double hue_angle(const Color& c) {
    const double mx = std::max({c.r, c.g, c.b});
    const double mn = std::min({c.r, c.g, c.b});
    const double delta = mx - mn;
    if (delta <= 0.0) return 0.0;
    double h;
    if (mx == c.r)
        h = std::fmod((c.g - c.b) / delta, 6.0);
    else if (mx == c.g)
        h = (c.b - c.r) / delta + 2.0;
    else
        h = (c.r - c.g) / delta + 4.0;
    if (h < 0.0) h += 6.0;
    return h / 6.0 * 2.0 * M_PI;
}

void svg_scatter(const std::filesystem::path& path, const Matrix& coords,
                 Eigen::Index x_col, Eigen::Index y_col, const Vector& color_by,
                 int width, int height) {
    if (x_col < 0 || x_col >= coords.cols() || y_col < 0 || y_col >= coords.cols())
        throw invalid_config_error("svg_scatter: coordinate column out of range");
    if (color_by.size() != coords.rows())
        throw invalid_input_error("svg_scatter: color vector length mismatch");

    const Vector xs = coords.col(x_col);
    const Vector ys = coords.col(y_col);
    const double x_lo = xs.minCoeff(), x_hi = xs.maxCoeff();
    const double y_lo = ys.minCoeff(), y_hi = ys.maxCoeff();
    const double c_lo = color_by.minCoeff(), c_hi = color_by.maxCoeff();
    const double margin = 24.0;
    const double x_span = x_hi > x_lo ? x_hi - x_lo : 1.0;
    const double y_span = y_hi > y_lo ? y_hi - y_lo : 1.0;
    const double c_span = c_hi > c_lo ? c_hi - c_lo : 1.0;

    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path.string() + "' for writing");
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n",
                  width, height, width, height);
    f << buf;
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"#181818\"/>\n",
                  width, height);
    f << buf;
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
        const double px = margin + (xs(i) - x_lo) / x_span * (width - 2.0 * margin);
        const double py = height - margin - (ys(i) - y_lo) / y_span * (height - 2.0 * margin);
        const Color c = ramp((color_by(i) - c_lo) / c_span);
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"#%02x%02x%02x\"/>\n", px,
                      py, static_cast<int>(std::lround(c.r * 255.0)),
                      static_cast<int>(std::lround(c.g * 255.0)),
                      static_cast<int>(std::lround(c.b * 255.0)));
        f << buf;
    }
    f << "</svg>\n";
    if (!f) throw io_error("write failed for '" + path.string() + "'");
}

} // namespace manifuse::viz
