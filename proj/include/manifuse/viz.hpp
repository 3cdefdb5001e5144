#pragma once

#include <filesystem>

#include "manifuse/types.hpp"

namespace manifuse::viz {

// Cyclic color ramp: unit position -> fully saturated hue wheel. Cyclic so
// that angle-valued scalars wrap without a seam.
struct Color {
    double r, g, b;
};
Color ramp(double unit_position);

// hue in [0, 2pi) recovered from a ramp color; used to verify plots.
double hue_angle(const Color& c);

// 2-D scatter of two embedding columns, one <circle> element per sample,
// colored by `color_by` through the ramp. Deterministic byte output.
void svg_scatter(const std::filesystem::path& path, const Matrix& coords,
                 Eigen::Index x_col, Eigen::Index y_col, const Vector& color_by,
                 int width = 640, int height = 640);

} // namespace manifuse::viz
