#pragma once

#include <cmath>

namespace scnplan {

// Pixel lattice over the service area. Pixels are indexed row-major from the
// southwest corner; all distances are center-to-center in meters.
struct GridGeometry {
    double width_m = 0.0;
    double height_m = 0.0;
    double resolution_m = 0.0;
    int nx = 0; // columns (west -> east)
    int ny = 0; // rows (south -> north)

    // Validates that width/height are exact multiples of the resolution.
    static GridGeometry make(double width_m, double height_m, double resolution_m);

    int n_pixels() const { return nx * ny; }
    int col(int u) const { return u % nx; }
    int row(int u) const { return u / nx; }
    int index(int col, int row) const { return row * nx + col; }

    double center_x(int u) const { return (col(u) + 0.5) * resolution_m; }
    double center_y(int u) const { return (row(u) + 0.5) * resolution_m; }

    double distance_2d(int a, int b) const {
        double dx = center_x(a) - center_x(b);
        double dy = center_y(a) - center_y(b);
        return std::sqrt(dx * dx + dy * dy);
    }

    double diagonal_m() const { return std::sqrt(width_m * width_m + height_m * height_m); }

    bool contains(int u) const { return u >= 0 && u < n_pixels(); }
};

} // namespace scnplan
