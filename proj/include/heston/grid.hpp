#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heston {

/// Uniform grid {x0 + i dx, i = -M..M}. The center x0 is always a grid point,
/// stored at index M of the 2M+1 points.
struct SpatialGrid {
    double x0;
    double dx;
    int half_count;  // M

    SpatialGrid(double center, double spacing, int half_points)
        : x0(center), dx(spacing), half_count(half_points) {
        if (!(dx > 0.0)) throw std::invalid_argument("grid spacing must be positive");
        if (half_count < 1) throw std::invalid_argument("grid half-count must be >= 1");
    }

    [[nodiscard]] int size() const noexcept { return 2 * half_count + 1; }
    [[nodiscard]] int center_index() const noexcept { return half_count; }
    [[nodiscard]] double point(int i) const noexcept { return x0 + (i - half_count) * dx; }

    /// Smallest grid covering at least half_width on each side of the center.
    static SpatialGrid centered(double center, double spacing, double half_width) {
        if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
        const int m = static_cast<int>(std::ceil(half_width / spacing));
        return SpatialGrid(center, spacing, std::max(m, 1));
    }
};

}  // namespace heston
