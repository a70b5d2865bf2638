#include "msf/vision/raster.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msf::vision {

ContourRaster::ContourRaster(const GridFrame& frame, std::uint8_t fill)
    : GridFrame(frame), intensity(frame.pixel_count(), fill) {}

void ContourRaster::validate() const {
    MSF_REQUIRE(scale > 0, "raster scale must be positive");
    MSF_REQUIRE(width > 0 && height > 0, "raster must be non-empty");
    MSF_REQUIRE(intensity.size() == pixel_count(), "raster size does not match its dimensions");
}

BinaryGrid::BinaryGrid(const GridFrame& frame, bool fill) : GridFrame(frame), cells(frame.pixel_count(), fill ? 1 : 0) {}

std::size_t BinaryGrid::count() const {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

ContourRaster rasterize(const std::vector<Vec3>& points, double resolution, double radius,
                        const std::optional<Bounds2>& bounds) {
    MSF_REQUIRE(!points.empty(), "rasterize needs at least one point");
    MSF_REQUIRE(resolution > 0, "raster resolution must be positive");
    MSF_REQUIRE(radius > 0, "splat radius must be positive");

    GridFrame frame;
    frame.scale = resolution;
    if (bounds) {
        MSF_REQUIRE(bounds->x_hi > bounds->x_lo && bounds->y_hi > bounds->y_lo, "degenerate raster bounds");
        frame.origin_x = bounds->x_lo;
        frame.origin_y = bounds->y_lo;
        frame.width = static_cast<int>(std::ceil((bounds->x_hi - bounds->x_lo) / resolution - 1e-9));
        frame.height = static_cast<int>(std::ceil((bounds->y_hi - bounds->y_lo) / resolution - 1e-9));
    } else {
        double xl = std::numeric_limits<double>::max(), yl = xl;
        double xh = std::numeric_limits<double>::lowest(), yh = xh;
        for (const auto& p : points) {
            xl = std::min(xl, p.x);
            yl = std::min(yl, p.y);
            xh = std::max(xh, p.x);
            yh = std::max(yh, p.y);
        }
        MSF_REQUIRE(std::isfinite(xl) && std::isfinite(xh) && std::isfinite(yl) && std::isfinite(yh),
                    "degenerate raster bounds");
        const int i0 = static_cast<int>(std::floor((xl - radius) / resolution)) - 1;
        const int j0 = static_cast<int>(std::floor((yl - radius) / resolution)) - 1;
        const int i1 = static_cast<int>(std::ceil((xh + radius) / resolution)) + 1;
        const int j1 = static_cast<int>(std::ceil((yh + radius) / resolution)) + 1;
        frame.origin_x = (i0 - 0.5) * resolution;
        frame.origin_y = (j0 - 0.5) * resolution;
        frame.width = i1 - i0 + 1;
        frame.height = j1 - j0 + 1;
    }
    MSF_REQUIRE(frame.width > 0 && frame.height > 0, "degenerate raster bounds");

    ContourRaster out(frame, 0);
    const double r2 = radius * radius;
    for (const auto& p : points) {
        const int ilo = std::max(0, static_cast<int>(std::floor((p.x - radius - frame.origin_x) / resolution)));
        const int ihi = std::min(frame.width - 1, static_cast<int>(std::floor((p.x + radius - frame.origin_x) / resolution)));
        const int jlo = std::max(0, static_cast<int>(std::floor((p.y - radius - frame.origin_y) / resolution)));
        const int jhi = std::min(frame.height - 1, static_cast<int>(std::floor((p.y + radius - frame.origin_y) / resolution)));
        for (int j = jlo; j <= jhi; ++j) {
            const double dy = frame.centre_y(j) - p.y;
            for (int i = ilo; i <= ihi; ++i) {
                const double dx = frame.centre_x(i) - p.x;
                if (dx * dx + dy * dy <= r2) out.at(i, j) = 255;
            }
        }
    }
    return out;
}

ContourRaster to_raster(const BinaryGrid& grid) {
    ContourRaster out(grid, 0);
    for (std::size_t k = 0; k < grid.cells.size(); ++k) out.intensity[k] = grid.cells[k] ? 255 : 0;
    return out;
}

}  // namespace msf::vision
