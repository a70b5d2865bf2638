/**
 * @file raster.hpp
 * @brief Grey-level and binary grids in physical coordinates.
 *
 * Row 0 is the lowest y. Pixel (i, j) covers
 * [origin_x + i*scale, origin_x + (i+1)*scale) x [origin_y + j*scale, ...).
 */
#pragma once

#include "msf/core/vec3.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace msf::vision {

struct Pixel {
    int x = 0;
    int y = 0;
    friend bool operator==(const Pixel&, const Pixel&) = default;
};

struct GridFrame {
    int width = 0;
    int height = 0;
    double scale = 1.0;  ///< Angstrom per pixel
    double origin_x = 0.0;
    double origin_y = 0.0;

    bool inside(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    /// Physical centre of a pixel.
    double centre_x(int x) const { return origin_x + (x + 0.5) * scale; }
    double centre_y(int y) const { return origin_y + (y + 0.5) * scale; }
};

struct ContourRaster : GridFrame {
    std::vector<std::uint8_t> intensity;

    ContourRaster() = default;
    ContourRaster(const GridFrame& frame, std::uint8_t fill = 0);
    std::uint8_t at(int x, int y) const { return intensity[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return intensity[index(x, y)]; }
    void validate() const;
};

struct BinaryGrid : GridFrame {
    std::vector<std::uint8_t> cells;

    BinaryGrid() = default;
    explicit BinaryGrid(const GridFrame& frame, bool fill = false);
    bool at(int x, int y) const { return cells[index(x, y)] != 0; }
    bool get(int x, int y) const { return inside(x, y) && at(x, y); }
    void set(int x, int y, bool v) { cells[index(x, y)] = v ? 1 : 0; }
    std::size_t count() const;
    bool empty() const { return count() == 0; }
};

struct Bounds2 {
    double x_lo, y_lo, x_hi, y_hi;
};

/// Splats each point as a filled disc (intensity 255) of the given radius on
/// a zero background. Without explicit bounds the grid covers the points
/// padded by the radius, with pixel centres on integer multiples of the
/// resolution so that a point at the origin sits on a pixel centre.
/// Throws InvalidArgument for no points, non-positive resolution or radius,
/// or a degenerate extent.
ContourRaster rasterize(const std::vector<Vec3>& points, double resolution, double radius,
                        const std::optional<Bounds2>& bounds = std::nullopt);

/// 255 where set, 0 elsewhere.
ContourRaster to_raster(const BinaryGrid& grid);

}  // namespace msf::vision
