/**
 * @file morphology.hpp
 * @brief Thresholding, median filtering and connected-region utilities.
 */
#pragma once

#include "msf/vision/raster.hpp"

#include <string>
#include <vector>

namespace msf::vision {

enum class Edge { Left, Right, Bottom, Top };

Edge parse_edge(const std::string& name);
std::string edge_name(Edge e);

/// True where intensity >= threshold.
BinaryGrid binarize(const ContourRaster& raster, int threshold);

/// Majority vote over an odd square window; borders replicate the edge.
BinaryGrid median_filter(const BinaryGrid& grid, int window);

/// binarize followed by median_filter. Throws for an even window or one below 3.
BinaryGrid binarize_median(const ContourRaster& raster, int threshold, int window);

/// Otsu's between-class-variance threshold, in [1, 255].
int otsu_threshold(const ContourRaster& raster);

/// 8-connected component labels (0 = background, 1..n), and the count.
std::vector<int> label_components(const BinaryGrid& grid, int& count);

/// Keeps only the largest 8-connected component. Returns the number of
/// components found.
int keep_largest_component(BinaryGrid& grid);

/// Sets background regions that are not 4-connected to any of the `open`
/// edges. Sealing the mouth edge this way closes the gap between two crack
/// faces that were rasterised as separate bands.
void fill_enclosed(BinaryGrid& grid, const std::vector<Edge>& open);

/// Maximum over the (2r+1)^2 square around each pixel.
BinaryGrid dilate(const BinaryGrid& grid, int radius);
/// Minimum over the same square; pixels outside the grid count as set.
BinaryGrid erode(const BinaryGrid& grid, int radius);
/// Dilation followed by erosion: bridges gaps up to 2r pixels wide without
/// growing the outline.
BinaryGrid close_gaps(const BinaryGrid& grid, int radius);
/// Clears every pixel whose centre lies within `margin` pixels of the border.
void clear_border(BinaryGrid& grid, int margin);

}  // namespace msf::vision
