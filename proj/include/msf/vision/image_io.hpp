/**
 * @file image_io.hpp
 * @brief PGM and PNG grayscale I/O plus a skeleton overlay writer.
 *
 * Image files store the top row first; rasters keep the lowest y in row 0,
 * so rows are flipped on the way in and out. Files carry no physical scale,
 * which is supplied by the caller on read.
 */
#pragma once

#include "msf/vision/raster.hpp"
#include "msf/vision/skeleton.hpp"

#include <string>

namespace msf::vision {

/// Reads binary (P5) or ASCII (P2) PGM, or 8-bit PNG (colour is averaged to
/// grey), chosen by file signature.
ContourRaster read_image(const std::string& path, double scale = 1.0);

/// `comment` goes into a PGM header comment or a PNG text chunk.
void write_pgm(const std::string& path, const ContourRaster& raster, const std::string& comment = "");
void write_png(const std::string& path, const ContourRaster& raster, const std::string& comment = "");
/// Writes PNG for a ".png" suffix, PGM otherwise.
void write_image(const std::string& path, const ContourRaster& raster, const std::string& comment = "");

/// Grey raster with the skeleton path drawn in red and the tip in green.
void write_overlay_png(const std::string& path, const ContourRaster& raster, const CrackSkeleton& skeleton,
                       const std::string& comment = "");

}  // namespace msf::vision
