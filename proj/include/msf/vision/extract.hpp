/**
 * @file extract.hpp
 * @brief End-to-end crack measurement from an image or an atomistic frame.
 *
 * Atomistic frames go through coordination filtering, disc rasterisation,
 * binarisation, median filtering and a small morphological closing that
 * mends breaks in the surface outline; then the gap between the two crack
 * faces is closed by filling every background region not reachable from the three
 * non-mouth edges, and a border strip holding the outer free surfaces is
 * cleared before thinning. Disc splats overshoot the last surface atom by one
 * radius, which is subtracted from the reported length and tip.
 */
#pragma once

#include "msf/md/atom_system.hpp"
#include "msf/vision/coordination.hpp"
#include "msf/vision/morphology.hpp"
#include "msf/vision/raster.hpp"
#include "msf/vision/skeleton.hpp"

#include <vector>

namespace msf::vision {

struct ExtractionOptions {
    double scale = 1.0;  ///< Angstrom per pixel
    int threshold = 128;
    bool otsu = false;
    int median_window = 3;
    Edge mouth = Edge::Left;
    int mouth_tolerance = 10;
    SkeletonOptions skeleton;
    SurfaceOptions surface;
    /// Splat radius in Angstrom; non-positive selects the lattice constant.
    double splat_radius = -1.0;
    /// Gaps in the surface outline up to twice this many lattice constants
    /// are bridged before filling (atomistic frames only).
    double closing_lattice_constants = 0.5;
    /// Border strip cleared in atomistic frames, in lattice constants.
    double border_lattice_constants = 1.5;
};

struct CrackExtraction {
    ContourRaster raster;
    BinaryGrid binary;
    CrackSkeleton skeleton;
    CrackMeasurement measurement;
    /// Crack length and tip after the splat correction (Angstrom).
    double length = 0.0;
    double tip_x = 0.0;
    double tip_y = 0.0;
    /// Unit direction of the crack at its tip.
    double dir_x = 1.0;
    double dir_y = 0.0;
    std::vector<bool> surface;
};

CrackExtraction extract_from_image(const ContourRaster& raster, const ExtractionOptions& options = {});
/// Surface atoms of the snapshot are splatted onto a raster, which then
/// goes through extract_from_contour.
CrackExtraction extract_from_atoms(const md::AtomSystem& snapshot, const ExtractionOptions& options = {});
/// Crack in a contour raster of surface atoms: binarize and median, fill the
/// background enclosed between the crack faces, clear a border strip of
/// `border_lattice_constants`, thin, and correct length and tip for the
/// splat radius.
CrackExtraction extract_from_contour(const ContourRaster& raster, double lattice_constant,
                                     const ExtractionOptions& options = {});

}  // namespace msf::vision
