/**
 * @file skeleton.hpp
 * @brief Zhang-Suen thinning, spur pruning and crack-path measurement.
 */
#pragma once

#include "msf/vision/morphology.hpp"
#include "msf/vision/raster.hpp"

#include <string>
#include <vector>

namespace msf::vision {

struct SkeletonOptions {
    int prune_length = 5;  ///< pixels; shorter side branches are removed
    bool extend_to_boundary = true;
};

struct CrackSkeleton : GridFrame {
    /// Pixels of the selected path only.
    BinaryGrid skeleton;
    /// Ordered pixel chain from one endpoint to the other.
    std::vector<Pixel> path;
    /// Sum of step lengths along the path (1 or sqrt 2 px) times scale.
    double length = 0.0;
    int components = 0;
    std::vector<std::string> warnings;
};

/// Two-subiteration Zhang-Suen thinning until stable.
BinaryGrid zhang_suen_thin(const BinaryGrid& grid);

/// Removes branches that end within `length` pixels of a junction. Isolated
/// curves (no junction) are left alone.
void prune_spurs(BinaryGrid& skeleton, int length);

/// Thins, prunes, keeps the longest geodesic path of the largest component and
/// stretches its ends to the foreground boundary. Throws InvalidArgument on an
/// empty foreground; disconnected foregrounds produce a warning.
CrackSkeleton skeletonize(const BinaryGrid& grid, const SkeletonOptions& options = {});

struct CrackMeasurement {
    double length = 0.0;  ///< Angstrom, from the mouth edge to the tip pixel's far side
    double tip_x = 0.0;   ///< Angstrom, centre of the tip pixel
    double tip_y = 0.0;
    Pixel tip;
    Pixel mouth;
};

/// Length from the mouth edge along the skeleton to the far endpoint. The
/// mouth endpoint must lie within `mouth_tolerance` pixels of the edge.
CrackMeasurement crack_length(const CrackSkeleton& skeleton, Edge mouth, int mouth_tolerance = 10);

}  // namespace msf::vision
