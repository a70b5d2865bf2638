/**
 * @file coordination.hpp
 * @brief Surface-atom detection by neighbour counting.
 */
#pragma once

#include "msf/md/atom_system.hpp"

#include <vector>

namespace msf::vision {

/// Neighbour count of every atom within `cutoff`, periodic images included.
/// With `respect_seam`, pairs across a decohered seam do not count.
std::vector<int> coordination_numbers(const md::AtomSystem& snapshot, double cutoff, bool respect_seam = true);

/// Flags atoms with fewer than `threshold` neighbours within `cutoff`.
std::vector<bool> coordination_filter(const md::AtomSystem& snapshot, double cutoff, int threshold);

struct SurfaceOptions {
    /// Neighbour cutoff as a multiple of the nearest-neighbour distance.
    double cutoff_factor = 1.1;
    int threshold = 7;
    /// Atoms this close (Angstrom) to the atom extents along x or y are
    /// treated as outer boundary; negative selects two lattice constants.
    double boundary_margin = -1.0;
    bool exclude_fixed = true;
    bool exclude_margin = true;
};

/// Coordination flags with the boundary atoms (fixed slabs and, optionally,
/// the outer margin) removed.
std::vector<bool> surface_atoms(const md::AtomSystem& snapshot, const SurfaceOptions& options = {});

/// Nearest-neighbour distance of BCC, sqrt(3)/2 * a.
inline double bcc_nearest_neighbor(double a) { return 0.8660254037844386 * a; }

}  // namespace msf::vision
