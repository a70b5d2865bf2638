/**
 * @file lattice.hpp
 * @brief BCC plate construction with an edge pre-crack and point defects.
 *
 * The crystal is cube-oriented (X=[100], Y=[010], Z=[001]). Sites are filled
 * on the half-lattice grid (i, j, k) * a/2 with i, j, k of equal parity.
 * x and y are free surfaces; z is periodic and is snapped down to a whole
 * number of cubic cells so the stacking closes on itself.
 */
#pragma once

#include "msf/core/vec3.hpp"
#include "msf/md/atom_system.hpp"

#include <cstdint>

namespace msf::md {

enum class CrackType { None, Blunt, Sharp };

struct CrackSpec {
    double length = 0.0;  ///< Angstrom, measured from the left face
    CrackType type = CrackType::Blunt;
    /// Slot height for blunt cracks, in (010) lattice planes.
    int blunt_planes = 4;
};

struct RveSpec {
    Vec3 box{100.0, 100.0, 8.55};
    double lattice_constant = 2.85;
    double carbon_fraction = 0.0;
    double vacancy_fraction = 0.0;
    /// Share of carbon atoms placed at octahedral interstitial sites.
    double interstitial_share = 0.5;
    CrackSpec crack;
    int fixed_planes = 3;
    std::uint64_t seed = 1;
};

/// Builds the RVE plate. Throws InvalidArgument on an inconsistent spec.
AtomSystem build_rve(const RveSpec& spec);

/// Perfect BCC block of nx * ny * nz cubic cells, optionally periodic in every
/// direction, with all atoms mobile. Used for bulk checks.
AtomSystem build_bcc_block(int nx, int ny, int nz, double lattice_constant, bool fully_periodic);

/// Number of BCC sites with coordinates in [0, L) along x and y and
/// nz = floor(Lz / a) whole cells along z.
std::size_t bcc_site_count(const Vec3& box, double lattice_constant);

/// Height of the crack mid-plane: halfway between the two (010) planes
/// nearest the box centre.
double crack_plane_y(const RveSpec& spec);

}  // namespace msf::md
