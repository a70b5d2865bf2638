/**
 * @file atom_system.hpp
 * @brief Atomistic state of the representative volume element.
 *
 * Units throughout the md module: length in Angstrom, time in picoseconds,
 * energy in eV, mass in amu. Velocities are Angstrom/ps.
 */
#pragma once

#include "msf/core/vec3.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace msf::md {

/// eV / (Angstrom * amu) expressed in Angstrom / ps^2.
inline constexpr double kForceToAccel = 9648.533212331;
/// Boltzmann constant in eV/K.
inline constexpr double kBoltzmann = 8.617333262e-5;
/// eV / Angstrom^3 in GPa.
inline constexpr double kEvPerA3ToGPa = 160.21766208;

enum class Species : std::uint8_t { Fe = 0, CSubstitutional = 1, CInterstitial = 2 };
enum class Group : std::uint8_t { Mobile = 0, FixedTop = 1, FixedBottom = 2 };

inline bool is_carbon(Species s) { return s != Species::Fe; }

struct Box {
    Vec3 lo;
    Vec3 hi;
    std::array<bool, 3> periodic{false, false, true};

    Vec3 length() const { return hi - lo; }
};

struct SpeciesMasses {
    double iron = 55.845;
    double carbon = 12.011;

    double of(Species s) const { return is_carbon(s) ? carbon : iron; }
};

struct SpeciesCounts {
    std::size_t iron = 0;
    std::size_t substitutional_carbon = 0;
    std::size_t interstitial_carbon = 0;
};

class AtomSystem {
public:
    Box box;
    SpeciesMasses masses;
    double lattice_constant = 2.85;

    std::vector<Vec3> positions;
    std::vector<Vec3> velocities;
    std::vector<Vec3> forces;
    /// Positions at construction. Fixed slabs move rigidly relative to these.
    std::vector<Vec3> reference;
    std::vector<Species> species;
    std::vector<Group> group;
    /// Sharp-crack seam side (-1 below, +1 above, 0 away from the seam).
    /// Pairs whose sides multiply to -1 do not interact.
    std::vector<std::int8_t> seam_side;

    /// Number of lattice sites the block had after carving, before vacancies
    /// and interstitials were applied. Composition fractions refer to it.
    std::size_t lattice_sites = 0;
    std::size_t vacancies = 0;

    std::size_t size() const { return positions.size(); }
    double mass(std::size_t i) const { return masses.of(species[i]); }
    bool is_mobile(std::size_t i) const { return group[i] == Group::Mobile; }

    void add_atom(const Vec3& r, Species s, Group g, std::int8_t seam = 0);
    void remove_atoms(const std::vector<bool>& remove);

    /// Volume per atom of the ideal BCC lattice, a^3 / 2.
    double atomic_volume() const { return 0.5 * lattice_constant * lattice_constant * lattice_constant; }

    SpeciesCounts counts() const;
    std::size_t mobile_count() const;
    double kinetic_energy() const;
    double temperature() const;

    /// Maps positions back into the box along periodic directions.
    void wrap_periodic();
    /// Throws InvalidArgument when an invariant is violated.
    void validate() const;
};

}  // namespace msf::md
