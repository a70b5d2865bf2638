/**
 * @file virial.hpp
 * @brief Per-atom virial stress and von Mises equivalent.
 *
 * sigma_ab^i = (1/V^i) [ 1/2 sum_j (r_a^j - r_a^i) f_b^ij - m^i v_a^i v_b^i ],
 * with f^ij the force on i due to j. Tension is positive.
 */
#pragma once

#include "msf/core/stress.hpp"
#include "msf/md/atom_system.hpp"
#include "msf/md/forces.hpp"

#include <vector>

namespace msf::md {

struct VirialStressField {
    /// eV/Angstrom^3, Voigt order xx, yy, zz, xy, yz, zx.
    std::vector<Voigt6> stress;
    std::vector<double> von_mises;
    double atomic_volume = 0.0;

    std::size_t size() const { return stress.size(); }
    /// Component in GPa.
    double gpa(std::size_t atom, int component) const { return stress[atom][component] * kEvPerA3ToGPa; }
    double von_mises_gpa(std::size_t atom) const { return von_mises[atom] * kEvPerA3ToGPa; }
};

/// Uses the field's neighbour list (updated as needed). `volume` overrides
/// the ideal-lattice atomic volume when positive.
VirialStressField virial_stress(AtomSystem& sys, ForceField& field, double volume = 0.0);
VirialStressField virial_stress(AtomSystem& sys, const PairPotential& potential, double volume = 0.0);

}  // namespace msf::md
