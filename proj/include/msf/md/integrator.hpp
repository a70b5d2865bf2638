/**
 * @file integrator.hpp
 * @brief Velocity-Verlet time stepping, FIRE energy minimisation and
 *        Maxwell velocity initialisation.
 */
#pragma once

#include "msf/md/atom_system.hpp"
#include "msf/md/forces.hpp"

#include <cstdint>

namespace msf::md {

/// Prescribed rigid motion of the fixed slabs, relative to their reference
/// positions. Velocities are only bookkeeping (fixed atoms carry no dynamics).
struct SlabMotion {
    Vec3 top_displacement;
    Vec3 bottom_displacement;
    Vec3 top_velocity;
    Vec3 bottom_velocity;
};

/// Advances one step. `sys.forces` must hold the forces of the current
/// positions (call ForceField::compute once before the first step); on return
/// they hold the forces of the new positions. Returns the potential energy of
/// the new positions. Throws NumericalError on a non-finite state.
double step_velocity_verlet(AtomSystem& sys, ForceField& field, double dt, const SlabMotion& motion = {});

/// Places fixed atoms at reference + slab displacement.
void apply_slab_motion(AtomSystem& sys, const SlabMotion& motion);

struct RelaxOptions {
    double force_tolerance = 1e-3;  ///< eV/Angstrom, max over mobile atoms
    int max_steps = 20000;
    double dt_start = 0.001;  ///< ps
    double dt_max = 0.005;    ///< ps
};

struct RelaxResult {
    int iterations = 0;
    double max_force = 0.0;
    double initial_energy = 0.0;
    double final_energy = 0.0;
};

/// FIRE minimisation of the mobile atoms (fixed atoms stay put). Velocities
/// are zero on return. Throws NumericalError if the budget runs out.
RelaxResult relax(AtomSystem& sys, ForceField& field, const RelaxOptions& options = {});

/// Largest force norm over mobile atoms, from `sys.forces`.
double max_mobile_force(const AtomSystem& sys);

/// Seeded Maxwell-Boltzmann velocities on mobile atoms with zero net momentum,
/// rescaled to exactly `temperature` (K).
void thermalize(AtomSystem& sys, double temperature, std::uint64_t seed);

}  // namespace msf::md
