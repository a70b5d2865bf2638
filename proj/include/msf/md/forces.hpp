/**
 * @file forces.hpp
 * @brief Pairwise force evaluation.
 */
#pragma once

#include "msf/md/atom_system.hpp"
#include "msf/md/neighbor_list.hpp"
#include "msf/md/potential.hpp"

namespace msf::md {

struct ForceOptions {
    double skin = 0.3;
    /// Pairs closer than this signal a corrupted state.
    double min_separation = 0.5;
};

/// Owns the neighbour list for one simulation and evaluates forces into
/// `AtomSystem::forces`.
class ForceField {
public:
    explicit ForceField(PairPotential potential, ForceOptions options = {});

    /// Updates the neighbour list if needed, fills sys.forces and returns the
    /// total potential energy. Throws NumericalError on overlapping atoms.
    double compute(AtomSystem& sys);
    double potential_energy(AtomSystem& sys);

    const PairPotential& potential() const { return potential_; }
    NeighborList& neighbors() { return list_; }
    const ForceOptions& options() const { return options_; }

private:
    PairPotential potential_;
    ForceOptions options_;
    NeighborList list_;
};

/// One-shot evaluation with a freshly built list; returns the potential energy.
double compute_forces(AtomSystem& sys, const PairPotential& potential, const ForceOptions& options = {});

}  // namespace msf::md
