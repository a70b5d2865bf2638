#include "msf/md/forces.hpp"

#include "msf/core/error.hpp"

#include <cmath>
#include <string>

namespace msf::md {

ForceField::ForceField(PairPotential potential, ForceOptions options)
    : potential_(std::move(potential)), options_(options), list_(potential_.cutoff(), options.skin) {}

double ForceField::compute(AtomSystem& sys) {
    list_.update(sys);
    for (auto& f : sys.forces) f = {};
    const double rc2 = potential_.cutoff() * potential_.cutoff();
    const double rmin2 = options_.min_separation * options_.min_separation;
    double energy = 0.0;
    const Vec3 len = sys.box.length();
    const Vec3* pos = sys.positions.data();
    const Species* species = sys.species.data();
    Vec3* force = sys.forces.data();
    for (const auto& p : list_.pairs()) {
        const Vec3 d{pos[p.j].x - pos[p.i].x + p.image[0] * len.x, pos[p.j].y - pos[p.i].y + p.image[1] * len.y,
                     pos[p.j].z - pos[p.i].z + p.image[2] * len.z};
        const double r2 = dot(d, d);
        if (r2 >= rc2) continue;
        if (r2 < rmin2) {
            throw NumericalError("atoms " + std::to_string(p.i) + " and " + std::to_string(p.j) +
                                 " closer than the minimum separation");
        }
        const double r = std::sqrt(r2);
        double u = 0.0, du = 0.0;
        potential_.evaluate(r, pair_kind(species[p.i], species[p.j]), u, du);
        energy += u;
        // A self-image pair is balanced by its mirror image: no net force.
        if (p.i == p.j) continue;
        // f_i = -dU/dr * (r_i - r_j)/r = dU/dr * d/r
        const Vec3 f = d * (du / r);
        force[p.i] += f;
        force[p.j] -= f;
    }
    return energy;
}

double ForceField::potential_energy(AtomSystem& sys) {
    list_.update(sys);
    const double rc2 = potential_.cutoff() * potential_.cutoff();
    double energy = 0.0;
    for (const auto& p : list_.pairs()) {
        const Vec3 d = NeighborList::separation(sys, p);
        const double r2 = dot(d, d);
        if (r2 >= rc2) continue;
        energy += potential_.energy(std::sqrt(r2), pair_kind(sys.species[p.i], sys.species[p.j]));
    }
    return energy;
}

double compute_forces(AtomSystem& sys, const PairPotential& potential, const ForceOptions& options) {
    ForceField ff(potential, options);
    return ff.compute(sys);
}

}  // namespace msf::md
