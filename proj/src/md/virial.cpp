#include "msf/md/virial.hpp"

#include "msf/core/error.hpp"

#include <cmath>

namespace msf::md {

VirialStressField virial_stress(AtomSystem& sys, ForceField& field, double volume) {
    const double v = volume > 0 ? volume : sys.atomic_volume();
    MSF_REQUIRE(v > 0, "atomic volume must be positive");

    auto& list = field.neighbors();
    list.update(sys);
    const PairPotential& pot = field.potential();
    const double rc2 = pot.cutoff() * pot.cutoff();

    VirialStressField out;
    out.atomic_volume = v;
    out.stress.assign(sys.size(), Voigt6{});
    for (const auto& p : list.pairs()) {
        const Vec3 d = NeighborList::separation(sys, p);
        const double r2 = dot(d, d);
        if (r2 >= rc2) continue;
        const double r = std::sqrt(r2);
        // f^ij = (dU/dr / r) d, so the moment d_a f_b is symmetric in a, b.
        const double w = 0.5 * pot.derivative(r, pair_kind(sys.species[p.i], sys.species[p.j])) / r;
        const Voigt6 m{w * d.x * d.x, w * d.y * d.y, w * d.z * d.z, w * d.x * d.y, w * d.y * d.z, w * d.z * d.x};
        // A self-image pair stands for both +image and -image moments.
        for (int c = 0; c < 6; ++c) {
            out.stress[p.i][c] += m[c];
            out.stress[p.j][c] += m[c];
        }
    }
    out.von_mises.resize(sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const Vec3& u = sys.velocities[i];
        const double mk = sys.mass(i) / kForceToAccel;
        Voigt6& s = out.stress[i];
        s[0] -= mk * u.x * u.x;
        s[1] -= mk * u.y * u.y;
        s[2] -= mk * u.z * u.z;
        s[3] -= mk * u.x * u.y;
        s[4] -= mk * u.y * u.z;
        s[5] -= mk * u.z * u.x;
        for (double& c : s) c /= v;
        out.von_mises[i] = von_mises(s);
    }
    return out;
}

VirialStressField virial_stress(AtomSystem& sys, const PairPotential& potential, double volume) {
    ForceField field(potential);
    return virial_stress(sys, field, volume);
}

}  // namespace msf::md
