#include "msf/md/atom_system.hpp"

#include "msf/core/error.hpp"

#include <cmath>
#include <string>

namespace msf::md {

void AtomSystem::add_atom(const Vec3& r, Species s, Group g, std::int8_t seam) {
    positions.push_back(r);
    velocities.push_back({});
    forces.push_back({});
    reference.push_back(r);
    species.push_back(s);
    group.push_back(g);
    seam_side.push_back(seam);
}

void AtomSystem::remove_atoms(const std::vector<bool>& remove) {
    MSF_REQUIRE(remove.size() == size(), "removal mask size mismatch");
    std::size_t out = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (remove[i]) continue;
        positions[out] = positions[i];
        velocities[out] = velocities[i];
        forces[out] = forces[i];
        reference[out] = reference[i];
        species[out] = species[i];
        group[out] = group[i];
        seam_side[out] = seam_side[i];
        ++out;
    }
    positions.resize(out);
    velocities.resize(out);
    forces.resize(out);
    reference.resize(out);
    species.resize(out);
    group.resize(out);
    seam_side.resize(out);
}

SpeciesCounts AtomSystem::counts() const {
    SpeciesCounts c;
    for (Species s : species) {
        switch (s) {
            case Species::Fe: ++c.iron; break;
            case Species::CSubstitutional: ++c.substitutional_carbon; break;
            case Species::CInterstitial: ++c.interstitial_carbon; break;
        }
    }
    return c;
}

std::size_t AtomSystem::mobile_count() const {
    std::size_t n = 0;
    for (Group g : group) n += (g == Group::Mobile);
    return n;
}

double AtomSystem::kinetic_energy() const {
    double ke = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (!is_mobile(i)) continue;
        ke += 0.5 * mass(i) * dot(velocities[i], velocities[i]);
    }
    return ke / kForceToAccel;
}

double AtomSystem::temperature() const {
    const std::size_t n = mobile_count();
    if (n == 0) return 0.0;
    return 2.0 * kinetic_energy() / (3.0 * static_cast<double>(n) * kBoltzmann);
}

void AtomSystem::wrap_periodic() {
    const Vec3 len = box.length();
    for (auto& r : positions) {
        for (int d = 0; d < 3; ++d) {
            if (!box.periodic[d]) continue;
            r[d] -= len[d] * std::floor((r[d] - box.lo[d]) / len[d]);
            if (r[d] >= box.hi[d]) r[d] -= len[d];
        }
    }
}

void AtomSystem::validate() const {
    const std::size_t n = size();
    MSF_REQUIRE(velocities.size() == n && forces.size() == n && reference.size() == n && species.size() == n &&
                    group.size() == n && seam_side.size() == n,
                "atom arrays have inconsistent lengths");
    MSF_REQUIRE(lattice_constant > 0, "lattice constant must be positive");
    const Vec3 len = box.length();
    MSF_REQUIRE(len.x > 0 && len.y > 0 && len.z > 0, "box must have positive extent");
    for (std::size_t i = 0; i < n; ++i) {
        for (int d = 0; d < 3; ++d) {
            MSF_REQUIRE(std::isfinite(positions[i][d]) && std::isfinite(velocities[i][d]),
                        "non-finite state for atom " + std::to_string(i));
            if (box.periodic[d] && is_mobile(i)) {
                MSF_REQUIRE(positions[i][d] >= box.lo[d] && positions[i][d] < box.hi[d],
                            "mobile atom " + std::to_string(i) + " outside periodic box");
            }
        }
    }
}

}  // namespace msf::md
