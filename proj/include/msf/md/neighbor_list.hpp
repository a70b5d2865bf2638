/**
 * @file neighbor_list.hpp
 * @brief Verlet half list built from a cell grid, with explicit periodic images.
 *
 * Periodic directions shorter than three list radii are handled by looping
 * over image shifts instead of minimum image, so thin slabs (the RVE is three
 * cells thick along z) see every image inside the cutoff.
 */
#pragma once

#include "msf/md/atom_system.hpp"

#include <cstdint>
#include <vector>

namespace msf::md {

struct NeighborPair {
    std::uint32_t i;
    std::uint32_t j;
    /// Image of j, in box lengths, per direction.
    std::int8_t image[3];
};

class NeighborList {
public:
    NeighborList(double cutoff, double skin);

    /// Rebuilds unconditionally.
    void build(const AtomSystem& sys);
    /// Rebuilds if any atom moved more than half the skin since the last build.
    /// Periodic wrapping happens only here, so stored images stay valid
    /// between rebuilds.
    bool update(AtomSystem& sys);

    const std::vector<NeighborPair>& pairs() const { return pairs_; }
    double cutoff() const { return cutoff_; }
    double skin() const { return skin_; }
    std::size_t builds() const { return builds_; }

    /// Separation vector r_j(image) - r_i.
    static Vec3 separation(const AtomSystem& sys, const NeighborPair& p) {
        const Vec3 len = sys.box.length();
        Vec3 d = sys.positions[p.j] - sys.positions[p.i];
        d.x += p.image[0] * len.x;
        d.y += p.image[1] * len.y;
        d.z += p.image[2] * len.z;
        return d;
    }

private:
    double cutoff_;
    double skin_;
    std::vector<NeighborPair> pairs_;
    std::vector<Vec3> last_positions_;
    std::size_t builds_ = 0;
};

}  // namespace msf::md
