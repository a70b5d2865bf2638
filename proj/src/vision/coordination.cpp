#include "msf/vision/coordination.hpp"

#include "msf/core/error.hpp"
#include "msf/md/neighbor_list.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msf::vision {

std::vector<int> coordination_numbers(const md::AtomSystem& snapshot, double cutoff, bool respect_seam) {
    MSF_REQUIRE(cutoff > 0, "coordination cutoff must be positive");
    std::vector<int> count(snapshot.size(), 0);
    if (snapshot.size() == 0) return count;

    md::AtomSystem local = snapshot;
    if (!respect_seam) std::fill(local.seam_side.begin(), local.seam_side.end(), std::int8_t{0});
    md::NeighborList list(cutoff, 0.0);
    list.build(local);
    const double c2 = cutoff * cutoff;
    for (const auto& p : list.pairs()) {
        const Vec3 d = md::NeighborList::separation(local, p);
        if (dot(d, d) >= c2) continue;
        if (p.i == p.j) {
            count[p.i] += 2;  // +image and -image
        } else {
            ++count[p.i];
            ++count[p.j];
        }
    }
    return count;
}

std::vector<bool> coordination_filter(const md::AtomSystem& snapshot, double cutoff, int threshold) {
    const auto count = coordination_numbers(snapshot, cutoff);
    std::vector<bool> flagged(count.size());
    for (std::size_t i = 0; i < count.size(); ++i) flagged[i] = count[i] < threshold;
    return flagged;
}

std::vector<bool> surface_atoms(const md::AtomSystem& snapshot, const SurfaceOptions& options) {
    const double a = snapshot.lattice_constant;
    MSF_REQUIRE(a > 0, "snapshot needs a positive lattice constant");
    auto flagged = coordination_filter(snapshot, options.cutoff_factor * bcc_nearest_neighbor(a), options.threshold);
    if (snapshot.size() == 0) return flagged;

    double lo[2] = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    double hi[2] = {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
        if (snapshot.group[i] != md::Group::Mobile) continue;
        for (int d = 0; d < 2; ++d) {
            lo[d] = std::min(lo[d], snapshot.positions[i][d]);
            hi[d] = std::max(hi[d], snapshot.positions[i][d]);
        }
    }
    const double margin = options.boundary_margin >= 0 ? options.boundary_margin : 2.0 * a;
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
        if (!flagged[i]) continue;
        if (options.exclude_fixed && snapshot.group[i] != md::Group::Mobile) {
            flagged[i] = false;
            continue;
        }
        if (!options.exclude_margin) continue;
        const Vec3& r = snapshot.positions[i];
        for (int d = 0; d < 2; ++d) {
            if (r[d] < lo[d] + margin || r[d] > hi[d] - margin) flagged[i] = false;
        }
    }
    return flagged;
}

}  // namespace msf::vision
