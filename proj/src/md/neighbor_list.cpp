#include "msf/md/neighbor_list.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msf::md {

namespace {

struct Axis {
    int cells = 1;
    bool wrap = false;      ///< periodic with >= 3 cells: neighbour cells wrap
    int explicit_images = 0; ///< periodic with a single cell: loop images directly
    double origin = 0.0;
    double cell_size = 1.0;
};

}  // namespace

NeighborList::NeighborList(double cutoff, double skin) : cutoff_(cutoff), skin_(skin) {
    MSF_REQUIRE(cutoff > 0 && skin >= 0, "neighbor list needs a positive cutoff and non-negative skin");
}

void NeighborList::build(const AtomSystem& sys) {
    const double rl = cutoff_ + skin_;
    const double rl2 = rl * rl;
    const Vec3 len = sys.box.length();
    const std::size_t n = sys.size();

    Axis ax[3];
    for (int d = 0; d < 3; ++d) {
        if (sys.box.periodic[d]) {
            const int c = static_cast<int>(std::floor(len[d] / rl));
            if (c >= 3) {
                ax[d] = {c, true, 0, sys.box.lo[d], len[d] / c};
            } else {
                ax[d] = {1, false, static_cast<int>(std::ceil(rl / len[d])), sys.box.lo[d], len[d]};
            }
        } else {
            double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
            for (const auto& r : sys.positions) {
                lo = std::min(lo, r[d]);
                hi = std::max(hi, r[d]);
            }
            if (n == 0) lo = hi = 0.0;
            const int c = std::max(1, static_cast<int>(std::floor((hi - lo) / rl)));
            ax[d] = {c, false, 0, lo, std::max((hi - lo) / c, 1e-12)};
        }
    }

    auto cell_of = [&](const Vec3& r, int d) {
        const int c = static_cast<int>(std::floor((r[d] - ax[d].origin) / ax[d].cell_size));
        return std::clamp(c, 0, ax[d].cells - 1);
    };
    const int ncx = ax[0].cells, ncy = ax[1].cells, ncz = ax[2].cells;
    const std::size_t ncell = static_cast<std::size_t>(ncx) * ncy * ncz;
    std::vector<std::vector<std::uint32_t>> bins(ncell);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = sys.positions[i];
        const std::size_t c = (static_cast<std::size_t>(cell_of(r, 2)) * ncy + cell_of(r, 1)) * ncx + cell_of(r, 0);
        bins[c].push_back(static_cast<std::uint32_t>(i));
    }

    pairs_.clear();
    int off_lo[3], off_hi[3];
    for (int d = 0; d < 3; ++d) {
        off_lo[d] = ax[d].cells == 1 ? 0 : -1;
        off_hi[d] = ax[d].cells == 1 ? 0 : 1;
    }
    const int kx = ax[0].explicit_images, ky = ax[1].explicit_images, kz = ax[2].explicit_images;

    // Atoms are visited in index order and each atom's partners are sorted,
    // so the list order (i, j, image) does not depend on the cell layout and
    // force sums are reproducible.
    std::vector<NeighborPair> local;
    for (std::uint32_t i = 0; i < n; ++i) {
        const Vec3& ri = sys.positions[i];
        const int ci[3] = {cell_of(ri, 0), cell_of(ri, 1), cell_of(ri, 2)};
        local.clear();
        for (int oz = off_lo[2]; oz <= off_hi[2]; ++oz)
            for (int oy = off_lo[1]; oy <= off_hi[1]; ++oy)
                for (int ox = off_lo[0]; ox <= off_hi[0]; ++ox) {
                    int nc[3] = {ci[0] + ox, ci[1] + oy, ci[2] + oz};
                    int wrap_img[3] = {0, 0, 0};
                    bool skip = false;
                    for (int d = 0; d < 3; ++d) {
                        if (nc[d] < 0 || nc[d] >= ax[d].cells) {
                            if (!ax[d].wrap) { skip = true; break; }
                            wrap_img[d] = nc[d] < 0 ? -1 : 1;
                            nc[d] = (nc[d] + ax[d].cells) % ax[d].cells;
                        }
                    }
                    if (skip) continue;
                    const auto& other = bins[(static_cast<std::size_t>(nc[2]) * ncy + nc[1]) * ncx + nc[0]];
                    for (std::uint32_t j : other) {
                        if (j < i) continue;
                        if (sys.seam_side[i] * sys.seam_side[j] < 0) continue;
                        const Vec3& rj = sys.positions[j];
                        for (int iz = -kz; iz <= kz; ++iz)
                            for (int iy = -ky; iy <= ky; ++iy)
                                for (int ix = -kx; ix <= kx; ++ix) {
                                    const int img[3] = {wrap_img[0] + ix, wrap_img[1] + iy, wrap_img[2] + iz};
                                    if (i == j) {
                                        // keep each self-image once (lexicographically positive)
                                        const int lex = img[2] != 0 ? img[2] : (img[1] != 0 ? img[1] : img[0]);
                                        if (lex <= 0) continue;
                                    }
                                    const double dx = rj.x + img[0] * len.x - ri.x;
                                    const double dy = rj.y + img[1] * len.y - ri.y;
                                    const double dz = rj.z + img[2] * len.z - ri.z;
                                    if (dx * dx + dy * dy + dz * dz >= rl2) continue;
                                    local.push_back({i, j,
                                                     {static_cast<std::int8_t>(img[0]), static_cast<std::int8_t>(img[1]),
                                                      static_cast<std::int8_t>(img[2])}});
                                }
                    }
                }
        std::sort(local.begin(), local.end(), [](const NeighborPair& a, const NeighborPair& b) {
            if (a.j != b.j) return a.j < b.j;
            return std::lexicographical_compare(a.image, a.image + 3, b.image, b.image + 3);
        });
        pairs_.insert(pairs_.end(), local.begin(), local.end());
    }
    last_positions_ = sys.positions;
    ++builds_;
}

bool NeighborList::update(AtomSystem& sys) {
    if (last_positions_.size() != sys.size()) {
        sys.wrap_periodic();
        build(sys);
        return true;
    }
    const double limit2 = 0.25 * skin_ * skin_;
    const Vec3 len = sys.box.length();
    for (std::size_t i = 0; i < sys.size(); ++i) {
        Vec3 d = sys.positions[i] - last_positions_[i];
        for (int k = 0; k < 3; ++k) {
            if (sys.box.periodic[k]) d[k] -= len[k] * std::round(d[k] / len[k]);
        }
        if (dot(d, d) > limit2) {
            sys.wrap_periodic();
            build(sys);
            return true;
        }
    }
    return false;
}

}  // namespace msf::md
