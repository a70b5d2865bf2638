#include "msf/md/lattice.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

namespace msf::md {

namespace {

int planes_below(double length, double half) {
    // Count of plane indices j >= 0 with j * half < length.
    return static_cast<int>(std::ceil(length / half - 1e-9));
}

int whole_cells(double length, double a) { return std::max(1, static_cast<int>(std::floor(length / a + 1e-9))); }

struct Grid {
    int nx_half, ny_half, nz_cells;
};

Grid grid_for(const Vec3& box, double a) {
    return {planes_below(box.x, 0.5 * a), planes_below(box.y, 0.5 * a), whole_cells(box.z, a)};
}

template <typename Fn>
void for_each_site(const Grid& g, Fn&& fn) {
    for (int k = 0; k < 2 * g.nz_cells; ++k) {
        for (int j = 0; j < g.ny_half; ++j) {
            for (int i = 0; i < g.nx_half; ++i) {
                if ((i & 1) != (j & 1) || (j & 1) != (k & 1)) continue;
                fn(i, j, k);
            }
        }
    }
}

template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

std::size_t bcc_site_count(const Vec3& box, double a) {
    const Grid g = grid_for(box, a);
    auto evens = [](int n) { return static_cast<std::size_t>((n + 1) / 2); };
    auto odds = [](int n) { return static_cast<std::size_t>(n / 2); };
    const auto z = static_cast<std::size_t>(g.nz_cells);
    return evens(g.nx_half) * evens(g.ny_half) * z + odds(g.nx_half) * odds(g.ny_half) * z;
}

double crack_plane_y(const RveSpec& spec) {
    const double half = 0.5 * spec.lattice_constant;
    return (std::floor(0.5 * spec.box.y / half) + 0.5) * half;
}

AtomSystem build_bcc_block(int nx, int ny, int nz, double a, bool fully_periodic) {
    MSF_REQUIRE(nx > 0 && ny > 0 && nz > 0, "block dimensions must be positive");
    MSF_REQUIRE(a > 0, "lattice constant must be positive");
    AtomSystem sys;
    sys.lattice_constant = a;
    sys.box.lo = {0, 0, 0};
    sys.box.hi = {nx * a, ny * a, nz * a};
    sys.box.periodic = {fully_periodic, fully_periodic, true};
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                sys.add_atom({i * a, j * a, k * a}, Species::Fe, Group::Mobile);
                sys.add_atom({(i + 0.5) * a, (j + 0.5) * a, (k + 0.5) * a}, Species::Fe, Group::Mobile);
            }
    sys.lattice_sites = sys.size();
    return sys;
}

AtomSystem build_rve(const RveSpec& spec) {
    const double a = spec.lattice_constant;
    MSF_REQUIRE(a > 0, "lattice constant must be positive");
    MSF_REQUIRE(spec.box.x > 0 && spec.box.y > 0 && spec.box.z > 0, "box dimensions must be positive");
    MSF_REQUIRE(spec.box.z >= a - 1e-9, "box must hold at least one cell along z");
    MSF_REQUIRE(spec.carbon_fraction >= 0 && spec.carbon_fraction <= 0.05, "carbon fraction must lie in [0, 0.05]");
    MSF_REQUIRE(spec.vacancy_fraction >= 0 && spec.vacancy_fraction <= 0.05, "vacancy fraction must lie in [0, 0.05]");
    MSF_REQUIRE(spec.interstitial_share >= 0 && spec.interstitial_share <= 1, "interstitial share must lie in [0, 1]");
    MSF_REQUIRE(spec.crack.length >= 0 && spec.crack.length < spec.box.x, "crack length must be below the box width");
    MSF_REQUIRE(spec.fixed_planes >= 1, "need at least one fixed plane per slab");

    const double half = 0.5 * a;
    const Grid g = grid_for(spec.box, a);
    const int top_first = g.ny_half - spec.fixed_planes;
    MSF_REQUIRE(top_first > spec.fixed_planes, "box too short for the fixed slabs");

    const bool has_crack = spec.crack.type != CrackType::None && spec.crack.length > 0;
    const double yc = crack_plane_y(spec);
    const double slot = spec.crack.blunt_planes * half;
    if (has_crack) {
        const double mobile_lo = spec.fixed_planes * half;
        const double mobile_hi = (top_first - 1) * half;
        const double extent = spec.crack.type == CrackType::Blunt ? 0.5 * slot : half;
        MSF_REQUIRE(yc - extent > mobile_lo && yc + extent < mobile_hi, "crack is taller than the mobile region");
        MSF_REQUIRE(spec.crack.type != CrackType::Blunt || spec.crack.blunt_planes >= 1, "blunt slot needs planes");
    }

    auto in_slot = [&](double x, double y) {
        if (!has_crack || spec.crack.type != CrackType::Blunt) return false;
        const double r = 0.5 * slot;
        const double cx = spec.crack.length - r;
        if (std::abs(y - yc) >= r) return false;
        if (x < cx) return true;
        const double dx = x - cx, dy = y - yc;
        return dx * dx + dy * dy < r * r;
    };

    AtomSystem sys;
    sys.lattice_constant = a;
    sys.box.lo = {0, 0, 0};
    sys.box.hi = {spec.box.x, spec.box.y, g.nz_cells * a};
    sys.box.periodic = {false, false, true};

    for_each_site(g, [&](int i, int j, int k) {
        const Vec3 r{i * half, j * half, k * half};
        if (in_slot(r.x, r.y)) return;
        Group grp = Group::Mobile;
        if (j < spec.fixed_planes) grp = Group::FixedBottom;
        if (j >= top_first) grp = Group::FixedTop;
        std::int8_t seam = 0;
        if (has_crack && spec.crack.type == CrackType::Sharp && r.x < spec.crack.length) {
            seam = r.y > yc ? 1 : -1;
        }
        sys.add_atom(r, Species::Fe, grp, seam);
    });
    sys.lattice_sites = sys.size();

    const auto n_sites = static_cast<double>(sys.lattice_sites);
    const auto n_vac = static_cast<std::size_t>(std::llround(spec.vacancy_fraction * n_sites));
    const auto n_carbon = static_cast<std::size_t>(std::llround(spec.carbon_fraction * n_sites));
    const auto n_int = static_cast<std::size_t>(std::floor(spec.interstitial_share * static_cast<double>(n_carbon) + 0.5 - 1e-12));
    const std::size_t n_sub = n_carbon - n_int;

    std::mt19937_64 rng(spec.seed);

    // Vacancies and substitutional carbon are drawn from the mobile sites.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (sys.group[i] != Group::Mobile) continue;
        candidates.push_back(i);
    }
    MSF_REQUIRE(n_vac + n_sub <= candidates.size(), "too many defects for the mobile region");
    seeded_shuffle(candidates, rng);
    std::vector<bool> remove(sys.size(), false);
    for (std::size_t n = 0; n < n_vac; ++n) remove[candidates[n]] = true;
    for (std::size_t n = 0; n < n_sub; ++n) sys.species[candidates[n_vac + n]] = Species::CSubstitutional;

    // Octahedral sites: half-lattice points of mixed parity.
    if (n_int > 0) {
        std::vector<std::tuple<int, int, int>> octa;
        const double ylo = (spec.fixed_planes + 1) * half;
        const double yhi = (top_first - 2) * half;
        for (int k = 0; k < 2 * g.nz_cells; ++k)
            for (int j = 0; j < g.ny_half; ++j)
                for (int i = 1; i + 1 < g.nx_half; ++i) {
                    const bool same = (i & 1) == (j & 1) && (j & 1) == (k & 1);
                    if (same) continue;
                    const double x = i * half, y = j * half;
                    if (y < ylo || y > yhi) continue;
                    if (has_crack && std::abs(y - yc) < 0.5 * slot + a && x < spec.crack.length + a) continue;
                    octa.emplace_back(i, j, k);
                }
        seeded_shuffle(octa, rng);
        std::vector<Vec3> placed;
        const double min_sep = 2.0 * a;
        for (const auto& [i, j, k] : octa) {
            if (placed.size() == n_int) break;
            const Vec3 r{i * half, j * half, k * half};
            bool clash = false;
            for (const Vec3& p : placed) {
                Vec3 d = r - p;
                const double lz = sys.box.length().z;
                d.z -= lz * std::round(d.z / lz);
                if (norm(d) < min_sep) { clash = true; break; }
            }
            if (clash) continue;
            placed.push_back(r);
        }
        MSF_REQUIRE(placed.size() == n_int, "not enough octahedral sites for interstitial carbon");
        for (const Vec3& r : placed) {
            sys.add_atom(r, Species::CInterstitial, Group::Mobile);
            remove.push_back(false);
        }
    }

    sys.remove_atoms(remove);
    sys.vacancies = n_vac;
    sys.validate();
    return sys;
}

}  // namespace msf::md
