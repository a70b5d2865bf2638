#include "msf/xfem/fatigue.hpp"

#include "msf/core/error.hpp"
#include "msf/xfem/kink.hpp"

#include <algorithm>
#include <cmath>

namespace msf::xfem {

double k_to_paris_units(paris::UnitSystem u) { return std::sqrt(1e-3 / paris::length_unit_in_metres(u)); }

double mm_to_paris_units(paris::UnitSystem u) { return 1e-3 / paris::length_unit_in_metres(u); }

double cycles_for_increment(const paris::ParisConstants& p, double delta_k, double da) {
    if (!(delta_k > 0)) throw NumericalError("non-positive stress intensity range");
    const double dn = da / (p.C * std::pow(delta_k, p.m));
    if (!std::isfinite(dn) || dn <= 0) throw NumericalError("non-finite cycle increment");
    return dn;
}

CrackPolyline initial_crack(const MacroModel& model) {
    if (model.layout == CrackLayout::Center) {
        return CrackPolyline::center({0.5 * model.width, 0.5 * model.height}, model.initial_crack);
    }
    return CrackPolyline::edge(model.initial_crack, 0.5 * model.height);
}

namespace {

double crack_size(const CrackPolyline& c) { return c.front_is_tip() ? 0.5 * c.length() : c.length(); }

bool near_boundary(const Point& p, const MacroModel& model, double margin, bool left_open) {
    return p.x() >= model.width - margin || p.y() <= margin || p.y() >= model.height - margin ||
           (left_open && p.x() <= margin);
}

}  // namespace

FatigueHistory run_fatigue(const MacroModel& model, const paris::ParisConstants& constants,
                           const FatigueOptions& options, const SnapshotObserver& observer) {
    model.validate();
    MSF_REQUIRE(constants.C > 0 && constants.m > 0, "Paris constants must be positive");
    MSF_REQUIRE(options.crack_increment > 0, "crack increment must be positive");
    MSF_REQUIRE(options.max_steps >= 0, "step budget must be non-negative");

    const StructuredMesh mesh(options.nx, options.ny, model.width, model.height);
    const double kf = k_to_paris_units(constants.units);
    const double da = options.crack_increment;
    const double da_units = da * mm_to_paris_units(constants.units);
    const double margin = options.boundary_margin * std::max(mesh.hx(), mesh.hy());
    const bool two_tips = model.layout == CrackLayout::Center;

    std::vector<double> pending = options.snapshot_cycles;
    std::sort(pending.begin(), pending.end());
    std::size_t next_snapshot = 0;

    FatigueHistory hist;
    hist.crack = initial_crack(model);
    double cycles = 0.0;
    for (int step = 0;; ++step) {
        const EnrichedMesh em = enrich(mesh, hist.crack, options.enrichment);
        hist.crack = em.crack;
        const Solution sol = solve(em, model, remote_tension(model.remote_stress()));

        const std::size_t nt = em.tips.size();
        // Near the boundary the integration ring shrinks, down to one element.
        const double h = std::max(mesh.hx(), mesh.hy());
        SifOptions sif = options.sif;
        for (const auto& t : em.tips) {
            const Point p = t.position;
            double room = std::min({model.width - p.x(), p.y(), model.height - p.y()});
            if (two_tips) room = std::min(room, p.x());
            sif.radius_factor = std::min(sif.radius_factor, room / h - 1.5);
        }
        if (step > 0 && sif.radius_factor < 1.0) {
            hist.fractured = true;
            hist.stop_cause = "boundary";
            break;
        }
        std::vector<double> ki(nt), kii(nt), theta(nt), dk(nt);
        std::size_t lead = 0;
        for (std::size_t t = 0; t < nt; ++t) {
            const SifResult s = compute_sifs(em, sol, model, static_cast<int>(t), sif);
            ki[t] = s.k_i * kf;
            kii[t] = s.k_ii * kf;
            theta[t] = kink_angle(ki[t], kii[t]);
            dk[t] = (1.0 - model.load_ratio) * equivalent_sif(ki[t], kii[t], theta[t]);
            if (dk[t] > dk[lead]) lead = t;
        }
        const CrackTip& tip = em.tips[lead];
        if (step == 0) {
            hist.records.push_back({0, 0.0, crack_size(hist.crack), dk[lead], ki[lead], kii[lead], theta[lead],
                                    tip.position.x(), tip.position.y()});
        }
        if (dk[lead] / (1.0 - model.load_ratio) >= options.toughness) {
            hist.fractured = true;
            hist.stop_cause = "toughness";
            break;
        }
        if (step >= options.max_steps) {
            hist.stop_cause = "max_steps";
            break;
        }

        const double dn = cycles_for_increment(constants, dk[lead], da_units);
        while (next_snapshot < pending.size() && pending[next_snapshot] < cycles + dn) {
            if (pending[next_snapshot] >= cycles && observer) observer(pending[next_snapshot], hist.records.back(), em, sol);
            ++next_snapshot;
        }

        bool reached = false;
        for (std::size_t t = 0; t < nt; ++t) {
            const double grow = t == lead ? da : da * std::pow(dk[t] / dk[lead], constants.m);
            const Point d = em.tips[t].direction;
            const double c = std::cos(theta[t]), s = std::sin(theta[t]);
            const Point dir{c * d.x() - s * d.y(), s * d.x() + c * d.y()};
            const Point next = em.tips[t].position + grow * dir;
            hist.crack.extend(em.tips[t].end, next, theta[t]);
            reached = reached || near_boundary(next, model, margin, two_tips);
        }
        cycles += dn;
        const CrackTip moved = hist.crack.tips()[lead];
        hist.records.push_back({step + 1, cycles, crack_size(hist.crack), dk[lead], ki[lead], kii[lead], theta[lead],
                                moved.position.x(), moved.position.y()});
        if (reached) {
            hist.fractured = true;
            hist.stop_cause = "boundary";
            break;
        }
    }
    return hist;
}

}  // namespace msf::xfem
