#include "msf/md/loading.hpp"

#include "msf/core/error.hpp"
#include "msf/md/integrator.hpp"
#include "msf/md/virial.hpp"

#include <cmath>
#include <limits>

namespace msf::md {

void LoadProgram::validate() const {
    MSF_REQUIRE(strain_rate > 0, "strain rate must be positive");
    MSF_REQUIRE(timestep > 0, "timestep must be positive");
    MSF_REQUIRE(load_ratio >= 0 && load_ratio < 1, "load ratio must lie in [0, 1)");
    for (std::size_t c = 0; c < peak_strains.size(); ++c) {
        MSF_REQUIRE(peak_strains[c] >= 0, "peak strains must be non-negative");
        MSF_REQUIRE(c == 0 || peak_strains[c] >= peak_strains[c - 1], "peak strains must be non-decreasing");
    }
}

LoadProgram LoadProgram::increasing(double first_peak, double step, int count, double strain_rate, double load_ratio,
                                    double timestep) {
    MSF_REQUIRE(count >= 0, "cycle count must be non-negative");
    LoadProgram p;
    p.strain_rate = strain_rate;
    p.load_ratio = load_ratio;
    p.timestep = timestep;
    for (int c = 0; c < count; ++c) p.peak_strains.push_back(first_peak + c * step);
    p.validate();
    return p;
}

double tip_stress(AtomSystem& sys, ForceField& field, double tip_x, double tip_y, double dir_x, double dir_y,
                  const std::vector<bool>& surface, double radius, int* count,
                  const std::vector<double>& reference) {
    const auto stress = virial_stress(sys, field);
    const double r2 = radius * radius;
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (!sys.is_mobile(i)) continue;
        if (i < surface.size() && surface[i]) continue;
        const double dx = sys.positions[i].x - tip_x, dy = sys.positions[i].y - tip_y;
        if (dx * dx + dy * dy > r2 || dx * dir_x + dy * dir_y < 0) continue;
        sum += stress.gpa(i, 1) - (i < reference.size() ? reference[i] : 0.0);
        ++n;
    }
    if (count) *count = n;
    return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

LoadingResult run_cyclic_loading(AtomSystem& sys, ForceField& field, const LoadProgram& program,
                                 const LoadingOptions& options, const EmissionObserver& observer) {
    program.validate();
    MSF_REQUIRE(options.emit_every >= 1, "emission interval must be at least one cycle");

    LoadingResult result;
    const double height = sys.box.length().y;
    const double rate = program.strain_rate * kPerSecondToPerPicosecond;
    const double dt = program.timestep;
    double strain = 0.0;

    auto motion_for = [&](double eps, double sign) {
        SlabMotion m;
        m.top_displacement = {0.0, 0.5 * eps * height, 0.0};
        m.bottom_displacement = {0.0, -0.5 * eps * height, 0.0};
        m.top_velocity = {0.0, sign * 0.5 * rate * height, 0.0};
        m.bottom_velocity = {0.0, -sign * 0.5 * rate * height, 0.0};
        return m;
    };
    auto ramp = [&](double target) {
        const double delta = target - strain;
        if (delta == 0.0) return;
        const long long steps = std::max(1LL, std::llround(std::abs(delta) / (rate * dt)));
        const double start = strain;
        const double sign = delta > 0 ? 1.0 : -1.0;
        for (long long k = 1; k <= steps; ++k) {
            const double eps = k == steps ? target : start + delta * static_cast<double>(k) / static_cast<double>(steps);
            step_velocity_verlet(sys, field, dt, motion_for(eps, sign));
        }
        strain = target;
        result.steps += steps;
    };

    field.compute(sys);
    std::vector<double> reference;
    if (options.sampling.relative_to_start) {
        const auto start = virial_stress(sys, field);
        reference.resize(sys.size());
        for (std::size_t i = 0; i < sys.size(); ++i) reference[i] = start.gpa(i, 1);
    }
    double tip_x = 0.0, tip_y = 0.0, dir_x = 1.0, dir_y = 0.0;
    bool have_tip = false;
    std::vector<bool> surface;

    for (int c = 0; c < program.cycles(); ++c) {
        CycleRecord rec;
        rec.cycle = c + 1;
        rec.peak_strain = program.peak(c);
        rec.min_strain = program.valley(c);

        ramp(rec.peak_strain);
        std::optional<vision::CrackExtraction> ex;
        try {
            ex = vision::extract_from_atoms(sys, options.extraction);
        } catch (const InvalidArgument&) {
            rec.valid = false;
        }
        if (ex) {
            tip_x = ex->tip_x;
            tip_y = ex->tip_y;
            dir_x = ex->dir_x;
            dir_y = ex->dir_y;
            surface = ex->surface;
            have_tip = true;
            rec.crack_length = ex->length;
        } else if (!result.records.empty()) {
            rec.crack_length = result.records.back().crack_length;
        }
        rec.tip_x = tip_x;
        rec.tip_y = tip_y;
        if (have_tip) {
            rec.sigma_max_gpa =
                tip_stress(sys, field, tip_x, tip_y, dir_x, dir_y, surface, options.sampling.radius, &rec.sampled_atoms, reference);
        } else {
            rec.valid = false;
        }
        const bool emit = rec.cycle % options.emit_every == 0;
        if (emit && ex && options.keep_rasters) rec.raster = ex->raster;
        if (emit && observer) observer(rec, sys, ex ? &*ex : nullptr);

        ramp(rec.min_strain);
        if (have_tip) {
            rec.sigma_min_gpa = tip_stress(sys, field, tip_x, tip_y, dir_x, dir_y, surface, options.sampling.radius, nullptr, reference);
        }
        if (!std::isfinite(rec.sigma_max_gpa) || !std::isfinite(rec.sigma_min_gpa)) rec.valid = false;
        if (emit) result.records.push_back(std::move(rec));
        if (ex && ex->tip_x >= sys.box.hi.x - options.fracture_margin) {
            result.fractured = true;
            break;
        }
    }
    return result;
}

}  // namespace msf::md
