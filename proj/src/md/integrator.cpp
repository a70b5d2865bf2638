#include "msf/md/integrator.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace msf::md {

namespace {

bool finite(const Vec3& v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

}  // namespace

void apply_slab_motion(AtomSystem& sys, const SlabMotion& motion) {
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (sys.group[i] == Group::FixedTop) {
            sys.positions[i] = sys.reference[i] + motion.top_displacement;
            sys.velocities[i] = motion.top_velocity;
        } else if (sys.group[i] == Group::FixedBottom) {
            sys.positions[i] = sys.reference[i] + motion.bottom_displacement;
            sys.velocities[i] = motion.bottom_velocity;
        }
    }
}

double step_velocity_verlet(AtomSystem& sys, ForceField& field, double dt, const SlabMotion& motion) {
    MSF_REQUIRE(dt > 0, "timestep must be positive");
    const std::size_t n = sys.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!sys.is_mobile(i)) continue;
        const double h = 0.5 * dt * kForceToAccel / sys.mass(i);
        sys.velocities[i] += sys.forces[i] * h;
        sys.positions[i] += sys.velocities[i] * dt;
    }
    apply_slab_motion(sys, motion);
    const double energy = field.compute(sys);
    for (std::size_t i = 0; i < n; ++i) {
        if (!sys.is_mobile(i)) continue;
        const double h = 0.5 * dt * kForceToAccel / sys.mass(i);
        sys.velocities[i] += sys.forces[i] * h;
        if (!finite(sys.positions[i]) || !finite(sys.velocities[i])) {
            throw NumericalError("non-finite state after velocity-Verlet step; reduce the timestep");
        }
    }
    return energy;
}

double max_mobile_force(const AtomSystem& sys) {
    double fmax2 = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (sys.is_mobile(i)) fmax2 = std::max(fmax2, dot(sys.forces[i], sys.forces[i]));
    }
    return std::sqrt(fmax2);
}

RelaxResult relax(AtomSystem& sys, ForceField& field, const RelaxOptions& options) {
    // FIRE (Bitzek et al. 2006) with its usual constants.
    constexpr int kDelay = 5;
    constexpr double kGrow = 1.1, kShrink = 0.5, kAlpha0 = 0.1, kAlphaShrink = 0.99;

    RelaxResult result;
    for (auto& v : sys.velocities) v = {};
    double energy = field.compute(sys);
    result.initial_energy = energy;
    result.max_force = max_mobile_force(sys);
    if (result.max_force <= options.force_tolerance) {
        result.final_energy = energy;
        return result;
    }

    double dt = options.dt_start;
    double alpha = kAlpha0;
    int since_reset = 0;
    const std::size_t n = sys.size();
    for (int step = 1; step <= options.max_steps; ++step) {
        double power = 0.0, vnorm2 = 0.0, fnorm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!sys.is_mobile(i)) continue;
            power += dot(sys.forces[i], sys.velocities[i]);
            vnorm2 += dot(sys.velocities[i], sys.velocities[i]);
            fnorm2 += dot(sys.forces[i], sys.forces[i]);
        }
        if (power > 0) {
            const double scale = fnorm2 > 0 ? std::sqrt(vnorm2 / fnorm2) : 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!sys.is_mobile(i)) continue;
                sys.velocities[i] = sys.velocities[i] * (1.0 - alpha) + sys.forces[i] * (alpha * scale);
            }
            if (++since_reset > kDelay) {
                dt = std::min(dt * kGrow, options.dt_max);
                alpha *= kAlphaShrink;
            }
        } else {
            for (auto& v : sys.velocities) v = {};
            dt *= kShrink;
            alpha = kAlpha0;
            since_reset = 0;
        }

        for (std::size_t i = 0; i < n; ++i) {
            if (!sys.is_mobile(i)) continue;
            sys.velocities[i] += sys.forces[i] * (dt * kForceToAccel / sys.mass(i));
            sys.positions[i] += sys.velocities[i] * dt;
        }
        energy = field.compute(sys);
        result.iterations = step;
        result.max_force = max_mobile_force(sys);
        if (!std::isfinite(energy) || !std::isfinite(result.max_force)) {
            throw NumericalError("relaxation produced a non-finite state");
        }
        if (result.max_force <= options.force_tolerance) {
            for (auto& v : sys.velocities) v = {};
            result.final_energy = energy;
            return result;
        }
    }
    throw NumericalError("relaxation did not converge within " + std::to_string(options.max_steps) +
                         " steps (max force " + std::to_string(result.max_force) + " eV/A)");
}

void thermalize(AtomSystem& sys, double temperature, std::uint64_t seed) {
    MSF_REQUIRE(temperature >= 0, "temperature must be non-negative");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec3 momentum;
    double mass_sum = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (!sys.is_mobile(i)) {
            continue;
        }
        const double sigma = std::sqrt(kBoltzmann * temperature * kForceToAccel / sys.mass(i));
        sys.velocities[i] = {sigma * normal(rng), sigma * normal(rng), sigma * normal(rng)};
        momentum += sys.velocities[i] * sys.mass(i);
        mass_sum += sys.mass(i);
    }
    if (mass_sum == 0.0) return;
    const Vec3 drift = momentum * (1.0 / mass_sum);
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (sys.is_mobile(i)) sys.velocities[i] -= drift;
    }
    const double t_now = sys.temperature();
    if (t_now > 0) {
        const double s = std::sqrt(temperature / t_now);
        for (std::size_t i = 0; i < sys.size(); ++i) {
            if (sys.is_mobile(i)) sys.velocities[i] *= s;
        }
    }
}

}  // namespace msf::md
