#include "msf/md/potential.hpp"

#include "msf/core/error.hpp"

#include <cmath>

namespace msf::md {

namespace {
// Solved offline so that sum_j U_sf'(r_j) r_j = 0 over the BCC shells at
// a = 2.85 A with r_c = 4.4 A, and the shifted cohesive energy is 4.28 eV.
constexpr MorseParameters kIron{2.503325, 1.0, 2.5087534843};
constexpr double kIronCutoff = 4.4;
}  // namespace

PairKind pair_kind(Species a, Species b) {
    const int carbons = static_cast<int>(is_carbon(a)) + static_cast<int>(is_carbon(b));
    return static_cast<PairKind>(carbons);
}

PairPotential PairPotential::iron_carbon(double carbon_depth_factor, double carbon_radius_factor) {
    return PairPotential(kIron, kIronCutoff, carbon_depth_factor, carbon_radius_factor);
}

PairPotential::PairPotential(MorseParameters iron, double cutoff, double carbon_depth_factor,
                             double carbon_radius_factor)
    : cutoff_(cutoff) {
    MSF_REQUIRE(iron.well_depth > 0 && iron.alpha > 0 && iron.r_eq > 0, "Morse parameters must be positive");
    MSF_REQUIRE(cutoff > iron.r_eq, "cutoff must exceed the equilibrium distance");
    MSF_REQUIRE(carbon_depth_factor > 0 && carbon_radius_factor > 0, "carbon scale factors must be positive");
    params_[0] = iron;
    params_[1] = {iron.well_depth * carbon_depth_factor, iron.alpha, iron.r_eq * carbon_radius_factor};
    params_[2] = {iron.well_depth * carbon_depth_factor * carbon_depth_factor, iron.alpha,
                  iron.r_eq * carbon_radius_factor * carbon_radius_factor};
    for (int k = 0; k < 3; ++k) {
        shift_energy_[k] = raw_energy(cutoff_, static_cast<PairKind>(k));
        shift_derivative_[k] = raw_derivative(cutoff_, static_cast<PairKind>(k));
    }
}

double PairPotential::raw_energy(double r, PairKind k) const {
    const auto& p = params_[static_cast<int>(k)];
    const double e = std::exp(-p.alpha * (r - p.r_eq));
    return p.well_depth * (e * e - 2.0 * e);
}

double PairPotential::raw_derivative(double r, PairKind k) const {
    const auto& p = params_[static_cast<int>(k)];
    const double e = std::exp(-p.alpha * (r - p.r_eq));
    return 2.0 * p.alpha * p.well_depth * (e - e * e);
}

double PairPotential::energy(double r, PairKind k) const {
    if (r >= cutoff_) return 0.0;
    const int i = static_cast<int>(k);
    return raw_energy(r, k) - shift_energy_[i] - (r - cutoff_) * shift_derivative_[i];
}

double PairPotential::derivative(double r, PairKind k) const {
    if (r >= cutoff_) return 0.0;
    return raw_derivative(r, k) - shift_derivative_[static_cast<int>(k)];
}

double PairPotential::equilibrium_spacing(PairKind k) const {
    // U_sf' is negative below the minimum and positive above it, up to the
    // inflection point of the raw Morse curve.
    const auto& p = params_[static_cast<int>(k)];
    double lo = p.r_eq * 0.5;
    double hi = std::min(cutoff_, p.r_eq + std::log(2.0) / p.alpha);
    MSF_REQUIRE(derivative(lo, k) < 0 && derivative(hi, k) > 0, "no bound pair minimum inside the cutoff");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (derivative(mid, k) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace msf::md
