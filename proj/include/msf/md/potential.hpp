/**
 * @file potential.hpp
 * @brief Shifted-force Morse pair potential standing in for Fe-C.
 *
 * U_sf(r) = U(r) - U(r_c) - (r - r_c) U'(r_c) for r < r_c, zero beyond, so
 * both energy and force go continuously to zero at the cutoff. Fe-Fe
 * parameters are chosen so that the perfect BCC lattice at a = 2.85 A is at
 * zero pressure with this cutoff. Carbon pairs reuse the Fe-Fe form with the
 * well depth and equilibrium distance scaled per carbon partner.
 */
#pragma once

#include "msf/md/atom_system.hpp"

#include <cmath>
#include <string>

namespace msf::md {

struct MorseParameters {
    double well_depth = 0.0;  ///< eV
    double alpha = 0.0;       ///< 1/Angstrom
    double r_eq = 0.0;        ///< Angstrom
};

enum class PairKind { FeFe = 0, FeC = 1, CC = 2 };

PairKind pair_kind(Species a, Species b);

class PairPotential {
public:
    /// Zero-pressure BCC iron surrogate (a = 2.85 A, r_c = 4.4 A).
    static PairPotential iron_carbon(double carbon_depth_factor = 0.5, double carbon_radius_factor = 0.8);

    PairPotential(MorseParameters iron, double cutoff, double carbon_depth_factor, double carbon_radius_factor);

    double cutoff() const { return cutoff_; }
    const MorseParameters& parameters(PairKind k) const { return params_[static_cast<int>(k)]; }
    std::string id() const { return "morse-shifted-force"; }

    double energy(double r, PairKind k) const;
    /// dU_sf/dr; zero at and beyond the cutoff.
    double derivative(double r, PairKind k) const;
    /// Energy and dU_sf/dr together; r must be below the cutoff.
    void evaluate(double r, PairKind k, double& energy, double& derivative) const {
        const int i = static_cast<int>(k);
        const auto& p = params_[i];
        const double e = std::exp(-p.alpha * (r - p.r_eq));
        energy = p.well_depth * (e * e - 2.0 * e) - shift_energy_[i] - (r - cutoff_) * shift_derivative_[i];
        derivative = 2.0 * p.alpha * p.well_depth * (e - e * e) - shift_derivative_[i];
    }
    /// Separation where dU_sf/dr = 0, i.e. an isolated pair at rest.
    double equilibrium_spacing(PairKind k) const;

private:
    double raw_energy(double r, PairKind k) const;
    double raw_derivative(double r, PairKind k) const;

    MorseParameters params_[3];
    double cutoff_;
    double shift_energy_[3];
    double shift_derivative_[3];
};

}  // namespace msf::md
