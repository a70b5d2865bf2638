/**
 * @file test_md_potential.cpp
 * @brief Shifted-force pair potential, pair forces and the per-atom virial.
 */
#include "msf/core/error.hpp"
#include "msf/md/forces.hpp"
#include "msf/md/lattice.hpp"
#include "msf/md/virial.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace msf;
using namespace msf::md;

namespace {

AtomSystem pair_system(double separation, Species b = Species::Fe) {
    AtomSystem sys;
    sys.box.lo = {-20, -20, -20};
    sys.box.hi = {20, 20, 20};
    sys.box.periodic = {false, false, false};
    sys.add_atom({0, 0, 0}, Species::Fe, Group::Mobile);
    sys.add_atom({separation, 0, 0}, b, Group::Mobile);
    sys.lattice_sites = 2;
    return sys;
}

double central_difference(const PairPotential& p, double r, PairKind k) {
    const double h = 1e-5;
    return (p.energy(r + h, k) - p.energy(r - h, k)) / (2 * h);
}

}  // namespace

TEST(Potential, EnergyAndForceVanishAtCutoff) {
    const auto p = PairPotential::iron_carbon();
    for (auto k : {PairKind::FeFe, PairKind::FeC, PairKind::CC}) {
        EXPECT_NEAR(p.energy(p.cutoff(), k), 0.0, 1e-14);
        EXPECT_NEAR(p.derivative(p.cutoff(), k), 0.0, 1e-14);
        EXPECT_EQ(p.energy(p.cutoff() + 0.1, k), 0.0);
        EXPECT_EQ(p.derivative(p.cutoff() + 1e-9, k), 0.0);
    }
}

TEST(Potential, DerivativeMatchesFiniteDifference) {
    const auto p = PairPotential::iron_carbon();
    for (auto k : {PairKind::FeFe, PairKind::FeC, PairKind::CC}) {
        for (double r = 1.8; r < p.cutoff() - 0.01; r += 0.173) {
            const double fd = central_difference(p, r, k);
            EXPECT_NEAR(p.derivative(r, k), fd, 1e-6 * std::max(1.0, std::abs(fd))) << "r=" << r;
        }
    }
}

TEST(Potential, PerfectLatticeHasZeroPressure) {
    // Sum of r U'(r) over the three neighbour shells within the cutoff.
    const auto p = PairPotential::iron_carbon();
    const double a = 2.85;
    const double virial = 8 * (std::sqrt(3.0) / 2 * a) * p.derivative(std::sqrt(3.0) / 2 * a, PairKind::FeFe) +
                          6 * a * p.derivative(a, PairKind::FeFe) +
                          12 * (std::sqrt(2.0) * a) * p.derivative(std::sqrt(2.0) * a, PairKind::FeFe);
    EXPECT_NEAR(virial, 0.0, 1e-5);
}

TEST(Potential, CarbonPairsAreScaled) {
    const auto p = PairPotential::iron_carbon(0.5, 0.8);
    const auto& fe = p.parameters(PairKind::FeFe);
    const auto& fec = p.parameters(PairKind::FeC);
    EXPECT_NEAR(fec.well_depth, 0.5 * fe.well_depth, 1e-12);
    EXPECT_NEAR(fec.r_eq, 0.8 * fe.r_eq, 1e-12);
    EXPECT_EQ(pair_kind(Species::CInterstitial, Species::Fe), PairKind::FeC);
    EXPECT_EQ(pair_kind(Species::CSubstitutional, Species::CInterstitial), PairKind::CC);
}

TEST(PairForces, BeyondCutoffExactlyZero) {
    const auto p = PairPotential::iron_carbon();
    auto sys = pair_system(p.cutoff() + 1e-6);
    compute_forces(sys, p);
    for (const auto& f : sys.forces) {
        EXPECT_EQ(f.x, 0.0);
        EXPECT_EQ(f.y, 0.0);
        EXPECT_EQ(f.z, 0.0);
    }
}

TEST(PairForces, EquilibriumSpacingIsForceFree) {
    const auto p = PairPotential::iron_carbon();
    auto sys = pair_system(p.equilibrium_spacing(PairKind::FeFe));
    compute_forces(sys, p);
    EXPECT_NEAR(sys.forces[0].x, 0.0, 1e-10);
    EXPECT_NEAR(sys.forces[1].x, 0.0, 1e-10);
}

TEST(PairForces, CompressedPairMatchesDerivative) {
    const auto p = PairPotential::iron_carbon();
    const double r = 0.9 * p.parameters(PairKind::FeFe).r_eq;
    auto sys = pair_system(r);
    compute_forces(sys, p);
    const double fd = central_difference(p, r, PairKind::FeFe);
    // Repulsive: atom 1 (at +x) is pushed towards +x with magnitude -dU/dr.
    EXPECT_NEAR(sys.forces[1].x, -fd, 1e-6 * std::abs(fd));
    EXPECT_NEAR(sys.forces[0].x, fd, 1e-6 * std::abs(fd));
    EXPECT_GT(sys.forces[1].x, 0.0);
}

TEST(PairForces, OverlapIsReported) {
    auto sys = pair_system(0.2);
    EXPECT_THROW(compute_forces(sys, PairPotential::iron_carbon()), NumericalError);
}

TEST(PairForces, CutoffLocality) {
    const auto p = PairPotential::iron_carbon();
    AtomSystem sys = pair_system(2.4);
    sys.add_atom({10.0, 0, 0}, Species::Fe, Group::Mobile);
    compute_forces(sys, p);
    const Vec3 before = sys.forces[0];
    sys.positions[2] = {10.0, 1.3, -0.7};
    compute_forces(sys, p);
    EXPECT_EQ(sys.forces[0], before);
}

TEST(Virial, TwoAtomHandEvaluation) {
    const auto p = PairPotential::iron_carbon();
    const double d = 2.3;
    auto sys = pair_system(d);
    const auto field = virial_stress(sys, p);
    // Pair force on atom 0 due to atom 1, x component: U'(d) (x1 - x0) / d.
    const double f = p.derivative(d, PairKind::FeFe);
    const double expected = 0.5 * d * f / sys.atomic_volume();
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(field.stress[i][0], expected, 1e-10);
        for (int c : {1, 2, 3, 4, 5}) EXPECT_NEAR(field.stress[i][c], 0.0, 1e-14);
        EXPECT_NEAR(field.von_mises[i], std::abs(expected), 1e-10);
    }
}

TEST(Virial, KineticTermReducesStress) {
    const auto p = PairPotential::iron_carbon();
    auto sys = pair_system(p.cutoff() + 1.0);
    sys.velocities[0] = {2.0, 1.0, 0.0};
    const auto field = virial_stress(sys, p);
    const double m = sys.mass(0) / kForceToAccel;  // eV ps^2 / A^2
    EXPECT_NEAR(field.stress[0][0], -m * 4.0 / sys.atomic_volume(), 1e-12);
    EXPECT_NEAR(field.stress[0][3], -m * 2.0 / sys.atomic_volume(), 1e-12);
}

TEST(Virial, HydrostaticStateHasNoVonMises) { EXPECT_NEAR(von_mises(Voigt6{3, 3, 3, 0, 0, 0}), 0.0, 1e-15); }

TEST(Virial, PerfectLatticeIsStressFree) {
    auto sys = build_bcc_block(5, 5, 5, 2.85, true);
    const auto field = virial_stress(sys, PairPotential::iron_carbon());
    double worst = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        worst = std::max(worst, field.von_mises_gpa(i));
        EXPECT_GE(field.von_mises[i], 0.0);
    }
    EXPECT_LT(worst, 1e-6);
}
