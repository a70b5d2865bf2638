/**
 * @file test_md_dynamics.cpp
 * @brief Integrator, relaxation, force consistency and cyclic loading.
 */
#include "msf/core/error.hpp"
#include "msf/md/forces.hpp"
#include "msf/md/integrator.hpp"
#include "msf/md/lattice.hpp"
#include "msf/md/loading.hpp"
#include "msf/md/md_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

using namespace msf;
using namespace msf::md;

namespace {

AtomSystem free_pair(double separation) {
    AtomSystem sys;
    sys.box.lo = {-20, -20, -20};
    sys.box.hi = {20, 20, 20};
    sys.box.periodic = {false, false, false};
    sys.add_atom({0, 0, 0}, Species::Fe, Group::Mobile);
    sys.add_atom({separation, 0, 0}, Species::Fe, Group::Mobile);
    sys.lattice_sites = 2;
    return sys;
}

AtomSystem perturbed_block(std::uint64_t seed, double amplitude) {
    auto sys = build_bcc_block(3, 3, 3, 2.85, true);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    for (auto& r : sys.positions) r += Vec3{u(rng), u(rng), u(rng)};
    return sys;
}

}  // namespace

TEST(Integrator, RestingSystemStaysPut) {
    AtomSystem sys = free_pair(30.0);
    ForceField field(PairPotential::iron_carbon());
    field.compute(sys);
    const auto before = sys.positions;
    for (int i = 0; i < 10; ++i) step_velocity_verlet(sys, field, 0.001);
    EXPECT_EQ(sys.positions, before);
}

TEST(Integrator, BallisticAtom) {
    AtomSystem sys = free_pair(30.0);
    sys.velocities[0] = {1.0, 0.0, 0.0};
    ForceField field(PairPotential::iron_carbon());
    field.compute(sys);
    for (int i = 0; i < 100; ++i) step_velocity_verlet(sys, field, 0.001);
    EXPECT_NEAR(sys.positions[0].x, 0.1, 1e-12);
}

TEST(Integrator, TwoAtomOscillatorConservesEnergy) {
    const auto p = PairPotential::iron_carbon();
    AtomSystem sys = free_pair(p.equilibrium_spacing(PairKind::FeFe) + 0.1);
    ForceField field(p);
    double pe = field.compute(sys);
    const double e0 = pe + sys.kinetic_energy();
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        pe = step_velocity_verlet(sys, field, 0.001);
        worst = std::max(worst, std::abs(pe + sys.kinetic_energy() - e0));
    }
    EXPECT_LT(worst / std::abs(e0), 1e-4);
}

TEST(Integrator, FixedAtomsFollowSlabMotion) {
    auto spec = RveSpec{};
    spec.box = {30, 30, 8.55};
    auto sys = build_rve(spec);
    ForceField field(PairPotential::iron_carbon());
    field.compute(sys);
    SlabMotion motion;
    motion.top_displacement = {0, 0.05, 0};
    motion.bottom_displacement = {0, -0.05, 0};
    step_velocity_verlet(sys, field, 0.001, motion);
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (sys.group[i] == Group::FixedTop) EXPECT_NEAR(sys.positions[i].y - sys.reference[i].y, 0.05, 1e-12);
        if (sys.group[i] == Group::FixedBottom) EXPECT_NEAR(sys.positions[i].y - sys.reference[i].y, -0.05, 1e-12);
    }
}

TEST(Forces, NewtonThirdLawOnRandomConfigurations) {
    const auto p = PairPotential::iron_carbon();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto sys = perturbed_block(seed, 0.2);
        compute_forces(sys, p);
        Vec3 total;
        double scale = 0.0;
        for (const auto& f : sys.forces) {
            total += f;
            scale = std::max(scale, norm(f));
        }
        EXPECT_LT(norm(total), 1e-10 * std::max(1.0, scale));
    }
}

TEST(Forces, MatchFiniteDifferenceOfTotalEnergy) {
    const auto p = PairPotential::iron_carbon();
    const double h = 1e-5;
    for (std::uint64_t seed = 11; seed < 31; ++seed) {
        auto sys = perturbed_block(seed, 0.15);
        compute_forces(sys, p);
        std::mt19937_64 rng(seed);
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, sys.size() - 1)(rng);
        const Vec3 f = sys.forces[i];
        for (int d = 0; d < 3; ++d) {
            auto plus = sys, minus = sys;
            plus.positions[i][d] += h;
            minus.positions[i][d] -= h;
            const double fd = -(compute_forces(plus, p) - compute_forces(minus, p)) / (2 * h);
            EXPECT_NEAR(f[d], fd, 1e-6 * std::max(1.0, std::abs(fd))) << "seed " << seed << " dim " << d;
        }
    }
}

TEST(Relax, PerturbedLatticeConverges) {
    auto sys = perturbed_block(7, 0.01);
    ForceField field(PairPotential::iron_carbon());
    RelaxOptions opt;
    opt.force_tolerance = 1e-4;
    const auto res = relax(sys, field, opt);
    EXPECT_LE(res.max_force, 1e-4);
    EXPECT_LE(res.final_energy, res.initial_energy);
    field.compute(sys);
    EXPECT_LE(max_mobile_force(sys), 1e-4);
}

TEST(Relax, PerfectLatticeNeedsNoWork) {
    auto sys = build_bcc_block(3, 3, 3, 2.85, true);
    ForceField field(PairPotential::iron_carbon());
    const auto res = relax(sys, field);
    EXPECT_LE(res.iterations, 1);
}

TEST(Relax, VacancyLowersEnergy) {
    auto sys = build_bcc_block(4, 4, 4, 2.85, true);
    std::vector<bool> remove(sys.size(), false);
    remove[37] = true;
    sys.remove_atoms(remove);
    ForceField field(PairPotential::iron_carbon());
    const auto res = relax(sys, field);
    EXPECT_LT(res.final_energy, res.initial_energy);
}

TEST(Thermalize, ExactTemperatureAndZeroMomentum) {
    auto sys = build_bcc_block(3, 3, 3, 2.85, true);
    thermalize(sys, 10.0, 5);
    EXPECT_NEAR(sys.temperature(), 10.0, 1e-9);
    Vec3 p;
    for (std::size_t i = 0; i < sys.size(); ++i) p += sys.mass(i) * sys.velocities[i];
    EXPECT_LT(norm(p), 1e-10);
    auto again = build_bcc_block(3, 3, 3, 2.85, true);
    thermalize(again, 10.0, 5);
    EXPECT_EQ(again.velocities, sys.velocities);
}

TEST(LoadProgram, ValleyIsRatioOfPeak) {
    const auto p = LoadProgram::increasing(0.02, 0.005, 5, 1e9, 0.5);
    ASSERT_EQ(p.cycles(), 5);
    for (int c = 0; c < 5; ++c) EXPECT_DOUBLE_EQ(p.valley(c), 0.5 * p.peak(c));
    EXPECT_DOUBLE_EQ(p.peak(4), 0.04);
}

TEST(LoadProgram, RejectsInvalidSchedules) {
    LoadProgram p;
    p.peak_strains = {0.02, 0.01};
    EXPECT_THROW(p.validate(), InvalidArgument);
    p.peak_strains = {0.01};
    p.load_ratio = 1.0;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p.load_ratio = 0.5;
    p.strain_rate = 0.0;
    EXPECT_THROW(p.validate(), InvalidArgument);
}

class SmallCell : public ::testing::Test {
protected:
    static AtomSystem relaxed(std::uint64_t seed) {
        RveSpec spec;
        spec.box = {80, 80, 8.55};
        spec.crack.length = 36;
        spec.seed = seed;
        auto sys = build_rve(spec);
        ForceField field(PairPotential::iron_carbon());
        relax(sys, field);
        sys.reference = sys.positions;
        thermalize(sys, 10.0, seed);
        return sys;
    }
};

TEST_F(SmallCell, NullLoadingKeepsCrackLength) {
    auto sys = relaxed(1);
    ForceField field(PairPotential::iron_carbon());
    LoadProgram p;
    p.peak_strains = {0.0, 0.0, 0.0};
    const auto res = run_cyclic_loading(sys, field, p);
    ASSERT_EQ(res.records.size(), 3u);
    for (const auto& r : res.records) {
        EXPECT_TRUE(r.valid);
        EXPECT_NEAR(r.crack_length, res.records[0].crack_length, 2.0);
        EXPECT_DOUBLE_EQ(r.min_strain, 0.0);
        EXPECT_LT(std::abs(r.sigma_max_gpa), 0.5);
    }
}

TEST_F(SmallCell, RecordsFollowProgramAndAreDeterministic) {
    const auto program = LoadProgram::increasing(0.01, 0.005, 2, 5e10, 0.5);
    auto run = [&] {
        auto sys = relaxed(3);
        ForceField field(PairPotential::iron_carbon());
        return run_cyclic_loading(sys, field, program);
    };
    const auto a = run(), b = run();
    ASSERT_EQ(a.records.size(), 2u);
    for (std::size_t c = 0; c < 2; ++c) {
        EXPECT_DOUBLE_EQ(a.records[c].peak_strain, program.peak(c));
        EXPECT_DOUBLE_EQ(a.records[c].min_strain, 0.5 * program.peak(c));
        EXPECT_EQ(a.records[c].sigma_max_gpa, b.records[c].sigma_max_gpa);
        EXPECT_EQ(a.records[c].crack_length, b.records[c].crack_length);
    }
    EXPECT_GT(a.records[1].sigma_max_gpa, 0.0);
    EXPECT_EQ(a.steps, b.steps);
}

TEST(CycleCsv, RoundTrip) {
    std::vector<CycleRecord> recs(2);
    recs[0].cycle = 1;
    recs[0].peak_strain = 0.02;
    recs[0].sigma_max_gpa = 3.5;
    recs[0].crack_length = 36.2;
    recs[1].cycle = 2;
    recs[1].valid = false;
    recs[1].sigma_min_gpa = std::nan("");
    const auto path = std::filesystem::temp_directory_path() / "msf_cycles.csv";
    write_cycle_csv(path.string(), recs, {"seed=4"});
    const auto back = read_cycle_csv(path.string());
    ASSERT_EQ(back.size(), 2u);
    EXPECT_DOUBLE_EQ(back[0].sigma_max_gpa, 3.5);
    EXPECT_DOUBLE_EQ(back[0].crack_length, 36.2);
    EXPECT_FALSE(back[1].valid);
    EXPECT_TRUE(std::isnan(back[1].sigma_min_gpa));
}
