/**
 * @file test_paris.cpp
 * @brief Growth-law fitting: stress intensity, growth points, log-log fit,
 *        unit conversion and the constants document.
 */
#include "msf/core/error.hpp"
#include "msf/paris/paris.hpp"
#include "msf/paris/paris_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

using namespace msf;
using namespace msf::paris;

namespace {

/// Samples whose interval rates follow C dK^m exactly when dK is the mean of
/// the two endpoint factors, built forward from a0 at constant stress range.
std::vector<CycleSample> exact_samples(double C, double m, double a0, double smax, double smin, int n) {
    std::vector<CycleSample> s{{0.0, a0, smax, smin}};
    for (int k = 1; k < n; ++k) {
        const double a_prev = s.back().length;
        // Solve a = a_prev + C * (ds/2 (sqrt(pi a_prev) + sqrt(pi a)))^m by fixed point.
        const double ds = smax - smin;
        double a = a_prev * 1.05;
        for (int it = 0; it < 200; ++it) {
            const double dk = 0.5 * ds * (std::sqrt(std::numbers::pi * a_prev) + std::sqrt(std::numbers::pi * a));
            a = a_prev + C * std::pow(dk, m) * 1000.0;
        }
        s.push_back({1000.0 * k, a, smax, smin});
    }
    return s;
}

}  // namespace

TEST(StressIntensity, MatchesGriffithForm) {
    EXPECT_DOUBLE_EQ(stress_intensity(100.0, 0.01), 100.0 * std::sqrt(std::numbers::pi * 0.01));
    EXPECT_DOUBLE_EQ(stress_intensity(50.0, 0.0), 0.0);
    EXPECT_THROW(stress_intensity(1.0, -1e-9), InvalidArgument);
}

TEST(StressIntensity, RangeUsesBothStresses) {
    const CycleSample s{1, 0.02, 300.0, 120.0};
    EXPECT_NEAR(delta_k(s), 180.0 * std::sqrt(std::numbers::pi * 0.02), 1e-12);
    EXPECT_THROW(delta_k(CycleSample{1, 0.02, 100.0, 101.0}), InvalidArgument);
}

TEST(GrowthPoints, RateAndMidpointFactor) {
    const std::vector<CycleSample> s{{0, 0.010, 200, 100}, {10, 0.012, 200, 100}, {30, 0.016, 200, 100}};
    DeltaKWindow w;
    w.trim_fraction = 0.0;
    const auto p = growth_points(s, w);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_NEAR(p[0].rate, 0.002 / 10.0, 1e-15);
    EXPECT_NEAR(p[1].rate, 0.004 / 20.0, 1e-15);
    const double k0 = 100 * std::sqrt(std::numbers::pi * 0.010), k1 = 100 * std::sqrt(std::numbers::pi * 0.012);
    EXPECT_NEAR(p[0].delta_k, 0.5 * (k0 + k1), 1e-12);
}

TEST(GrowthPoints, ConstantLengthGivesNoPoints) {
    std::vector<CycleSample> s;
    for (int k = 0; k < 6; ++k) s.push_back({double(k), 0.01, 200, 100});
    EXPECT_TRUE(growth_points(s).empty());
    EXPECT_THROW(fit_paris(growth_points(s)), InvalidArgument);
}

TEST(GrowthPoints, ShrinkingLengthIntervalsDropped) {
    const std::vector<CycleSample> s{{0, 0.010, 200, 100}, {1, 0.009, 200, 100}, {2, 0.011, 200, 100}};
    DeltaKWindow w;
    w.trim_fraction = 0.0;
    EXPECT_EQ(growth_points(s, w).size(), 1u);
}

TEST(GrowthPoints, RejectsShortOrUnorderedInput) {
    EXPECT_THROW(growth_points({{0, 1, 2, 1}, {1, 1, 2, 1}}), InvalidArgument);
    EXPECT_THROW(growth_points({{0, 1, 2, 1}, {2, 1.1, 2, 1}, {2, 1.2, 2, 1}}), InvalidArgument);
}

TEST(GrowthPoints, ShrinkingWindowNeverAddsPoints) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> growth(0.0, 2e-4);
    std::vector<CycleSample> s;
    double a = 0.01;
    for (int k = 0; k < 60; ++k) {
        s.push_back({double(k), a, 250, 50});
        a += growth(rng);
    }
    DeltaKWindow wide;
    const auto all = growth_points(s, wide);
    ASSERT_GT(all.size(), 10u);
    double lo = 1e300, hi = 0;
    for (const auto& p : all) {
        lo = std::min(lo, p.delta_k);
        hi = std::max(hi, p.delta_k);
    }
    std::size_t prev = all.size();
    for (int i = 1; i <= 10; ++i) {
        DeltaKWindow w = wide;
        w.min = lo + (hi - lo) * 0.04 * i;
        w.max = hi - (hi - lo) * 0.04 * i;
        const auto n = growth_points(s, w).size();
        EXPECT_LE(n, prev);
        prev = n;
    }
}

TEST(ParisFit, RecoversExactPowerLaw) {
    const double C = 1.43e-11, m = 2.75;
    std::vector<GrowthPoint> pts;
    for (double dk = 5; dk <= 60; dk += 5) pts.push_back({dk, C * std::pow(dk, m)});
    const auto fit = fit_paris(pts);
    EXPECT_NEAR(fit.m, m, 1e-9);
    EXPECT_NEAR(fit.C / C, 1.0, 1e-9);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    EXPECT_EQ(fit.points, static_cast<int>(pts.size()));
    EXPECT_DOUBLE_EQ(fit.delta_k_min, 5.0);
    EXPECT_DOUBLE_EQ(fit.delta_k_max, 60.0);
}

TEST(ParisFit, MatchesClosedFormLeastSquares) {
    const std::vector<GrowthPoint> pts{{10, 2e-8}, {20, 1e-7}, {40, 3e-7}, {80, 2.5e-6}};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : pts) {
        const double x = std::log10(p.delta_k), y = std::log10(p.rate);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = pts.size();
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    const auto fit = fit_paris(pts);
    EXPECT_NEAR(fit.m, slope, 1e-12);
    EXPECT_NEAR(std::log10(fit.C), icpt, 1e-12);
    EXPECT_LT(fit.r_squared, 1.0);
    EXPECT_GT(fit.r_squared, 0.9);
}

TEST(ParisFit, RejectsDegenerateInput) {
    EXPECT_THROW(fit_paris({{10, 1e-8}}), InvalidArgument);
    EXPECT_THROW(fit_paris({{10, 1e-8}, {10, 2e-8}}), InvalidArgument);
    EXPECT_THROW(fit_paris({{10, 1e-8}, {-1, 2e-8}}), InvalidArgument);
    EXPECT_THROW(fit_paris({{10, 0.0}, {20, 2e-8}}), InvalidArgument);
    try {
        fit_paris({});
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("no growth points"), std::string::npos);
    }
}

TEST(ParisFit, RoundTripThroughSamples) {
    const double C = 1.43e-11, m = 2.75;
    const auto s = exact_samples(C, m, 0.005, 300, 30, 25);
    DeltaKWindow w;
    w.trim_fraction = 0.0;
    const auto fit = fit_paris(growth_points(s, w));
    EXPECT_NEAR(fit.m, m, 1e-6);
    EXPECT_NEAR(fit.C / C, 1.0, 1e-6);
}

TEST(ParisFit, ScalingRateScalesCoefficientOnly) {
    const std::vector<GrowthPoint> pts{{10, 2e-8}, {20, 1e-7}, {40, 3e-7}};
    auto scaled = pts;
    for (auto& p : scaled) p.rate *= 7.0;
    const auto a = fit_paris(pts), b = fit_paris(scaled);
    EXPECT_NEAR(a.m, b.m, 1e-12);
    EXPECT_NEAR(b.C / a.C, 7.0, 1e-9);
}

TEST(Units, ConversionPreservesPredictedRate) {
    ParisConstants p;
    p.C = 1.4299e-11;
    p.m = 2.9041;
    p.units = UnitSystem::MpaSqrtM;
    const auto q = convert_units(p, UnitSystem::MpaSqrtMm);
    EXPECT_EQ(q.units, UnitSystem::MpaSqrtMm);
    EXPECT_DOUBLE_EQ(q.m, p.m);
    // 20 MPa sqrt(m) = 20 sqrt(1000) MPa sqrt(mm); rate m/cycle = 1000 mm/cycle.
    const double dk = 20.0;
    EXPECT_NEAR(q.rate(dk * std::sqrt(1000.0)) / (1000.0 * p.rate(dk)), 1.0, 1e-12);
    const auto back = convert_units(q, UnitSystem::MpaSqrtM);
    EXPECT_NEAR(back.C / p.C, 1.0, 1e-12);
}

TEST(Units, ParseTags) {
    EXPECT_EQ(parse_units("mpa_sqrt_m"), UnitSystem::MpaSqrtM);
    EXPECT_EQ(parse_units("mpa_sqrt_mm"), UnitSystem::MpaSqrtMm);
    EXPECT_THROW(parse_units("ksi_sqrt_in"), ConfigError);
    EXPECT_DOUBLE_EQ(length_unit_in_metres(UnitSystem::MpaSqrtMm), 1e-3);
}

TEST(ParisDocument, JsonRoundTrip) {
    ParisDocument doc;
    doc.constants.C = 7.9016e-10;
    doc.constants.m = 1.3144;
    doc.constants.r_squared = 0.93;
    doc.constants.points = 12;
    doc.constants.delta_k_min = 1.5;
    doc.constants.delta_k_max = 4.0;
    doc.metadata["seed"] = "42";
    const auto back = paris_from_json(to_json(doc));
    EXPECT_DOUBLE_EQ(back.constants.C, doc.constants.C);
    EXPECT_DOUBLE_EQ(back.constants.m, doc.constants.m);
    EXPECT_EQ(back.constants.points, 12);
    EXPECT_EQ(back.metadata.at("seed"), "42");
    EXPECT_THROW(paris_from_json("{\"m\": 2}"), ConfigError);
    EXPECT_THROW(paris_from_json("not json"), ConfigError);
}

TEST(ParisDocument, SamplesCsvRoundTrip) {
    const auto dir = std::filesystem::temp_directory_path() / "msf_paris_csv";
    std::filesystem::create_directories(dir);
    const std::vector<CycleSample> s{{0, 0.01, 200, 20}, {5, 0.0125, 210, 21}, {9, 0.02, 190, 19}};
    write_samples_csv(dir / "s.csv", s, {"seed=3"});
    const auto back = read_samples_csv(dir / "s.csv");
    ASSERT_EQ(back.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_DOUBLE_EQ(back[i].cycle, s[i].cycle);
        EXPECT_DOUBLE_EQ(back[i].length, s[i].length);
        EXPECT_DOUBLE_EQ(back[i].sigma_min, s[i].sigma_min);
    }
    std::ofstream(dir / "headerless.csv") << "1,0.5,3,1\n2,0.6,3,1\n";
    EXPECT_EQ(read_samples_csv(dir / "headerless.csv").size(), 2u);
    EXPECT_THROW(read_samples_csv(dir / "missing.csv"), ConfigError);
}
