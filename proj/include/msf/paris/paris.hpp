/**
 * @file paris.hpp
 * @brief Stress-intensity ranges, crack-growth rates and Paris-law fitting.
 *
 * Lengths and stresses are plain doubles in the unit system named by
 * UnitSystem: MPa with metres (K in MPa*sqrt(m), rates in m/cycle) or MPa
 * with millimetres (K in MPa*sqrt(mm), rates in mm/cycle).
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace msf::paris {

enum class UnitSystem { MpaSqrtM, MpaSqrtMm };

/// "mpa_sqrt_m" or "mpa_sqrt_mm"; anything else throws ConfigError.
UnitSystem parse_units(const std::string& tag);
std::string units_tag(UnitSystem u);
/// Size of the length unit in metres (1 or 1e-3).
double length_unit_in_metres(UnitSystem u);

struct CycleSample {
    double cycle = 0.0;
    double length = 0.0;  ///< crack length
    double sigma_max = 0.0;
    double sigma_min = 0.0;
};

/// K_I = sigma * sqrt(pi * a). Throws InvalidArgument for a < 0.
double stress_intensity(double sigma, double length);
/// K(sigma_max, a) - K(sigma_min, a). Throws InvalidArgument if sigma_min > sigma_max.
double delta_k(const CycleSample& s);

struct GrowthPoint {
    double delta_k = 0.0;
    double rate = 0.0;  ///< da/dN, length per cycle
};

struct DeltaKWindow {
    std::optional<double> min;
    std::optional<double> max;
    /// Fraction of the growing intervals dropped at each end of the
    /// sorted delta-K range before the explicit bounds apply.
    double trim_fraction = 0.1;
};

/// One point per interval [k, k+1]: rate (a_{k+1} - a_k) / (N_{k+1} - N_k)
/// at the mean of the two samples' delta-K. Intervals without positive growth
/// and those outside the window are dropped; the result may be empty.
/// Requires at least three samples with strictly increasing cycle numbers.
std::vector<GrowthPoint> growth_points(const std::vector<CycleSample>& samples, const DeltaKWindow& window = {});

struct ParisConstants {
    double C = 0.0;
    double m = 0.0;
    UnitSystem units = UnitSystem::MpaSqrtM;
    double r_squared = 1.0;
    int points = 0;
    double delta_k_min = 0.0;
    double delta_k_max = 0.0;

    double rate(double dk) const;
};

/// Ordinary least squares of log10(rate) on log10(delta_k). Throws
/// InvalidArgument ("no growth points") for fewer than two points, on
/// non-positive values, or when all delta-K values coincide.
ParisConstants fit_paris(const std::vector<GrowthPoint>& points, UnitSystem units = UnitSystem::MpaSqrtM);

/// Constants after lengths are multiplied by `length_factor` and stresses
/// by `stress_factor`; m is unchanged.
double rescale_coefficient(double C, double m, double length_factor, double stress_factor);
ParisConstants convert_units(const ParisConstants& p, UnitSystem to);

}  // namespace msf::paris
