#include "msf/paris/paris.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace msf::paris {

UnitSystem parse_units(const std::string& tag) {
    if (tag == "mpa_sqrt_m") return UnitSystem::MpaSqrtM;
    if (tag == "mpa_sqrt_mm") return UnitSystem::MpaSqrtMm;
    throw ConfigError("unknown unit system '" + tag + "' (expected mpa_sqrt_m or mpa_sqrt_mm)");
}

std::string units_tag(UnitSystem u) { return u == UnitSystem::MpaSqrtM ? "mpa_sqrt_m" : "mpa_sqrt_mm"; }

double length_unit_in_metres(UnitSystem u) { return u == UnitSystem::MpaSqrtM ? 1.0 : 1e-3; }

double stress_intensity(double sigma, double length) {
    MSF_REQUIRE(length >= 0, "crack length must be non-negative");
    return sigma * std::sqrt(std::numbers::pi * length);
}

double delta_k(const CycleSample& s) {
    MSF_REQUIRE(s.sigma_min <= s.sigma_max, "sigma_min exceeds sigma_max");
    return stress_intensity(s.sigma_max, s.length) - stress_intensity(s.sigma_min, s.length);
}

std::vector<GrowthPoint> growth_points(const std::vector<CycleSample>& samples, const DeltaKWindow& window) {
    MSF_REQUIRE(samples.size() >= 3, "at least three cycle samples are required");
    MSF_REQUIRE(window.trim_fraction >= 0 && window.trim_fraction < 0.5, "trim fraction must lie in [0, 0.5)");
    for (std::size_t k = 1; k < samples.size(); ++k) {
        MSF_REQUIRE(samples[k].cycle > samples[k - 1].cycle, "cycle numbers must be strictly increasing");
    }

    std::vector<GrowthPoint> growing;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        const double da = samples[k + 1].length - samples[k].length;
        const double dn = samples[k + 1].cycle - samples[k].cycle;
        const double dk = 0.5 * (delta_k(samples[k]) + delta_k(samples[k + 1]));
        if (da > 0 && dk > 0) growing.push_back({dk, da / dn});
    }
    if (growing.empty()) return growing;

    std::vector<double> sorted;
    for (const auto& p : growing) sorted.push_back(p.delta_k);
    std::sort(sorted.begin(), sorted.end());
    const auto trim = static_cast<std::size_t>(std::floor(window.trim_fraction * static_cast<double>(sorted.size())));
    const double lo = sorted[trim];
    const double hi = sorted[sorted.size() - 1 - trim];

    std::vector<GrowthPoint> kept;
    for (const auto& p : growing) {
        if (p.delta_k < lo || p.delta_k > hi) continue;
        if (window.min && p.delta_k < *window.min) continue;
        if (window.max && p.delta_k > *window.max) continue;
        kept.push_back(p);
    }
    return kept;
}

double ParisConstants::rate(double dk) const { return C * std::pow(dk, m); }

ParisConstants fit_paris(const std::vector<GrowthPoint>& points, UnitSystem units) {
    if (points.size() < 2) throw InvalidArgument("no growth points: at least two are needed for a Paris fit");
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (const auto& p : points) {
        MSF_REQUIRE(p.delta_k > 0 && p.rate > 0, "growth points must be positive");
        sx += std::log10(p.delta_k);
        sy += std::log10(p.rate);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : points) {
        const double dx = std::log10(p.delta_k) - mx, dy = std::log10(p.rate) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 1e-24)) throw InvalidArgument("degenerate Paris fit: all delta-K values coincide");

    ParisConstants out;
    out.m = sxy / sxx;
    out.C = std::pow(10.0, my - out.m * mx);
    out.units = units;
    out.points = static_cast<int>(points.size());
    double ss_res = 0;
    for (const auto& p : points) {
        const double r = std::log10(p.rate) - (my + out.m * (std::log10(p.delta_k) - mx));
        ss_res += r * r;
    }
    out.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    const auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                              [](const auto& a, const auto& b) { return a.delta_k < b.delta_k; });
    out.delta_k_min = lo->delta_k;
    out.delta_k_max = hi->delta_k;
    return out;
}

double rescale_coefficient(double C, double m, double length_factor, double stress_factor) {
    MSF_REQUIRE(length_factor > 0 && stress_factor > 0, "unit factors must be positive");
    return C * length_factor / std::pow(stress_factor * std::sqrt(length_factor), m);
}

ParisConstants convert_units(const ParisConstants& p, UnitSystem to) {
    ParisConstants out = p;
    const double lf = length_unit_in_metres(p.units) / length_unit_in_metres(to);
    const double kf = std::sqrt(lf);
    out.C = rescale_coefficient(p.C, p.m, lf, 1.0);
    out.delta_k_min = p.delta_k_min * kf;
    out.delta_k_max = p.delta_k_max * kf;
    out.units = to;
    return out;
}

}  // namespace msf::paris
