/**
 * @file loading.hpp
 * @brief Strain-controlled cyclic loading of the RVE with per-cycle crack
 *        measurement and crack-tip stress sampling.
 *
 * Each cycle ramps the slab strain from the previous valley to the cycle's
 * peak and back down to R times that peak, at a constant strain rate. The top
 * and bottom slabs move by +/- strain * L_y / 2, with L_y the initial box
 * height. At the peak the crack is extracted from the frame and the mean
 * sigma_yy ahead of the tip is recorded; at the valley the stress is sampled
 * again at the same tip.
 */
#pragma once

#include "msf/md/atom_system.hpp"
#include "msf/md/forces.hpp"
#include "msf/vision/extract.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace msf::md {

struct LoadProgram {
    double strain_rate = 1e9;  ///< 1/s
    double load_ratio = 0.5;
    std::vector<double> peak_strains;
    double timestep = 0.001;  ///< ps

    int cycles() const { return static_cast<int>(peak_strains.size()); }
    double peak(int cycle) const { return peak_strains.at(cycle); }
    double valley(int cycle) const { return load_ratio * peak_strains.at(cycle); }
    /// Throws InvalidArgument unless the rate and timestep are positive,
    /// R lies in [0, 1), peaks are non-negative and non-decreasing.
    void validate() const;

    /// Peaks first, first + step, ... for `count` cycles.
    static LoadProgram increasing(double first_peak, double step, int count, double strain_rate = 1e9,
                                  double load_ratio = 0.5, double timestep = 0.001);
};

/// Strain-rate conversion: 1/s to 1/ps.
inline constexpr double kPerSecondToPerPicosecond = 1e-12;

struct TipSampling {
    double radius = 10.0;  ///< Angstrom, half-disc ahead of the tip
    /// Report stress relative to each atom's sigma_yy before the first cycle,
    /// removing the residual surface stress of the relaxed cell.
    bool relative_to_start = true;
};

struct CycleRecord {
    int cycle = 0;  ///< 1-based
    double peak_strain = 0.0;
    double min_strain = 0.0;
    double sigma_max_gpa = 0.0;  ///< tip-region sigma_yy at the peak
    double sigma_min_gpa = 0.0;  ///< same region at the valley
    double crack_length = 0.0;   ///< Angstrom, at the peak
    double tip_x = 0.0;
    double tip_y = 0.0;
    int sampled_atoms = 0;
    bool valid = true;  ///< false when extraction failed for this frame
    std::optional<vision::ContourRaster> raster;
};

struct LoadingOptions {
    int emit_every = 1;
    bool keep_rasters = false;
    vision::ExtractionOptions extraction;
    TipSampling sampling;
    /// Stop once the crack tip is this close (Angstrom) to the far edge.
    double fracture_margin = 10.0;
};

/// Called at each emission with the frame at the cycle's peak.
using EmissionObserver = std::function<void(const CycleRecord&, const AtomSystem&, const vision::CrackExtraction*)>;

struct LoadingResult {
    std::vector<CycleRecord> records;
    bool fractured = false;
    long long steps = 0;
};

/// Mean virial sigma_yy (GPa) over mobile non-surface atoms within the
/// half-disc of `radius` ahead of (tip, direction). NaN when no atom qualifies.
/// A non-empty `reference` (GPa per atom) is subtracted atom by atom.
double tip_stress(AtomSystem& sys, ForceField& field, double tip_x, double tip_y, double dir_x, double dir_y,
                  const std::vector<bool>& surface, double radius, int* count = nullptr,
                  const std::vector<double>& reference = {});

/// Runs the program on a relaxed system. Throws NumericalError on blow-up.
LoadingResult run_cyclic_loading(AtomSystem& sys, ForceField& field, const LoadProgram& program,
                                 const LoadingOptions& options = {}, const EmissionObserver& observer = {});

}  // namespace msf::md
