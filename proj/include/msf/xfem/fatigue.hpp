/**
 * @file fatigue.hpp
 * @brief Fatigue crack propagation with fixed crack increments.
 *
 * Each step solves the plate at the peak load, extracts K_I and K_II,
 * turns the crack by the maximum-hoop-stress angle and advances it by a
 * fixed length da. The cycles spent on that increment are
 * da / (C dK^m), with dK = (1 - R) K_eq.
 */
#pragma once

#include "msf/paris/paris.hpp"
#include "msf/xfem/model.hpp"
#include "msf/xfem/sif.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace msf::xfem {

struct FatigueOptions {
    double crack_increment = 1.0;  ///< mm
    int nx = 60;
    int ny = 121;
    int max_steps = 500;
    /// Stop once a tip is this many element sizes from the plate boundary.
    double boundary_margin = 2.0;
    /// Stop when K_eq at peak load reaches this value (Paris units).
    double toughness = std::numeric_limits<double>::infinity();
    std::vector<double> snapshot_cycles;
    SifOptions sif;
    EnrichmentOptions enrichment;
};

/// Record k > 0 is the state after step k together with the factors (at
/// peak load, in the Paris constants' units) that drove that step; record 0
/// is the initial crack with its own factors.
struct FatigueRecord {
    int step = 0;
    double cycles = 0.0;
    double length = 0.0;  ///< mm; half-length for a center crack
    double delta_k = 0.0;
    double k_i = 0.0;
    double k_ii = 0.0;
    double theta = 0.0;   ///< rad
    double tip_x = 0.0;
    double tip_y = 0.0;
};

struct FatigueHistory {
    std::vector<FatigueRecord> records;
    bool fractured = false;
    std::string stop_cause;  ///< "boundary", "toughness" or "max_steps"
    CrackPolyline crack;

    double life() const { return records.empty() ? 0.0 : records.back().cycles; }
};

/// Called once per requested cycle count with the state whose increment
/// spans it (the requested value lies in [N_k, N_k+1)).
using SnapshotObserver = std::function<void(double requested, const FatigueRecord& state, const EnrichedMesh& em,
                                            const Solution& sol)>;

/// Factor converting K in MPa*sqrt(mm) into the Paris unit system.
double k_to_paris_units(paris::UnitSystem u);
/// Factor converting a length in mm into the Paris unit system.
double mm_to_paris_units(paris::UnitSystem u);

/// Cycles for one increment: da / (C dK^m), both in Paris units. Throws
/// NumericalError if dK <= 0 or the result is not finite.
double cycles_for_increment(const paris::ParisConstants& p, double delta_k, double da);

CrackPolyline initial_crack(const MacroModel& model);

FatigueHistory run_fatigue(const MacroModel& model, const paris::ParisConstants& constants,
                           const FatigueOptions& options = {}, const SnapshotObserver& observer = {});

}  // namespace msf::xfem
