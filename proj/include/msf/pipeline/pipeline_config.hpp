/**
 * @file pipeline_config.hpp
 * @brief Typed view of a pipeline configuration file.
 *
 * Sections: [run] (seed), [rve], [potential], [loading], [extraction],
 * [fit], optional [paris] (given constants that replace the micro half),
 * and [macro] (plate and propagation settings).
 */
#pragma once

#include "msf/core/config.hpp"
#include "msf/md/lattice.hpp"
#include "msf/md/loading.hpp"
#include "msf/md/potential.hpp"
#include "msf/paris/paris.hpp"
#include "msf/vision/extract.hpp"
#include "msf/xfem/fatigue.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace msf::pipeline {

struct MicroSettings {
    md::RveSpec rve;
    double temperature = 10.0;  ///< K
    md::MorseParameters iron{2.503325, 1.0, 2.5087534843};
    double cutoff = 4.4;
    double carbon_depth_factor = 0.5;
    double carbon_radius_factor = 0.8;
    md::LoadProgram program;
    md::LoadingOptions loading;
    double relax_tolerance = 1e-3;
    int relax_steps = 20000;
    bool write_snapshots = true;

    md::PairPotential potential() const;
};

struct FitSettings {
    paris::UnitSystem units = paris::UnitSystem::MpaSqrtM;
    paris::DeltaKWindow window;
};

struct PipelineConfig {
    KeyValueConfig raw;
    std::uint64_t seed = 1;
    MicroSettings micro;
    FitSettings fit;
    std::optional<paris::ParisConstants> given_constants;
    xfem::MacroModel macro;
    xfem::FatigueOptions fatigue;

    /// Canonical text of the named sections plus the seed; used as a cache key.
    std::string fingerprint(std::initializer_list<const char*> sections) const;
};

/// Throws ConfigError on missing sections or bad values. Relative `plate`
/// paths resolve against `base_dir`.
PipelineConfig load_pipeline_config(const KeyValueConfig& raw, const std::filesystem::path& base_dir = {});
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Directory holding the bundled presets (ci.ini, paper.ini, ...).
std::filesystem::path preset_directory();
std::filesystem::path preset_path(const std::string& name);

}  // namespace msf::pipeline
