/**
 * @file stages.hpp
 * @brief The four pipeline stages as standalone file-to-file steps.
 *
 * Every stage reads its inputs from files written by the previous one and
 * writes its outputs under its own directory, so that any stage can be
 * re-run alone or replaced by a supplied file.
 */
#pragma once

#include "msf/core/error.hpp"
#include "msf/md/loading.hpp"
#include "msf/paris/paris_io.hpp"
#include "msf/pipeline/pipeline_config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace msf::pipeline {

namespace fs = std::filesystem;

/// A stage that could not produce its outputs; `stage` names it.
class StageFailure : public Error {
public:
    StageFailure(std::string stage, const std::string& message)
        : Error("stage '" + stage + "' failed: " + message), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct StageFiles {
    std::vector<fs::path> inputs;
    std::vector<fs::path> outputs;
};

/// "seed=<n>" plus the tool version; written into every artifact.
std::vector<std::string> provenance_lines(const PipelineConfig& cfg);

/// Builds and relaxes the RVE, thermalises it and runs the cyclic program.
/// Writes cycles.csv, frames/frame_NNNN.pgm with frames/index.csv (cycle,
/// file, scale, origin_x, origin_y) and, when enabled, snapshots/*.xyz.
StageFiles run_md_stage(const PipelineConfig& cfg, const fs::path& dir);

struct CrackRow {
    int frame = 0;
    double length = 0.0;  ///< Angstrom
    double tip_x = 0.0;
    double tip_y = 0.0;
    bool valid = false;
};

void write_crack_csv(const fs::path& path, const std::vector<CrackRow>& rows,
                     const std::vector<std::string>& header_comments = {});
std::vector<CrackRow> read_crack_csv(const fs::path& path);

/// Re-measures the crack in each stored frame, one frame in memory at a time.
/// Writes crack.csv and overlays/overlay_NNNN.png.
StageFiles run_extract_stage(const PipelineConfig& cfg, const fs::path& md_dir, const fs::path& dir);

/// Joins per-cycle stresses with the measured lengths. Rows that are invalid
/// in either source, non-finite, or have sigma_min > sigma_max are dropped.
/// Lengths go from Angstrom to the length unit of `units`; stresses from GPa
/// to MPa.
std::vector<paris::CycleSample> merge_samples(const std::vector<md::CycleRecord>& cycles,
                                              const std::vector<CrackRow>& cracks, paris::UnitSystem units);

/// Writes samples.csv, points.csv and paris.json. Throws StageFailure with
/// "no growth points" when fewer than two growth points survive.
StageFiles run_fit_stage(const PipelineConfig& cfg, const fs::path& md_dir, const fs::path& extract_dir,
                         const fs::path& dir);

/// Writes paris.json holding the constants given in the configuration.
StageFiles write_supplied_constants(const PipelineConfig& cfg, const fs::path& dir);

/// Propagates the macro crack. Writes life_curve.csv, crack_path.csv,
/// summary.json and snapshot_<N>.vtk for each requested cycle count.
StageFiles run_xfem_stage(const PipelineConfig& cfg, const fs::path& paris_json, const fs::path& dir);

}  // namespace msf::pipeline
