/**
 * @file pipeline.hpp
 * @brief End-to-end run (atomistic cycles, crack measurement, growth-law fit,
 *        macro life) with digest-keyed stage caching, and the model comparison.
 *
 * Artifacts live under <outdir>/<stage>/ with stage names md, extract, fit
 * and xfem; <outdir>/manifest.json records the run. A stage is reused when
 * its stage.json holds the same key (configuration sections, seed, tool
 * version and upstream output digests) and every recorded output still has
 * its recorded digest.
 */
#pragma once

#include "msf/pipeline/manifest.hpp"
#include "msf/pipeline/pipeline_config.hpp"
#include "msf/pipeline/stages.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace msf::pipeline {

struct PipelineOptions {
    std::filesystem::path outdir = "run";
    bool use_cache = true;
    /// Stop after the fit (used by the model comparison).
    bool micro_only = false;
};

/// Runs the stages in order and writes the manifest. Given constants in the
/// configuration replace the three micro stages. Throws StageFailure naming
/// the failing stage (the manifest is written first) and ConfigError for bad
/// configurations.
RunManifest run_pipeline(const PipelineConfig& config, const PipelineOptions& options);

struct ModelVariant {
    std::string model;
    std::string material;
    std::string crack_type;
    /// Dotted keys set on the base configuration.
    std::map<std::string, std::string> overrides;
};

/// The four comparison variants: pure or defected (0.2% carbon, 0.5% vacancies)
/// iron, each with a blunt and a sharp crack.
std::vector<ModelVariant> table_variants();

struct CompareRow {
    std::string model;
    std::string material;
    std::string crack_type;
    bool ok = false;
    double m = 0.0;
    double C = 0.0;
    double r_squared = 0.0;
    int points = 0;
    std::string message;
};

/// Runs the micro half for each variant under <outdir>/<model>/. A failing
/// variant is reported in its row; the others still run.
std::vector<CompareRow> compare_models(const KeyValueConfig& base, const std::filesystem::path& base_dir,
                                       const std::vector<ModelVariant>& variants,
                                       const std::filesystem::path& outdir, bool use_cache = true);

/// model, material, crack_type, m, C, r_squared, points, status, message.
void write_compare_table(const std::filesystem::path& path, const std::vector<CompareRow>& rows,
                         const std::vector<std::string>& header_comments = {});

}  // namespace msf::pipeline
