/**
 * @file paris_io.hpp
 * @brief Cycle-sample CSV input and the Paris-constants JSON document.
 */
#pragma once

#include "msf/paris/paris.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace msf::paris {

/// Columns N, a, sigma_max, sigma_min (by header name when a header row is
/// present, otherwise in that order). '#' lines are skipped.
std::vector<CycleSample> read_samples_csv(const std::filesystem::path& path);
void write_samples_csv(const std::filesystem::path& path, const std::vector<CycleSample>& samples,
                       const std::vector<std::string>& header_comments = {});

void write_points_csv(const std::filesystem::path& path, const std::vector<GrowthPoint>& points,
                      const std::vector<std::string>& header_comments = {});

struct ParisDocument {
    ParisConstants constants;
    std::map<std::string, std::string> metadata;  ///< e.g. seed, source
};

std::string to_json(const ParisDocument& doc);
ParisDocument paris_from_json(const std::string& text);
void write_paris_json(const std::filesystem::path& path, const ParisDocument& doc);
/// Requires m, C and units; diagnostics are optional.
ParisDocument read_paris_json(const std::filesystem::path& path);

}  // namespace msf::paris
