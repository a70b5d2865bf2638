/**
 * @file manifest.hpp
 * @brief Record of one pipeline run: stage order, status, digests, timings.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace msf::pipeline {

struct FileDigest {
    std::string path;  ///< relative to the run directory
    std::string sha256;
    friend bool operator==(const FileDigest&, const FileDigest&) = default;
};

enum class StageStatus { Ran, Cached, Supplied, Skipped, Failed, NotRun };

std::string status_name(StageStatus s);
StageStatus parse_status(const std::string& s);

struct StageRecord {
    std::string name;
    StageStatus status = StageStatus::NotRun;
    std::string key;  ///< cache key over config sections and input digests
    std::vector<FileDigest> inputs;
    std::vector<FileDigest> outputs;
    double seconds = 0.0;
    std::string message;
};

struct RunManifest {
    std::string tool_version;
    std::uint64_t seed = 0;
    std::vector<StageRecord> stages;

    const StageRecord* find(const std::string& name) const;
    /// Keys and file digests of every stage, one line each; excludes timings
    /// and status so that a cached rerun compares equal to a fresh one.
    std::string digest_summary() const;
    bool succeeded() const;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

/// Digest of `file`, recorded under its path relative to `root`.
FileDigest digest_file(const std::filesystem::path& root, const std::filesystem::path& file);

}  // namespace msf::pipeline
