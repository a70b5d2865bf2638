#include "msf/pipeline/manifest.hpp"

#include "msf/core/digest.hpp"
#include "msf/core/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace msf::pipeline {

namespace {

using Json = nlohmann::ordered_json;

Json digests_to_json(const std::vector<FileDigest>& files) {
    Json arr = Json::array();
    for (const auto& f : files) arr.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return arr;
}

std::vector<FileDigest> digests_from_json(const Json& arr) {
    std::vector<FileDigest> out;
    for (const auto& f : arr) out.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
    return out;
}

}  // namespace

std::string status_name(StageStatus s) {
    switch (s) {
        case StageStatus::Ran: return "ran";
        case StageStatus::Cached: return "cached";
        case StageStatus::Supplied: return "supplied";
        case StageStatus::Skipped: return "skipped";
        case StageStatus::Failed: return "failed";
        case StageStatus::NotRun: return "not_run";
    }
    return "not_run";
}

StageStatus parse_status(const std::string& s) {
    for (auto v : {StageStatus::Ran, StageStatus::Cached, StageStatus::Supplied, StageStatus::Skipped, StageStatus::Failed,
                   StageStatus::NotRun}) {
        if (status_name(v) == s) return v;
    }
    throw ConfigError("unknown stage status '" + s + "'");
}

const StageRecord* RunManifest::find(const std::string& name) const {
    for (const auto& s : stages) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::string RunManifest::digest_summary() const {
    std::ostringstream out;
    for (const auto& s : stages) {
        out << s.name << " key " << s.key << '\n';
        for (const auto& f : s.inputs) out << "  in " << f.path << ' ' << f.sha256 << '\n';
        for (const auto& f : s.outputs) out << "  out " << f.path << ' ' << f.sha256 << '\n';
    }
    return out.str();
}

bool RunManifest::succeeded() const {
    for (const auto& s : stages) {
        if (s.status == StageStatus::Failed || s.status == StageStatus::NotRun) return false;
    }
    return !stages.empty();
}

std::string manifest_to_json(const RunManifest& m) {
    Json j;
    j["tool_version"] = m.tool_version;
    j["seed"] = m.seed;
    Json stages = Json::array();
    for (const auto& s : m.stages) {
        Json e;
        e["name"] = s.name;
        e["status"] = status_name(s.status);
        e["key"] = s.key;
        e["inputs"] = digests_to_json(s.inputs);
        e["outputs"] = digests_to_json(s.outputs);
        e["seconds"] = s.seconds;
        if (!s.message.empty()) e["message"] = s.message;
        stages.push_back(std::move(e));
    }
    j["stages"] = std::move(stages);
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
    try {
        const Json j = Json::parse(text);
        RunManifest m;
        m.tool_version = j.at("tool_version").get<std::string>();
        m.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& e : j.at("stages")) {
            StageRecord s;
            s.name = e.at("name").get<std::string>();
            s.status = parse_status(e.at("status").get<std::string>());
            s.key = e.at("key").get<std::string>();
            s.inputs = digests_from_json(e.at("inputs"));
            s.outputs = digests_from_json(e.at("outputs"));
            s.seconds = e.at("seconds").get<double>();
            s.message = e.value("message", "");
            m.stages.push_back(std::move(s));
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << manifest_to_json(m);
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return manifest_from_json(buf.str());
}

FileDigest digest_file(const std::filesystem::path& root, const std::filesystem::path& file) {
    return {std::filesystem::relative(file, root).generic_string(), sha256_file(file)};
}

}  // namespace msf::pipeline
