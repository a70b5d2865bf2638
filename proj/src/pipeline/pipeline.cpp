#include "msf/pipeline/pipeline.hpp"

#include "msf/core/digest.hpp"
#include "msf/core/error.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace msf::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

std::string stage_key(const PipelineConfig& cfg, const std::string& name, std::initializer_list<const char*> sections,
                      const std::vector<const StageRecord*>& upstream) {
    std::ostringstream text;
    text << "msfatigue " << MSF_VERSION << "\nstage " << name << '\n' << cfg.fingerprint(sections);
    for (const auto* u : upstream) {
        for (const auto& f : u->outputs) text << u->name << '/' << f.path << ' ' << f.sha256 << '\n';
    }
    return sha256_hex(text.str());
}

bool cache_valid(const fs::path& root, const fs::path& dir, const std::string& key, StageRecord& record) {
    const fs::path stamp = dir / "stage.json";
    if (!fs::exists(stamp)) return false;
    try {
        const RunManifest saved = read_manifest(stamp);
        if (saved.stages.size() != 1 || saved.stages[0].key != key) return false;
        for (const auto& f : saved.stages[0].outputs) {
            const fs::path p = root / f.path;
            if (!fs::exists(p) || sha256_file(p) != f.sha256) return false;
        }
        record.inputs = saved.stages[0].inputs;
        record.outputs = saved.stages[0].outputs;
        return true;
    } catch (const Error&) {
        return false;
    }
}

class StageRunner {
public:
    StageRunner(const PipelineConfig& cfg, const PipelineOptions& options) : cfg_(cfg), options_(options) {
        manifest_.tool_version = MSF_VERSION;
        manifest_.seed = cfg.seed;
    }

    const StageRecord& run(const std::string& name, std::initializer_list<const char*> sections,
                           const std::vector<std::string>& upstream, const std::function<StageFiles(const fs::path&)>& body,
                           StageStatus done = StageStatus::Ran) {
        std::vector<const StageRecord*> ups;
        for (const auto& u : upstream) ups.push_back(manifest_.find(u));
        StageRecord record;
        record.name = name;
        record.key = stage_key(cfg_, name, sections, ups);
        const fs::path dir = options_.outdir / name;
        const auto t0 = Clock::now();
        if (options_.use_cache && cache_valid(options_.outdir, dir, record.key, record)) {
            record.status = StageStatus::Cached;
        } else {
            fs::remove_all(dir);
            fs::create_directories(dir);
            try {
                const StageFiles files = body(dir);
                for (const auto& f : files.inputs) record.inputs.push_back(digest_file(options_.outdir, f));
                for (const auto& f : files.outputs) record.outputs.push_back(digest_file(options_.outdir, f));
                record.status = done;
            } catch (const ConfigError&) {
                throw;
            } catch (const StageFailure& e) {
                fail(record, e.what(), t0);
                throw;
            } catch (const Error& e) {
                fail(record, e.what(), t0);
                throw StageFailure(name, e.what());
            }
            RunManifest stamp;
            stamp.tool_version = manifest_.tool_version;
            stamp.seed = manifest_.seed;
            stamp.stages.push_back(record);
            write_manifest(dir / "stage.json", stamp);
        }
        record.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        manifest_.stages.push_back(record);
        return manifest_.stages.back();
    }

    void skip(const std::string& name, StageStatus status, const std::string& message) {
        StageRecord record;
        record.name = name;
        record.status = status;
        record.message = message;
        manifest_.stages.push_back(record);
    }

    RunManifest finish() {
        write_manifest(options_.outdir / "manifest.json", manifest_);
        return manifest_;
    }

private:
    void fail(StageRecord& record, const std::string& message, Clock::time_point t0) {
        record.status = StageStatus::Failed;
        record.message = message;
        record.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        manifest_.stages.push_back(record);
        write_manifest(options_.outdir / "manifest.json", manifest_);
    }

    const PipelineConfig& cfg_;
    const PipelineOptions& options_;
    RunManifest manifest_;
};

}  // namespace

RunManifest run_pipeline(const PipelineConfig& cfg, const PipelineOptions& options) {
    fs::create_directories(options.outdir);
    StageRunner runner(cfg, options);
    const fs::path root = options.outdir;

    if (cfg.given_constants && !options.micro_only) {
        runner.skip("md", StageStatus::Skipped, "constants supplied");
        runner.skip("extract", StageStatus::Skipped, "constants supplied");
        runner.run("fit", {"paris"}, {}, [&](const fs::path& dir) { return write_supplied_constants(cfg, dir); },
                   StageStatus::Supplied);
    } else {
        runner.run("md", {"rve", "potential", "loading", "extraction"}, {},
                   [&](const fs::path& dir) { return run_md_stage(cfg, dir); });
        runner.run("extract", {"rve", "extraction"}, {"md"},
                   [&](const fs::path& dir) { return run_extract_stage(cfg, root / "md", dir); });
        runner.run("fit", {"fit"}, {"md", "extract"},
                   [&](const fs::path& dir) { return run_fit_stage(cfg, root / "md", root / "extract", dir); });
    }
    if (!options.micro_only) {
        runner.run("xfem", {"macro"}, {"fit"},
                   [&](const fs::path& dir) { return run_xfem_stage(cfg, root / "fit" / "paris.json", dir); });
    }
    return runner.finish();
}

std::vector<ModelVariant> table_variants() {
    const std::map<std::string, std::string> pure{{"rve.carbon_fraction", "0"}, {"rve.vacancy_fraction", "0"}};
    const std::map<std::string, std::string> defected{{"rve.carbon_fraction", "0.002"},
                                                      {"rve.vacancy_fraction", "0.005"}};
    auto with = [](std::map<std::string, std::string> base, const char* type) {
        base["rve.crack_type"] = type;
        return base;
    };
    return {{"A", "Pure iron", "blunt", with(pure, "blunt")},
            {"B", "Pure iron", "sharp", with(pure, "sharp")},
            {"C", "Iron with 0.2% carbon and 0.5% vacancies", "blunt", with(defected, "blunt")},
            {"D", "Iron with 0.2% carbon and 0.5% vacancies", "sharp", with(defected, "sharp")}};
}

std::vector<CompareRow> compare_models(const KeyValueConfig& base, const fs::path& base_dir,
                                       const std::vector<ModelVariant>& variants, const fs::path& outdir,
                                       bool use_cache) {
    std::vector<CompareRow> rows;
    for (const auto& v : variants) {
        CompareRow row;
        row.model = v.model;
        row.material = v.material;
        row.crack_type = v.crack_type;
        try {
            KeyValueConfig raw = base;
            for (const auto& [k, value] : v.overrides) raw.set(k, value);
            const PipelineConfig cfg = load_pipeline_config(raw, base_dir);
            PipelineOptions opt;
            opt.outdir = outdir / v.model;
            opt.use_cache = use_cache;
            opt.micro_only = true;
            run_pipeline(cfg, opt);
            const auto doc = paris::read_paris_json(opt.outdir / "fit" / "paris.json");
            row.ok = true;
            row.m = doc.constants.m;
            row.C = doc.constants.C;
            row.r_squared = doc.constants.r_squared;
            row.points = doc.constants.points;
        } catch (const Error& e) {
            row.message = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

void write_compare_table(const fs::path& path, const std::vector<CompareRow>& rows,
                         const std::vector<std::string>& header_comments) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "model,material,crack_type,m,C,r_squared,points,status,message\n" << std::setprecision(8);
    for (const auto& r : rows) {
        std::string msg = r.message;
        for (char& ch : msg) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        out << r.model << ',' << r.material << ',' << r.crack_type << ',';
        if (r.ok) {
            out << r.m << ',' << r.C << ',' << r.r_squared << ',' << r.points;
        } else {
            out << ",,,";
        }
        out << ',' << (r.ok ? "ok" : "failed") << ',' << msg << '\n';
    }
}

}  // namespace msf::pipeline
