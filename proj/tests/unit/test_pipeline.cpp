/**
 * @file test_pipeline.cpp
 * @brief Run configuration, manifest, stage caching, failure handling and
 *        the command-line exit codes.
 */
#include "msf/core/error.hpp"
#include "msf/paris/paris_io.hpp"
#include "msf/pipeline/pipeline.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace msf;
using namespace msf::pipeline;
namespace fs = std::filesystem;

namespace {

fs::path config_dir() { return MSF_TEST_CONFIG_DIR; }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("msf_pipeline_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const fs::path& path, const std::string& text) {
    std::ofstream(path) << text;
    return path;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Supplied constants and a coarse plate, so that only the macro stage runs.
std::string constants_config(int seed = 1, double da = 4.0) {
    std::ostringstream s;
    s << "[run]\nseed = " << seed << "\n[paris]\nm = 2.9041\nC = 1.4299e-11\nunits = mpa_sqrt_m\n"
      << "[macro]\nplate = " << (config_dir() / "plate.ini").string() << "\nnx = 30\nny = 61\nda = " << da
      << "\nsnapshots = 20000\n";
    return s.str();
}

/// Atomistic cell held at zero strain: the crack cannot grow.
std::string null_loading_config() {
    return "[run]\nseed = 2\n"
           "[rve]\nbox = 80, 80, 8.55\ncrack_length = 36\ncrack_type = blunt\ntemperature = 10\n"
           "[potential]\n"
           "[loading]\npeaks = 0, 0, 0, 0\nload_ratio = 0.5\nstrain_rate = 1e10\n"
           "[extraction]\n[fit]\nunits = mpa_sqrt_m\n"
           "[macro]\nplate = " +
           (config_dir() / "plate.ini").string() + "\n";
}

PipelineConfig load(const std::string& text) {
    return load_pipeline_config(KeyValueConfig::from_string(text), config_dir());
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(MSF_TEST_TOOL) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

StageStatus status_of(const RunManifest& m, const std::string& stage) {
    const auto* s = m.find(stage);
    return s ? s->status : StageStatus::NotRun;
}

}  // namespace

TEST(PipelineConfig, RejectsBadConfigurations) {
    EXPECT_THROW(load("[run]\nseed = 1\n"), ConfigError);
    EXPECT_THROW(load(null_loading_config() + "[rve]\ncrack_type = zigzag\n"), ConfigError);
    EXPECT_THROW(load("[run]\nseed = 1\n[paris]\nm = 2\nC = -1\nunits = mpa_sqrt_m\n[macro]\nplate = plate.ini\n"),
                 ConfigError);
    EXPECT_THROW(load("[run]\nseed = 1\n[paris]\nm = 2\nC = 1e-11\nunits = furlongs\n[macro]\nplate = plate.ini\n"),
                 ConfigError);
    EXPECT_THROW(load(constants_config() + "[macro]\nplate = missing.ini\n"), ConfigError);
    EXPECT_THROW(preset_path("no-such-preset"), ConfigError);
}

TEST(PipelineConfig, PresetsLoad) {
    for (const std::string name : {"ci", "paper"}) {
        const auto path = preset_path(name);
        const auto cfg = load_pipeline_config(path);
        EXPECT_FALSE(cfg.given_constants.has_value());
        EXPECT_GT(cfg.micro.program.cycles(), 0);
        EXPECT_DOUBLE_EQ(cfg.macro.width, 60.0);
    }
    const auto a = load_pipeline_config(config_dir() / "model_a.ini");
    ASSERT_TRUE(a.given_constants.has_value());
    EXPECT_DOUBLE_EQ(a.given_constants->m, 2.9041);
}

TEST(PipelineConfig, FingerprintTracksSectionsAndSeed) {
    const auto a = load(constants_config(1));
    const auto b = load(constants_config(2));
    const auto c = load(constants_config(1, 3.0));
    EXPECT_EQ(a.fingerprint({"macro"}), load(constants_config(1)).fingerprint({"macro"}));
    EXPECT_NE(a.fingerprint({"macro"}), b.fingerprint({"macro"}));
    EXPECT_NE(a.fingerprint({"macro"}), c.fingerprint({"macro"}));
    EXPECT_EQ(a.fingerprint({"fit"}), c.fingerprint({"fit"}));
}

TEST(Manifest, JsonRoundTripAndSummary) {
    RunManifest m;
    m.tool_version = "0.1.0";
    m.seed = 42;
    StageRecord r;
    r.name = "xfem";
    r.status = StageStatus::Ran;
    r.key = "abc";
    r.inputs = {{"fit/paris.json", "11"}};
    r.outputs = {{"xfem/life_curve.csv", "22"}};
    r.seconds = 1.5;
    r.message = "ok";
    m.stages.push_back(r);
    const auto back = manifest_from_json(manifest_to_json(m));
    EXPECT_EQ(back.seed, 42u);
    ASSERT_EQ(back.stages.size(), 1u);
    EXPECT_EQ(back.stages[0].outputs, r.outputs);
    EXPECT_EQ(back.stages[0].status, StageStatus::Ran);
    EXPECT_EQ(back.digest_summary(), m.digest_summary());
    auto cached = m;
    cached.stages[0].status = StageStatus::Cached;
    cached.stages[0].seconds = 0.0;
    EXPECT_EQ(cached.digest_summary(), m.digest_summary());
    cached.stages[0].outputs[0].sha256 = "23";
    EXPECT_NE(cached.digest_summary(), m.digest_summary());
    for (auto s : {StageStatus::Ran, StageStatus::Cached, StageStatus::Supplied, StageStatus::Skipped,
                   StageStatus::Failed, StageStatus::NotRun})
        EXPECT_EQ(parse_status(status_name(s)), s);
}

TEST(MergeSamples, ConvertsUnitsAndDropsBadRows) {
    std::vector<md::CycleRecord> cycles(4);
    std::vector<CrackRow> cracks(4);
    for (int k = 0; k < 4; ++k) {
        cycles[k].cycle = k + 1;
        cycles[k].sigma_max_gpa = 2.0;
        cycles[k].sigma_min_gpa = 1.0;
        cracks[k] = {k + 1, 40.0 + k, 40.0 + k, 50.0, true};
    }
    cycles[1].valid = false;
    cracks[2].valid = false;
    cycles[3].sigma_min_gpa = 3.0;
    const auto s = merge_samples(cycles, cracks, paris::UnitSystem::MpaSqrtM);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_DOUBLE_EQ(s[0].length, 40e-10);
    EXPECT_DOUBLE_EQ(s[0].sigma_max, 2000.0);
    EXPECT_DOUBLE_EQ(s[0].sigma_min, 1000.0);
    EXPECT_DOUBLE_EQ(merge_samples(cycles, cracks, paris::UnitSystem::MpaSqrtMm)[0].length, 40e-7);
}

TEST(Pipeline, SuppliedConstantsRunMacroAndCache) {
    const auto dir = scratch("supplied");
    const auto cfg = load(constants_config());
    PipelineOptions opt;
    opt.outdir = dir / "run";
    const auto first = run_pipeline(cfg, opt);
    EXPECT_TRUE(first.succeeded());
    EXPECT_EQ(status_of(first, "md"), StageStatus::Skipped);
    EXPECT_EQ(status_of(first, "extract"), StageStatus::Skipped);
    EXPECT_EQ(status_of(first, "fit"), StageStatus::Supplied);
    EXPECT_EQ(status_of(first, "xfem"), StageStatus::Ran);
    const auto life = opt.outdir / "xfem" / "life_curve.csv";
    ASSERT_TRUE(fs::exists(life));
    EXPECT_TRUE(fs::exists(opt.outdir / "manifest.json"));
    EXPECT_NE(read_text(life).find("# seed=1"), std::string::npos);

    const auto second = run_pipeline(cfg, opt);
    EXPECT_EQ(status_of(second, "xfem"), StageStatus::Cached);
    EXPECT_EQ(second.digest_summary(), first.digest_summary());

    write_text(life, "tampered\n");
    const auto third = run_pipeline(cfg, opt);
    EXPECT_EQ(status_of(third, "xfem"), StageStatus::Ran);
    EXPECT_EQ(third.digest_summary(), first.digest_summary());

    const auto changed = run_pipeline(load(constants_config(1, 3.0)), opt);
    EXPECT_EQ(status_of(changed, "xfem"), StageStatus::Ran);
    EXPECT_NE(changed.digest_summary(), first.digest_summary());

    opt.use_cache = false;
    const auto forced = run_pipeline(load(constants_config(1, 3.0)), opt);
    EXPECT_EQ(status_of(forced, "xfem"), StageStatus::Ran);
}

TEST(Pipeline, SeparateRunsAreByteIdentical) {
    const auto dir = scratch("repeat");
    const auto cfg = load(constants_config(7));
    PipelineOptions a, b;
    a.outdir = dir / "a";
    b.outdir = dir / "b";
    const auto ma = run_pipeline(cfg, a);
    const auto mb = run_pipeline(cfg, b);
    EXPECT_EQ(ma.digest_summary(), mb.digest_summary());
    EXPECT_EQ(read_text(a.outdir / "xfem" / "life_curve.csv"), read_text(b.outdir / "xfem" / "life_curve.csv"));
}

TEST(Pipeline, NullLoadingHaltsAtFit) {
    const auto dir = scratch("null");
    PipelineOptions opt;
    opt.outdir = dir / "run";
    try {
        run_pipeline(load(null_loading_config()), opt);
        FAIL() << "pipeline should stop at the fit";
    } catch (const StageFailure& e) {
        EXPECT_EQ(e.stage(), "fit");
        EXPECT_NE(std::string(e.what()).find("no growth points"), std::string::npos);
    }
    const auto m = read_manifest(opt.outdir / "manifest.json");
    EXPECT_FALSE(m.succeeded());
    EXPECT_EQ(status_of(m, "md"), StageStatus::Ran);
    EXPECT_EQ(status_of(m, "extract"), StageStatus::Ran);
    EXPECT_EQ(status_of(m, "fit"), StageStatus::Failed);
    EXPECT_EQ(status_of(m, "xfem"), StageStatus::NotRun);
    EXPECT_TRUE(fs::exists(opt.outdir / "md" / "cycles.csv"));
    EXPECT_TRUE(fs::exists(opt.outdir / "md" / "frames" / "frame_0004.pgm"));
    EXPECT_TRUE(fs::exists(opt.outdir / "extract" / "crack.csv"));

    const auto rows = read_crack_csv(opt.outdir / "extract" / "crack.csv");
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.valid);
        EXPECT_NEAR(r.length, rows[0].length, 2.0);
    }
    const auto samples = paris::read_samples_csv(opt.outdir / "fit" / "samples.csv");
    for (const auto& s : samples) EXPECT_NEAR(s.sigma_max, 0.0, 1e-9);

    const int code = run_tool("pipeline --config " +
                              write_text(dir / "null.ini", null_loading_config()).string() + " --out " +
                              (dir / "cli").string());
    EXPECT_EQ(code, 3);
}

TEST(Compare, FailingVariantIsReportedPerRow) {
    const auto dir = scratch("compare");
    const auto base = KeyValueConfig::from_string(null_loading_config());
    std::vector<ModelVariant> variants = {table_variants()[0]};
    variants.push_back({"X", "broken", "blunt", {{"rve.crack_type", "zigzag"}}});
    const auto rows = compare_models(base, config_dir(), variants, dir / "out");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_FALSE(rows[0].ok);
    EXPECT_NE(rows[0].message.find("no growth points"), std::string::npos);
    EXPECT_FALSE(rows[1].ok);
    EXPECT_NE(rows[1].message.find("zigzag"), std::string::npos);
    write_compare_table(dir / "table.csv", rows, {"seed=2"});
    const auto text = read_text(dir / "table.csv");
    EXPECT_NE(text.find("A,Pure iron,blunt"), std::string::npos);
    EXPECT_NE(text.find("X,broken,blunt"), std::string::npos);
}

TEST(Compare, TableVariants) {
    const auto v = table_variants();
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[0].model, "A");
    EXPECT_EQ(v[0].crack_type, "blunt");
    EXPECT_EQ(v[1].crack_type, "sharp");
    EXPECT_EQ(v[2].material, v[3].material);
    EXPECT_NE(v[0].material, v[2].material);
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch("cli");
    EXPECT_EQ(run_tool("--help"), 0);
    EXPECT_EQ(run_tool("--version"), 0);
    EXPECT_EQ(run_tool(""), 2);
    EXPECT_EQ(run_tool("pipeline --config /nonexistent.ini"), 2);
    EXPECT_EQ(run_tool("pipeline --preset nope"), 2);
    EXPECT_EQ(run_tool("fit-paris --units mpa_sqrt_m"), 2);
    const auto bad = write_text(dir / "bad.ini", "[run]\nseed = 1\n[rve]\nbox = 80, 80\n");
    EXPECT_EQ(run_tool("pipeline --config " + bad.string() + " --out " + (dir / "bad").string()), 2);
    const auto good = write_text(dir / "good.ini", constants_config());
    EXPECT_EQ(run_tool("pipeline --config " + good.string() + " --out " + (dir / "good").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "good" / "xfem" / "life_curve.csv"));
}

TEST(Cli, StandaloneStages) {
    const auto dir = scratch("standalone");
    std::ofstream samples(dir / "samples.csv");
    samples << "N,a,sigma_max,sigma_min\n";
    double a = 0.001;
    for (int k = 0; k < 12; ++k) {
        samples << k * 1000 << ',' << a << ",100,0\n";
        const double dk = 100.0 * std::sqrt(3.14159265358979 * a);
        a += 1000 * 1e-11 * std::pow(dk, 3.0);
    }
    samples.close();
    const auto out = dir / "paris.json";
    EXPECT_EQ(run_tool("fit-paris --in " + (dir / "samples.csv").string() + " --out " + out.string() + " --trim 0"),
              0);
    const auto doc = paris::read_paris_json(out);
    EXPECT_NEAR(doc.constants.m, 3.0, 0.05);

    const auto plate = config_dir() / "plate.ini";
    EXPECT_EQ(run_tool("xfem-run --model " + plate.string() + " --paris " + out.string() +
                       " --da 5 --snapshots 100 --out " + (dir / "xfem").string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "xfem" / "summary.json"));
    EXPECT_EQ(run_tool("xfem-run --model " + plate.string() + " --paris " + (dir / "none.json").string() +
                       " --out " + (dir / "none").string()),
              2);

    std::ofstream pgm(dir / "strip.pgm");
    pgm << "P2\n120 30\n255\n";
    for (int y = 0; y < 30; ++y) {
        for (int x = 0; x < 120; ++x) pgm << ((y >= 12 && y < 19 && x < 100) ? 255 : 0) << ' ';
        pgm << '\n';
    }
    pgm.close();
    EXPECT_EQ(run_tool("extract-crack --in " + (dir / "strip.pgm").string() + " --csv " + (dir / "crack.csv").string() +
                       " --overlay " + (dir / "overlay.png").string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "overlay.png"));
    const auto rows = read_text(dir / "crack.csv");
    EXPECT_NE(rows.find("frame,crack_len_A"), std::string::npos);
}
