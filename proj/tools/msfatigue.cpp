/**
 * @file msfatigue.cpp
 * @brief Command-line front end: one subcommand per stage plus the full
 *        pipeline and the model comparison.
 *
 * Exit codes: 0 success, 2 configuration error, 3 stage failure.
 */
#include "msf/core/error.hpp"
#include "msf/paris/paris_io.hpp"
#include "msf/pipeline/pipeline.hpp"
#include "msf/vision/extract.hpp"
#include "msf/vision/image_io.hpp"
#include "msf/xfem/xfem_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace fs = std::filesystem;
using namespace msf;

namespace {

constexpr int kConfigError = 2;
constexpr int kStageFailure = 3;

struct ConfigSource {
    std::string config;
    std::string preset;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* app) {
        auto* c = app->add_option("--config", config, "configuration file");
        auto* p = app->add_option("--preset", preset, "bundled preset (ci or paper)");
        c->excludes(p);
        app->add_option("--seed", seed, "override [run] seed");
    }

    fs::path path() const {
        if (!config.empty()) return config;
        if (!preset.empty()) return pipeline::preset_path(preset);
        throw ConfigError("either --config or --preset is required");
    }

    KeyValueConfig raw() const {
        KeyValueConfig r = KeyValueConfig::from_file(path());
        if (seed) r.set("run.seed", std::to_string(*seed));
        return r;
    }

    pipeline::PipelineConfig load() const { return pipeline::load_pipeline_config(raw(), path().parent_path()); }
};

void print_manifest(const pipeline::RunManifest& m) {
    for (const auto& s : m.stages) {
        std::cout << std::left << std::setw(8) << s.name << ' ' << std::setw(9) << pipeline::status_name(s.status)
                  << std::fixed << std::setprecision(2) << s.seconds << " s";
        if (!s.message.empty()) std::cout << "  " << s.message;
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-scale fatigue crack growth: atomistic cycles to macro life"};
    app.set_version_flag("--version", std::string(MSF_VERSION));
    app.require_subcommand(1);

    ConfigSource md_src;
    std::string md_out = "run/md";
    auto* md_cmd = app.add_subcommand("md-run", "cyclic loading of the atomistic cell");
    md_src.attach(md_cmd);
    md_cmd->add_option("--out", md_out, "output directory");

    std::string ex_in, ex_mouth = "left", ex_csv, ex_overlay;
    double ex_scale = 1.0, ex_lattice = 2.85, ex_origin_x = 0.0, ex_origin_y = 0.0;
    int ex_frame = 0;
    bool ex_atomistic = false;
    auto* ex_cmd = app.add_subcommand("extract-crack", "measure the crack in a contour image");
    ex_cmd->add_option("--in", ex_in, "PGM or PNG grayscale image")->required();
    ex_cmd->add_option("--scale", ex_scale, "Angstrom per pixel");
    ex_cmd->add_option("--mouth", ex_mouth, "edge holding the crack mouth (left, right, top, bottom)");
    ex_cmd->add_flag("--atomistic", ex_atomistic, "image is a surface-atom raster from md-run");
    ex_cmd->add_option("--lattice", ex_lattice, "lattice constant for atomistic rasters (Angstrom)");
    ex_cmd->add_option("--origin-x", ex_origin_x, "physical x of the image's left edge");
    ex_cmd->add_option("--origin-y", ex_origin_y, "physical y of the image's bottom edge");
    ex_cmd->add_option("--frame", ex_frame, "frame number for the CSV row");
    ex_cmd->add_option("--csv", ex_csv, "append the row to this CSV");
    ex_cmd->add_option("--overlay", ex_overlay, "skeleton overlay PNG");

    std::string fit_in, fit_units = "mpa_sqrt_m", fit_out = "paris.json", fit_points;
    double fit_trim = 0.1;
    std::optional<double> fit_min, fit_max;
    auto* fit_cmd = app.add_subcommand("fit-paris", "fit growth-law constants to cycle samples");
    fit_cmd->add_option("--in", fit_in, "CSV with columns N, a, sigma_max, sigma_min")->required();
    fit_cmd->add_option("--units", fit_units, "mpa_sqrt_m or mpa_sqrt_mm");
    fit_cmd->add_option("--out", fit_out, "constants document");
    fit_cmd->add_option("--points", fit_points, "also write the (dK, da/dN) points");
    fit_cmd->add_option("--trim", fit_trim, "fraction trimmed at each end of the dK range");
    fit_cmd->add_option("--dk-min", fit_min, "lower dK bound");
    fit_cmd->add_option("--dk-max", fit_max, "upper dK bound");

    std::string xf_model, xf_paris, xf_out = "run/xfem";
    std::optional<double> xf_da;
    std::string xf_snapshots;
    auto* xf_cmd = app.add_subcommand("xfem-run", "macro crack propagation and life");
    xf_cmd->add_option("--model", xf_model, "plate description")->required();
    xf_cmd->add_option("--paris", xf_paris, "constants document")->required();
    xf_cmd->add_option("--da", xf_da, "crack increment per step (mm)");
    xf_cmd->add_option("--snapshots", xf_snapshots, "comma-separated cycle counts");
    xf_cmd->add_option("--out", xf_out, "output directory");

    ConfigSource pl_src;
    std::string pl_out = "run";
    bool pl_no_cache = false;
    auto* pl_cmd = app.add_subcommand("pipeline", "all stages end to end");
    pl_src.attach(pl_cmd);
    pl_cmd->add_option("--out", pl_out, "output directory");
    pl_cmd->add_flag("--no-cache", pl_no_cache, "re-run every stage");

    ConfigSource cmp_src;
    std::string cmp_out = "compare", cmp_models = "A,B,C,D";
    bool cmp_no_cache = false;
    auto* cmp_cmd = app.add_subcommand("compare", "growth-law constants of the four atomistic variants");
    cmp_src.attach(cmp_cmd);
    cmp_cmd->add_option("--out", cmp_out, "output directory");
    cmp_cmd->add_option("--models", cmp_models, "subset of A,B,C,D");
    cmp_cmd->add_flag("--no-cache", cmp_no_cache, "re-run every stage");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*md_cmd) {
            const auto cfg = md_src.load();
            const auto files = pipeline::run_md_stage(cfg, md_out);
            std::cout << "wrote " << files.outputs.size() << " files under " << md_out << '\n';
        } else if (*ex_cmd) {
            vision::ExtractionOptions opt;
            opt.scale = ex_scale;
            opt.mouth = vision::parse_edge(ex_mouth);
            vision::ContourRaster raster = vision::read_image(ex_in, ex_scale);
            raster.origin_x = ex_origin_x;
            raster.origin_y = ex_origin_y;
            const auto ex = ex_atomistic ? vision::extract_from_contour(raster, ex_lattice, opt)
                                         : vision::extract_from_image(raster, opt);
            if (!ex_overlay.empty()) vision::write_overlay_png(ex_overlay, ex.raster, ex.skeleton);
            std::ostringstream row;
            row << std::setprecision(10) << ex_frame << ',' << ex.length << ',' << ex.tip_x << ',' << ex.tip_y;
            if (!ex_csv.empty()) {
                const bool fresh = !fs::exists(ex_csv);
                std::ofstream out(ex_csv, std::ios::app);
                if (!out) throw Error("cannot write '" + ex_csv + "'");
                if (fresh) out << "frame,crack_len_A,tip_x_A,tip_y_A\n";
                out << row.str() << '\n';
            }
            std::cout << "frame,crack_len_A,tip_x_A,tip_y_A\n" << row.str() << '\n';
        } else if (*fit_cmd) {
            const auto units = paris::parse_units(fit_units);
            paris::DeltaKWindow window;
            window.trim_fraction = fit_trim;
            window.min = fit_min;
            window.max = fit_max;
            const auto samples = paris::read_samples_csv(fit_in);
            std::vector<paris::GrowthPoint> points;
            paris::ParisConstants constants;
            try {
                points = paris::growth_points(samples, window);
                constants = paris::fit_paris(points, units);
            } catch (const InvalidArgument& e) {
                throw pipeline::StageFailure("fit", e.what());
            }
            if (!fit_points.empty()) paris::write_points_csv(fit_points, points);
            paris::write_paris_json(fit_out, {constants, {{"source", fit_in}}});
            std::cout << std::setprecision(6) << "m = " << constants.m << "  C = " << constants.C << " ("
                      << paris::units_tag(units) << ")  R^2 = " << constants.r_squared << "  points = "
                      << constants.points << '\n';
        } else if (*xf_cmd) {
            const KeyValueConfig model_file = KeyValueConfig::from_file(xf_model);
            const std::string section = model_file.has_section("macro") ? "macro" : "";
            pipeline::PipelineConfig cfg;
            cfg.macro = xfem::read_macro_model(model_file, section);
            cfg.fatigue = xfem::read_fatigue_options(model_file, section);
            if (xf_da) cfg.fatigue.crack_increment = *xf_da;
            if (!xf_snapshots.empty()) cfg.fatigue.snapshot_cycles = parse_number_list(xf_snapshots);
            pipeline::run_xfem_stage(cfg, xf_paris, xf_out);
            const auto summary = fs::path(xf_out) / "summary.json";
            std::ifstream in(summary);
            std::cout << in.rdbuf();
        } else if (*pl_cmd) {
            const auto cfg = pl_src.load();
            pipeline::PipelineOptions opt;
            opt.outdir = pl_out;
            opt.use_cache = !pl_no_cache;
            try {
                print_manifest(pipeline::run_pipeline(cfg, opt));
            } catch (const pipeline::StageFailure&) {
                print_manifest(pipeline::read_manifest(fs::path(pl_out) / "manifest.json"));
                throw;
            }
        } else if (*cmp_cmd) {
            std::vector<pipeline::ModelVariant> chosen;
            for (const auto& v : pipeline::table_variants()) {
                if (("," + cmp_models + ",").find("," + v.model + ",") != std::string::npos) chosen.push_back(v);
            }
            if (chosen.empty()) throw ConfigError("--models selects no variant");
            const auto rows = pipeline::compare_models(cmp_src.raw(), cmp_src.path().parent_path(), chosen, cmp_out,
                                                       !cmp_no_cache);
            fs::create_directories(cmp_out);
            pipeline::write_compare_table(fs::path(cmp_out) / "paris_table.csv", rows,
                                          {"seed=" + std::to_string(cmp_src.load().seed)});
            bool all_ok = true;
            for (const auto& r : rows) {
                std::cout << r.model << "  " << std::setw(6) << r.crack_type << "  ";
                if (r.ok) {
                    std::cout << std::setprecision(5) << "m = " << r.m << "  C = " << r.C << "  R^2 = " << r.r_squared;
                } else {
                    std::cout << "failed: " << r.message;
                    all_ok = false;
                }
                std::cout << '\n';
            }
            return all_ok ? 0 : kStageFailure;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const pipeline::StageFailure& e) {
        std::cerr << e.what() << '\n';
        return kStageFailure;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return kStageFailure;
    }
    return 0;
}
