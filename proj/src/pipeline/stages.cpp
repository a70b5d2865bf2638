#include "msf/pipeline/stages.hpp"

#include "msf/md/integrator.hpp"
#include "msf/md/lattice.hpp"
#include "msf/md/md_io.hpp"
#include "msf/md/virial.hpp"
#include "msf/vision/image_io.hpp"
#include "msf/xfem/xfem_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace msf::pipeline {

namespace {

std::string numbered(const char* stem, int n, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%04d.%s", stem, n, ext);
    return buf;
}

std::string joined(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += (out.empty() ? "" : " ") + l;
    return out;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    return out;
}

std::vector<std::vector<std::string>> read_rows(const fs::path& path, std::size_t columns) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::istringstream s(line);
        std::string cell;
        while (std::getline(s, cell, ',')) f.push_back(cell);
        if (f.size() != columns) throw ConfigError("'" + path.string() + "': malformed row '" + line + "'");
        rows.push_back(std::move(f));
    }
    return rows;
}

struct FrameEntry {
    int cycle;
    std::string file;
    double scale, origin_x, origin_y;
};

std::vector<FrameEntry> read_frame_index(const fs::path& path) {
    std::vector<FrameEntry> out;
    try {
        for (const auto& f : read_rows(path, 5)) {
            out.push_back({std::stoi(f[0]), f[1], std::stod(f[2]), std::stod(f[3]), std::stod(f[4])});
        }
    } catch (const std::logic_error&) {
        throw ConfigError("'" + path.string() + "': unreadable frame index");
    }
    return out;
}

}  // namespace

std::vector<std::string> provenance_lines(const PipelineConfig& cfg) {
    return {"seed=" + std::to_string(cfg.seed), std::string("msfatigue=") + MSF_VERSION};
}

StageFiles run_md_stage(const PipelineConfig& cfg, const fs::path& dir) {
    const MicroSettings& m = cfg.micro;
    fs::create_directories(dir / "frames");
    if (m.write_snapshots) fs::create_directories(dir / "snapshots");

    md::AtomSystem sys;
    try {
        sys = md::build_rve(m.rve);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("[rve]: ") + e.what());
    }
    const md::PairPotential potential = m.potential();
    md::ForceField field(potential);
    md::RelaxOptions relax;
    relax.force_tolerance = m.relax_tolerance;
    relax.max_steps = m.relax_steps;
    md::relax(sys, field, relax);
    sys.reference = sys.positions;
    md::thermalize(sys, m.temperature, cfg.seed);

    const auto prov = provenance_lines(cfg);
    const std::string tag = joined(prov);
    StageFiles files;
    const fs::path index_path = dir / "frames" / "index.csv";
    auto index = open_out(index_path);
    for (const auto& l : prov) index << "# " << l << '\n';
    index << "cycle,file,scale,origin_x,origin_y\n" << std::setprecision(12);

    auto observer = [&](const md::CycleRecord& rec, const md::AtomSystem& frame, const vision::CrackExtraction* ex) {
        if (ex) {
            const std::string name = numbered("frame", rec.cycle, "pgm");
            vision::write_pgm((dir / "frames" / name).string(), ex->raster, tag + " cycle=" + std::to_string(rec.cycle));
            index << rec.cycle << ',' << name << ',' << ex->raster.scale << ',' << ex->raster.origin_x << ','
                  << ex->raster.origin_y << '\n';
            files.outputs.push_back(dir / "frames" / name);
        }
        if (m.write_snapshots) {
            md::AtomSystem copy = frame;
            const auto stress = md::virial_stress(copy, potential);
            std::vector<double> vm(copy.size());
            for (std::size_t i = 0; i < vm.size(); ++i) vm[i] = stress.von_mises_gpa(i);
            const fs::path p = dir / "snapshots" / numbered("snapshot", rec.cycle, "xyz");
            md::write_xyz(p.string(), copy, vm, tag + " cycle=" + std::to_string(rec.cycle));
            files.outputs.push_back(p);
        }
    };
    const auto result = md::run_cyclic_loading(sys, field, m.program, m.loading, observer);
    index.close();

    auto comments = prov;
    comments.push_back(std::string("fractured=") + (result.fractured ? "1" : "0"));
    comments.push_back("md_steps=" + std::to_string(result.steps));
    md::write_cycle_csv((dir / "cycles.csv").string(), result.records, comments);
    files.outputs.insert(files.outputs.begin(), {dir / "cycles.csv", index_path});
    return files;
}

void write_crack_csv(const fs::path& path, const std::vector<CrackRow>& rows,
                     const std::vector<std::string>& header_comments) {
    auto out = open_out(path);
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "frame,crack_len_A,tip_x_A,tip_y_A,valid\n" << std::setprecision(10);
    for (const auto& r : rows) {
        out << r.frame << ',' << r.length << ',' << r.tip_x << ',' << r.tip_y << ',' << (r.valid ? 1 : 0) << '\n';
    }
}

std::vector<CrackRow> read_crack_csv(const fs::path& path) {
    std::vector<CrackRow> out;
    try {
        for (const auto& f : read_rows(path, 5)) {
            out.push_back({std::stoi(f[0]), std::stod(f[1]), std::stod(f[2]), std::stod(f[3]), std::stoi(f[4]) != 0});
        }
    } catch (const std::logic_error&) {
        throw ConfigError("'" + path.string() + "': unreadable crack table");
    }
    return out;
}

StageFiles run_extract_stage(const PipelineConfig& cfg, const fs::path& md_dir, const fs::path& dir) {
    fs::create_directories(dir / "overlays");
    StageFiles files;
    const fs::path index_path = md_dir / "frames" / "index.csv";
    const fs::path cycles_path = md_dir / "cycles.csv";
    files.inputs = {cycles_path, index_path};

    std::map<int, FrameEntry> frames;
    for (auto& f : read_frame_index(index_path)) frames.emplace(f.cycle, f);
    const auto prov = provenance_lines(cfg);
    const std::string tag = joined(prov);

    std::vector<CrackRow> rows;
    for (const auto& rec : md::read_cycle_csv(cycles_path.string())) {
        CrackRow row;
        row.frame = rec.cycle;
        const auto it = frames.find(rec.cycle);
        if (it != frames.end()) {
            const fs::path frame_path = md_dir / "frames" / it->second.file;
            files.inputs.push_back(frame_path);
            vision::ContourRaster raster = vision::read_image(frame_path.string(), it->second.scale);
            raster.origin_x = it->second.origin_x;
            raster.origin_y = it->second.origin_y;
            try {
                const auto ex = vision::extract_from_contour(raster, cfg.micro.rve.lattice_constant,
                                                             cfg.micro.loading.extraction);
                row = {rec.cycle, ex.length, ex.tip_x, ex.tip_y, true};
                const fs::path overlay = dir / "overlays" / numbered("overlay", rec.cycle, "png");
                vision::write_overlay_png(overlay.string(), ex.raster, ex.skeleton,
                                          tag + " cycle=" + std::to_string(rec.cycle));
                files.outputs.push_back(overlay);
            } catch (const InvalidArgument&) {
                row.valid = false;
            } catch (const NumericalError&) {
                row.valid = false;
            }
        }
        rows.push_back(row);
    }
    write_crack_csv(dir / "crack.csv", rows, prov);
    files.outputs.insert(files.outputs.begin(), dir / "crack.csv");
    return files;
}

std::vector<paris::CycleSample> merge_samples(const std::vector<md::CycleRecord>& cycles,
                                              const std::vector<CrackRow>& cracks, paris::UnitSystem units) {
    std::map<int, const CrackRow*> by_frame;
    for (const auto& c : cracks) by_frame[c.frame] = &c;
    const double length_factor = 1e-10 / paris::length_unit_in_metres(units);
    constexpr double kGpaToMpa = 1e3;
    std::vector<paris::CycleSample> out;
    for (const auto& rec : cycles) {
        const auto it = by_frame.find(rec.cycle);
        if (!rec.valid || it == by_frame.end() || !it->second->valid) continue;
        paris::CycleSample s{static_cast<double>(rec.cycle), it->second->length * length_factor,
                             rec.sigma_max_gpa * kGpaToMpa, rec.sigma_min_gpa * kGpaToMpa};
        if (!std::isfinite(s.length) || !std::isfinite(s.sigma_max) || !std::isfinite(s.sigma_min)) continue;
        if (s.length < 0.0 || s.sigma_min > s.sigma_max) continue;
        out.push_back(s);
    }
    return out;
}

StageFiles run_fit_stage(const PipelineConfig& cfg, const fs::path& md_dir, const fs::path& extract_dir,
                         const fs::path& dir) {
    fs::create_directories(dir);
    StageFiles files;
    files.inputs = {md_dir / "cycles.csv", extract_dir / "crack.csv"};
    const auto samples = merge_samples(md::read_cycle_csv(files.inputs[0].string()), read_crack_csv(files.inputs[1]),
                                       cfg.fit.units);
    const auto prov = provenance_lines(cfg);
    auto comments = prov;
    comments.push_back("units=" + paris::units_tag(cfg.fit.units));
    paris::write_samples_csv(dir / "samples.csv", samples, comments);
    files.outputs.push_back(dir / "samples.csv");
    if (samples.size() < 3) {
        throw StageFailure("fit", "no growth points: only " + std::to_string(samples.size()) + " usable cycles");
    }

    paris::ParisConstants constants;
    try {
        const auto points = paris::growth_points(samples, cfg.fit.window);
        paris::write_points_csv(dir / "points.csv", points, comments);
        files.outputs.push_back(dir / "points.csv");
        constants = paris::fit_paris(points, cfg.fit.units);
    } catch (const InvalidArgument& e) {
        throw StageFailure("fit", e.what());
    }
    if (!(constants.m > 0) || !(constants.C > 0)) {
        std::ostringstream msg;
        msg << "fitted constants are not a growth law (m = " << constants.m << ", C = " << constants.C << ")";
        throw StageFailure("fit", msg.str());
    }
    paris::ParisDocument doc{constants, {{"seed", std::to_string(cfg.seed)}, {"source", "md"},
                                         {"samples", std::to_string(samples.size())},
                                         {"msfatigue", MSF_VERSION}}};
    paris::write_paris_json(dir / "paris.json", doc);
    files.outputs.push_back(dir / "paris.json");
    return files;
}

StageFiles write_supplied_constants(const PipelineConfig& cfg, const fs::path& dir) {
    MSF_REQUIRE(cfg.given_constants.has_value(), "no constants supplied in the configuration");
    fs::create_directories(dir);
    paris::ParisDocument doc{*cfg.given_constants,
                             {{"seed", std::to_string(cfg.seed)}, {"source", "config"}, {"msfatigue", MSF_VERSION}}};
    paris::write_paris_json(dir / "paris.json", doc);
    return {{}, {dir / "paris.json"}};
}

StageFiles run_xfem_stage(const PipelineConfig& cfg, const fs::path& paris_json, const fs::path& dir) {
    fs::create_directories(dir);
    StageFiles files;
    files.inputs = {paris_json};
    const auto doc = paris::read_paris_json(paris_json);
    const auto prov = provenance_lines(cfg);
    const std::string tag = joined(prov);

    std::vector<fs::path> snapshots;
    auto observer = [&](double requested, const xfem::FatigueRecord& state, const xfem::EnrichedMesh& em,
                        const xfem::Solution& sol) {
        std::ostringstream name;
        name << "snapshot_" << std::llround(requested) << ".vtk";
        std::ostringstream title;
        title << "msfatigue " << tag << " N=" << std::llround(requested) << " a_mm=" << state.length;
        xfem::write_vtk(dir / name.str(), em, sol, cfg.macro, title.str());
        snapshots.push_back(dir / name.str());
    };
    xfem::FatigueHistory history;
    try {
        history = xfem::run_fatigue(cfg.macro, doc.constants, cfg.fatigue, observer);
    } catch (const NumericalError& e) {
        throw StageFailure("xfem", e.what());
    }

    auto comments = prov;
    std::ostringstream constants;
    constants << std::setprecision(10) << "paris m=" << doc.constants.m << " C=" << doc.constants.C
              << " units=" << paris::units_tag(doc.constants.units);
    comments.push_back(constants.str());
    comments.push_back("stop=" + history.stop_cause);
    xfem::write_life_curve_csv(dir / "life_curve.csv", history, comments);
    xfem::write_crack_path_csv(dir / "crack_path.csv", history.crack, prov);

    nlohmann::ordered_json summary;
    summary["seed"] = cfg.seed;
    summary["life_cycles"] = history.life();
    summary["steps"] = history.records.empty() ? 0 : history.records.back().step;
    summary["final_length_mm"] = history.records.empty() ? 0.0 : history.records.back().length;
    summary["fractured"] = history.fractured;
    summary["stop_cause"] = history.stop_cause;
    summary["m"] = doc.constants.m;
    summary["C"] = doc.constants.C;
    summary["units"] = paris::units_tag(doc.constants.units);
    open_out(dir / "summary.json") << summary.dump(2) << '\n';

    files.outputs = {dir / "life_curve.csv", dir / "crack_path.csv", dir / "summary.json"};
    files.outputs.insert(files.outputs.end(), snapshots.begin(), snapshots.end());
    return files;
}

}  // namespace msf::pipeline
