#include "msf/pipeline/pipeline_config.hpp"

#include "msf/core/error.hpp"
#include "msf/paris/paris_io.hpp"
#include "msf/xfem/xfem_io.hpp"

#include <cstdlib>
#include <sstream>

#ifndef MSF_PRESET_DIR
#define MSF_PRESET_DIR "configs"
#endif

namespace msf::pipeline {

md::PairPotential MicroSettings::potential() const {
    return md::PairPotential(iron, cutoff, carbon_depth_factor, carbon_radius_factor);
}

std::string PipelineConfig::fingerprint(std::initializer_list<const char*> sections) const {
    std::ostringstream out;
    out << "seed=" << seed << '\n';
    for (const char* s : sections) out << '[' << s << "]\n" << raw.canonical_section(s);
    return out.str();
}

namespace {

md::CrackType parse_crack_type(const std::string& s) {
    if (s == "blunt") return md::CrackType::Blunt;
    if (s == "sharp") return md::CrackType::Sharp;
    if (s == "none") return md::CrackType::None;
    throw ConfigError("unknown crack type '" + s + "' (expected blunt, sharp or none)");
}

void require_section(const KeyValueConfig& c, const char* name) {
    if (!c.has_section(name)) throw ConfigError(std::string("config lacks section [") + name + "]");
}

}  // namespace

PipelineConfig load_pipeline_config(const KeyValueConfig& raw, const std::filesystem::path& base_dir) {
    PipelineConfig cfg;
    cfg.raw = raw;
    const KeyValueConfig& c = raw;
    cfg.seed = static_cast<std::uint64_t>(c.get_int("run.seed", 1));

    cfg.given_constants.reset();
    if (c.has("paris.file")) {
        std::filesystem::path file = c.get_string("paris.file");
        if (file.is_relative()) file = base_dir / file;
        cfg.given_constants = paris::read_paris_json(file).constants;
        cfg.raw.set("paris.file_text", paris::to_json(paris::read_paris_json(file)));
    } else if (c.has_section("paris")) {
        paris::ParisConstants p;
        p.m = c.get_double("paris.m");
        p.C = c.get_double("paris.C");
        p.units = paris::parse_units(c.get_string("paris.units", "mpa_sqrt_m"));
        if (!(p.m > 0) || !(p.C > 0)) throw ConfigError("[paris] constants must be positive");
        p.points = 0;
        cfg.given_constants = p;
    } else {
        for (const char* s : {"rve", "loading"}) require_section(c, s);
    }
    require_section(c, "macro");

    auto& m = cfg.micro;
    auto& r = m.rve;
    const auto box = c.get_list("rve.box", {r.box.x, r.box.y, r.box.z});
    if (box.size() != 3) throw ConfigError("rve.box needs three lengths");
    r.box = {box[0], box[1], box[2]};
    r.lattice_constant = c.get_double("rve.lattice_constant", r.lattice_constant);
    r.carbon_fraction = c.get_double("rve.carbon_fraction", r.carbon_fraction);
    r.vacancy_fraction = c.get_double("rve.vacancy_fraction", r.vacancy_fraction);
    r.interstitial_share = c.get_double("rve.interstitial_share", r.interstitial_share);
    r.crack.length = c.get_double("rve.crack_length", 40.0);
    r.crack.type = parse_crack_type(c.get_string("rve.crack_type", "blunt"));
    r.crack.blunt_planes = static_cast<int>(c.get_int("rve.blunt_planes", r.crack.blunt_planes));
    r.fixed_planes = static_cast<int>(c.get_int("rve.fixed_planes", r.fixed_planes));
    r.seed = cfg.seed;
    m.temperature = c.get_double("rve.temperature", m.temperature);

    m.iron.well_depth = c.get_double("potential.well_depth", m.iron.well_depth);
    m.iron.alpha = c.get_double("potential.alpha", m.iron.alpha);
    m.iron.r_eq = c.get_double("potential.r_eq", m.iron.r_eq);
    m.cutoff = c.get_double("potential.cutoff", m.cutoff);
    m.carbon_depth_factor = c.get_double("potential.carbon_depth_factor", m.carbon_depth_factor);
    m.carbon_radius_factor = c.get_double("potential.carbon_radius_factor", m.carbon_radius_factor);

    const double rate = c.get_double("loading.strain_rate", 1e9);
    const double ratio = c.get_double("loading.load_ratio", 0.5);
    const double dt = c.get_double("loading.timestep", 0.001);
    if (c.has("loading.peaks")) {
        m.program.strain_rate = rate;
        m.program.load_ratio = ratio;
        m.program.timestep = dt;
        m.program.peak_strains = c.get_list("loading.peaks", {});
    } else {
        const double first = c.get_double("loading.first_peak", 0.02);
        const double step = c.get_double("loading.peak_step", 0.005);
        const auto cycles = static_cast<int>(c.get_int("loading.cycles", 10));
        if (cycles < 0) throw ConfigError("loading.cycles must be non-negative");
        m.program = md::LoadProgram::increasing(first, step, cycles, rate, ratio, dt);
    }
    m.loading.emit_every = static_cast<int>(c.get_int("loading.emit_every", 1));
    m.relax_tolerance = c.get_double("loading.relax_tolerance", m.relax_tolerance);
    m.relax_steps = static_cast<int>(c.get_int("loading.relax_steps", m.relax_steps));
    m.write_snapshots = c.get_bool("loading.write_snapshots", m.write_snapshots);

    auto& ex = m.loading.extraction;
    ex.scale = c.get_double("extraction.scale", ex.scale);
    ex.threshold = static_cast<int>(c.get_int("extraction.threshold", ex.threshold));
    ex.otsu = c.get_bool("extraction.otsu", ex.otsu);
    ex.median_window = static_cast<int>(c.get_int("extraction.median_window", ex.median_window));
    ex.mouth = vision::parse_edge(c.get_string("extraction.mouth", "left"));
    ex.skeleton.prune_length = static_cast<int>(c.get_int("extraction.prune_length", ex.skeleton.prune_length));
    ex.surface.cutoff_factor = c.get_double("extraction.cutoff_factor", ex.surface.cutoff_factor);
    ex.surface.threshold = static_cast<int>(c.get_int("extraction.coordination_threshold", ex.surface.threshold));
    m.loading.sampling.radius = c.get_double("extraction.sample_radius", m.loading.sampling.radius);

    cfg.fit.units = paris::parse_units(c.get_string("fit.units", "mpa_sqrt_m"));
    cfg.fit.window.trim_fraction = c.get_double("fit.trim", cfg.fit.window.trim_fraction);
    if (c.has("fit.dk_min")) cfg.fit.window.min = c.get_double("fit.dk_min");
    if (c.has("fit.dk_max")) cfg.fit.window.max = c.get_double("fit.dk_max");

    if (c.has("macro.plate")) {
        std::filesystem::path plate = c.get_string("macro.plate");
        if (plate.is_relative()) plate = base_dir / plate;
        // Inline [macro] keys override the plate file.
        KeyValueConfig merged = KeyValueConfig::from_file(plate);
        for (const char* k : {"L", "H", "a0", "q", "E", "nu", "G", "sigma_c", "thickness", "mode", "load_ratio", "crack"}) {
            if (c.has(std::string("macro.") + k)) merged.set(k, c.get_string(std::string("macro.") + k));
        }
        cfg.macro = xfem::read_macro_model(merged, "");
        cfg.fatigue = xfem::read_fatigue_options(c, "macro", xfem::read_fatigue_options(merged, ""));
        cfg.raw.set("macro.plate_text", merged.canonical());
    } else {
        cfg.macro = xfem::read_macro_model(c, "macro");
        cfg.fatigue = xfem::read_fatigue_options(c, "macro");
    }

    try {
        m.program.validate();
        if (m.loading.emit_every < 1) throw InvalidArgument("loading.emit_every must be at least 1");
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    return load_pipeline_config(KeyValueConfig::from_file(path), path.parent_path());
}

std::filesystem::path preset_directory() {
    if (const char* env = std::getenv("MSF_PRESET_DIR")) return env;
    return MSF_PRESET_DIR;
}

std::filesystem::path preset_path(const std::string& name) {
    const auto p = preset_directory() / (name + ".ini");
    if (!std::filesystem::exists(p)) throw ConfigError("unknown preset '" + name + "' (no " + p.string() + ")");
    return p;
}

}  // namespace msf::pipeline
