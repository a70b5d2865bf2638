#include "msf/xfem/xfem_io.hpp"

#include "msf/core/error.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>

namespace msf::xfem {

namespace {

std::string key(const std::string& section, const std::string& k) { return section.empty() ? k : section + "." + k; }

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

MacroModel read_macro_model(const KeyValueConfig& c, const std::string& s) {
    MacroModel m;
    m.width = c.get_double(key(s, "L"), m.width);
    m.height = c.get_double(key(s, "H"), m.height);
    m.initial_crack = c.get_double(key(s, "a0"), m.initial_crack);
    m.line_load = c.get_double(key(s, "q"), m.line_load);
    m.youngs_modulus = c.get_double(key(s, "E"), m.youngs_modulus);
    m.poisson = c.get_double(key(s, "nu"), m.poisson);
    m.shear_modulus = c.get_double(key(s, "G"), m.shear_modulus);
    m.yield_stress = c.get_double(key(s, "sigma_c"), m.yield_stress);
    m.thickness = c.get_double(key(s, "thickness"), m.thickness);
    m.mode = parse_mode(c.get_string(key(s, "mode"), mode_name(m.mode)));
    m.load_ratio = c.get_double(key(s, "load_ratio"), m.load_ratio);
    m.layout = parse_layout(c.get_string(key(s, "crack"), layout_name(m.layout)));
    try {
        m.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid plate model: ") + e.what());
    }
    return m;
}

FatigueOptions read_fatigue_options(const KeyValueConfig& c, const std::string& s, FatigueOptions o) {
    o.crack_increment = c.get_double(key(s, "da"), o.crack_increment);
    o.nx = static_cast<int>(c.get_int(key(s, "nx"), o.nx));
    o.ny = static_cast<int>(c.get_int(key(s, "ny"), o.ny));
    o.max_steps = static_cast<int>(c.get_int(key(s, "max_steps"), o.max_steps));
    o.boundary_margin = c.get_double(key(s, "boundary_margin"), o.boundary_margin);
    o.toughness = c.get_double(key(s, "toughness"), o.toughness);
    o.sif.radius_factor = c.get_double(key(s, "radius_factor"), o.sif.radius_factor);
    o.snapshot_cycles = c.get_list(key(s, "snapshots"), o.snapshot_cycles);
    if (!(o.crack_increment > 0) || o.nx < 1 || o.ny < 1 || o.max_steps < 0 || !(o.sif.radius_factor > 0)) {
        throw ConfigError("invalid fatigue options in [" + s + "]");
    }
    return o;
}

void write_life_curve_csv(const std::filesystem::path& path, const FatigueHistory& h,
                          const std::vector<std::string>& header_comments) {
    auto out = open_out(path);
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "step,N,a_mm,dK,K_I,K_II,theta_deg\n" << std::setprecision(12);
    for (const auto& r : h.records) {
        out << r.step << ',' << r.cycles << ',' << r.length << ',' << r.delta_k << ',' << r.k_i << ',' << r.k_ii << ','
            << r.theta * 180.0 / std::numbers::pi << '\n';
    }
}

void write_crack_path_csv(const std::filesystem::path& path, const CrackPolyline& crack,
                          const std::vector<std::string>& header_comments) {
    auto out = open_out(path);
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "x_mm,y_mm\n" << std::setprecision(12);
    for (const auto& v : crack.vertices()) out << v.x() << ',' << v.y() << '\n';
}

void write_vtk(const std::filesystem::path& path, const EnrichedMesh& em, const Solution& sol,
               const MacroModel& model, const std::string& title) {
    const StructuredMesh& mesh = *em.mesh;
    auto out = open_out(path);
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << std::setprecision(10);
    out << "POINTS " << mesh.node_count() << " double\n";
    for (int n = 0; n < mesh.node_count(); ++n) {
        const Point p = mesh.node_position(n);
        out << p.x() << ' ' << p.y() << " 0\n";
    }
    out << "CELLS " << mesh.element_count() << ' ' << 5 * mesh.element_count() << '\n';
    for (int e = 0; e < mesh.element_count(); ++e) {
        const auto nodes = mesh.element_nodes(e);
        out << "4 " << nodes[0] << ' ' << nodes[1] << ' ' << nodes[2] << ' ' << nodes[3] << '\n';
    }
    out << "CELL_TYPES " << mesh.element_count() << '\n';
    for (int e = 0; e < mesh.element_count(); ++e) out << "9\n";
    out << "POINT_DATA " << mesh.node_count() << "\nVECTORS displacement double\n";
    for (int n = 0; n < mesh.node_count(); ++n) {
        const auto u = nodal_displacement(em, sol, n);
        out << u.x() << ' ' << u.y() << " 0\n";
    }
    out << "CELL_DATA " << mesh.element_count() << "\nSCALARS von_mises double 1\nLOOKUP_TABLE default\n";
    for (int e = 0; e < mesh.element_count(); ++e) {
        double sum = 0, area = 0;
        for (const auto& qp : element_quadrature(em, e)) {
            sum += qp.weight * von_mises(evaluate(em, sol, model, e, qp.x, qp.side).stress, model);
            area += qp.weight;
        }
        out << (area > 0 ? sum / area : 0.0) << '\n';
    }
}

}  // namespace msf::xfem
