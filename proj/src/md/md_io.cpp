#include "msf/md/md_io.hpp"

#include "msf/core/error.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace msf::md {

namespace {

const char* species_symbol(Species s) { return is_carbon(s) ? "C" : "Fe"; }

}  // namespace

void write_xyz(std::ostream& out, const AtomSystem& sys, const std::vector<double>& vm, const std::string& comment) {
    MSF_REQUIRE(vm.empty() || vm.size() == sys.size(), "von Mises array size mismatch");
    const Vec3 len = sys.box.length();
    out << sys.size() << '\n';
    out << "Lattice=\"" << len.x << " 0 0 0 " << len.y << " 0 0 0 " << len.z << "\" Origin=\"" << sys.box.lo.x << ' '
        << sys.box.lo.y << ' ' << sys.box.lo.z << "\" Properties=species:S:1:pos:R:3";
    if (!vm.empty()) out << ":von_mises_GPa:R:1";
    out << " pbc=\"" << (sys.box.periodic[0] ? 'T' : 'F') << ' ' << (sys.box.periodic[1] ? 'T' : 'F') << ' '
        << (sys.box.periodic[2] ? 'T' : 'F') << '"';
    if (!comment.empty()) out << ' ' << comment;
    out << '\n' << std::setprecision(10);
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const Vec3& r = sys.positions[i];
        out << species_symbol(sys.species[i]) << ' ' << r.x << ' ' << r.y << ' ' << r.z;
        if (!vm.empty()) out << ' ' << vm[i];
        out << '\n';
    }
}

void write_xyz(const std::string& path, const AtomSystem& sys, const std::vector<double>& vm,
               const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    write_xyz(out, sys, vm, comment);
}

AtomSystem read_lammps_dump(const std::string& path, const DumpOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::string line;
    std::size_t natoms = 0;
    AtomSystem sys;
    sys.lattice_constant = options.lattice_constant;
    bool have_box = false;
    std::map<std::string, int> column;
    while (std::getline(in, line)) {
        if (line.rfind("ITEM: NUMBER OF ATOMS", 0) == 0) {
            if (!(in >> natoms)) throw ConfigError("bad atom count in '" + path + "'");
            std::getline(in, line);
        } else if (line.rfind("ITEM: BOX BOUNDS", 0) == 0) {
            std::istringstream flags(line.substr(16));
            std::string f;
            for (int d = 0; d < 3 && flags >> f; ++d) sys.box.periodic[d] = f == "pp";
            for (int d = 0; d < 3; ++d) {
                std::getline(in, line);
                std::istringstream b(line);
                if (!(b >> sys.box.lo[d] >> sys.box.hi[d])) throw ConfigError("bad box bounds in '" + path + "'");
            }
            have_box = true;
        } else if (line.rfind("ITEM: ATOMS", 0) == 0) {
            std::istringstream h(line.substr(11));
            std::string name;
            for (int k = 0; h >> name; ++k) column[name] = k;
            for (const char* need : {"id", "type", "x", "y", "z"}) {
                if (!column.count(need)) throw ConfigError("dump '" + path + "' lacks column '" + need + "'");
            }
            break;
        }
    }
    if (!have_box || column.empty()) throw ConfigError("'" + path + "' is not a LAMMPS text dump");

    struct Row {
        long id;
        int type;
        Vec3 r;
    };
    std::vector<Row> rows;
    rows.reserve(natoms);
    const std::size_t ncol = column.size();
    std::vector<double> v(ncol);
    while (rows.size() < natoms && std::getline(in, line)) {
        if (line.rfind("ITEM:", 0) == 0) break;
        std::istringstream s(line);
        for (std::size_t k = 0; k < ncol; ++k) {
            if (!(s >> v[k])) throw ConfigError("short atom line in '" + path + "'");
        }
        rows.push_back({static_cast<long>(v[column["id"]]), static_cast<int>(v[column["type"]]),
                        {v[column["x"]], v[column["y"]], v[column["z"]]}});
    }
    if (rows.size() != natoms) throw ConfigError("dump '" + path + "' holds fewer atoms than announced");
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });
    for (const auto& row : rows) {
        const bool carbon = std::find(options.carbon_types.begin(), options.carbon_types.end(), row.type) !=
                            options.carbon_types.end();
        sys.add_atom(row.r, carbon ? Species::CSubstitutional : Species::Fe, Group::Mobile);
    }
    sys.lattice_sites = sys.size();
    return sys;
}

void write_cycle_csv(const std::string& path, const std::vector<CycleRecord>& records,
                     const std::vector<std::string>& header_comments) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "cycle,peak_strain,min_strain,sigma_y_tip_GPa,sigma_y_min_GPa,crack_len_A,tip_x_A,tip_y_A,valid\n";
    out << std::setprecision(10);
    for (const auto& r : records) {
        out << r.cycle << ',' << r.peak_strain << ',' << r.min_strain << ',' << r.sigma_max_gpa << ','
            << r.sigma_min_gpa << ',' << r.crack_length << ',' << r.tip_x << ',' << r.tip_y << ',' << (r.valid ? 1 : 0)
            << '\n';
    }
}

std::vector<CycleRecord> read_cycle_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::vector<CycleRecord> out;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        std::istringstream s(line);
        std::string cell;
        std::vector<std::string> f;
        while (std::getline(s, cell, ',')) f.push_back(cell);
        if (f.size() != 9) throw ConfigError("'" + path + "': expected 9 columns in '" + line + "'");
        CycleRecord r;
        try {
            r.cycle = std::stoi(f[0]);
            r.peak_strain = std::stod(f[1]);
            r.min_strain = std::stod(f[2]);
            r.sigma_max_gpa = std::stod(f[3]);
            r.sigma_min_gpa = std::stod(f[4]);
            r.crack_length = std::stod(f[5]);
            r.tip_x = std::stod(f[6]);
            r.tip_y = std::stod(f[7]);
            r.valid = std::stoi(f[8]) != 0;
        } catch (const std::logic_error&) {
            throw ConfigError("'" + path + "': unreadable row '" + line + "'");
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace msf::md
