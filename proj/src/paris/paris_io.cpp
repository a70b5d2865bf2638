#include "msf/paris/paris_io.hpp"

#include "msf/core/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace msf::paris {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
}

bool parse_double(const std::string& s, double& v) {
    try {
        std::size_t used = 0;
        v = std::stod(s, &used);
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

std::vector<CycleSample> read_samples_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open samples file '" + path.string() + "'");
    std::array<int, 4> col{0, 1, 2, 3};
    std::vector<CycleSample> out;
    std::string line;
    bool first = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv(line);
        double probe = 0;
        if (first && !cells.empty() && !parse_double(cells[0], probe)) {
            const std::array<const char*, 4> names{"N", "a", "sigma_max", "sigma_min"};
            for (std::size_t k = 0; k < names.size(); ++k) {
                const auto it = std::find(cells.begin(), cells.end(), names[k]);
                if (it == cells.end()) throw ConfigError("samples header lacks column '" + std::string(names[k]) + "'");
                col[k] = static_cast<int>(it - cells.begin());
            }
            first = false;
            continue;
        }
        first = false;
        CycleSample s;
        double* dst[4] = {&s.cycle, &s.length, &s.sigma_max, &s.sigma_min};
        for (int k = 0; k < 4; ++k) {
            if (col[k] >= static_cast<int>(cells.size()) || !parse_double(cells[col[k]], *dst[k])) {
                throw ConfigError("bad number on line " + std::to_string(lineno) + " of '" + path.string() + "'");
            }
        }
        out.push_back(s);
    }
    return out;
}

void write_samples_csv(const std::filesystem::path& path, const std::vector<CycleSample>& samples,
                       const std::vector<std::string>& header_comments) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "N,a,sigma_max,sigma_min\n" << std::setprecision(12);
    for (const auto& s : samples) out << s.cycle << ',' << s.length << ',' << s.sigma_max << ',' << s.sigma_min << '\n';
}

void write_points_csv(const std::filesystem::path& path, const std::vector<GrowthPoint>& points,
                      const std::vector<std::string>& header_comments) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "dK,da_dN\n" << std::setprecision(12);
    for (const auto& p : points) out << p.delta_k << ',' << p.rate << '\n';
}

std::string to_json(const ParisDocument& doc) {
    const auto& c = doc.constants;
    nlohmann::ordered_json j;
    j["m"] = c.m;
    j["C"] = c.C;
    j["units"] = units_tag(c.units);
    j["r_squared"] = c.r_squared;
    j["points"] = c.points;
    j["dK_window"] = {c.delta_k_min, c.delta_k_max};
    if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
    return j.dump(2) + "\n";
}

ParisDocument paris_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed Paris document: ") + e.what());
    }
    ParisDocument doc;
    auto& c = doc.constants;
    try {
        c.m = j.at("m").get<double>();
        c.C = j.at("C").get<double>();
        c.units = parse_units(j.at("units").get<std::string>());
        c.r_squared = j.value("r_squared", 1.0);
        c.points = j.value("points", 0);
        if (j.contains("dK_window")) {
            c.delta_k_min = j["dK_window"].at(0).get<double>();
            c.delta_k_max = j["dK_window"].at(1).get<double>();
        }
        if (j.contains("metadata")) doc.metadata = j["metadata"].get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("incomplete Paris document: ") + e.what());
    }
    if (!(c.C > 0) || !(c.m > 0)) throw ConfigError("Paris constants must be positive");
    return doc;
}

void write_paris_json(const std::filesystem::path& path, const ParisDocument& doc) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << to_json(doc);
}

ParisDocument read_paris_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open Paris document '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return paris_from_json(ss.str());
}

}  // namespace msf::paris
