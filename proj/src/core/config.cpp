#include "msf/core/config.hpp"

#include "msf/core/error.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace msf {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string s) {
    s = trim(s);
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

// Boost's INI parser rejects TOML-style inline comments and array brackets;
// strip both before handing the text over.
std::string normalize(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        bool in_quote = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quote = !in_quote;
            if (!in_quote && line[i] == '#' && i > 0) {
                line = line.substr(0, i);
                break;
            }
        }
        const auto eq = line.find('=');
        if (eq != std::string::npos && trim(line).front() != '#' && trim(line).front() != ';') {
            std::string value = trim(line.substr(eq + 1));
            if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
                value = value.substr(1, value.size() - 2);
            }
            line = trim(line.substr(0, eq)) + " = " + value;
        }
        out << line << '\n';
    }
    return out.str();
}

double to_double(const std::string& key, const std::string& raw) {
    try {
        std::size_t used = 0;
        const std::string v = unquote(raw);
        const double d = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + key + "' is not a number: '" + raw + "'");
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(normalize(text));
    try {
        pt::read_ini(in, cfg.tree_);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return cfg;
}

bool KeyValueConfig::has(const std::string& dotted) const {
    return static_cast<bool>(tree_.get_optional<std::string>(dotted));
}

bool KeyValueConfig::has_section(const std::string& section) const {
    return tree_.get_child_optional(section).has_value();
}

std::string KeyValueConfig::get_string(const std::string& dotted) const {
    auto v = tree_.get_optional<std::string>(dotted);
    if (!v) throw ConfigError("missing config key '" + dotted + "'");
    return unquote(*v);
}

std::string KeyValueConfig::get_string(const std::string& dotted, const std::string& fallback) const {
    auto v = tree_.get_optional<std::string>(dotted);
    return v ? unquote(*v) : fallback;
}

double KeyValueConfig::get_double(const std::string& dotted) const {
    return to_double(dotted, get_string(dotted));
}

double KeyValueConfig::get_double(const std::string& dotted, double fallback) const {
    return has(dotted) ? get_double(dotted) : fallback;
}

long long KeyValueConfig::get_int(const std::string& dotted) const {
    const double d = get_double(dotted);
    if (d != static_cast<double>(static_cast<long long>(d))) {
        throw ConfigError("config key '" + dotted + "' must be an integer");
    }
    return static_cast<long long>(d);
}

long long KeyValueConfig::get_int(const std::string& dotted, long long fallback) const {
    return has(dotted) ? get_int(dotted) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& dotted, bool fallback) const {
    if (!has(dotted)) return fallback;
    std::string v = get_string(dotted);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + dotted + "' is not a boolean: '" + v + "'");
}

std::vector<double> KeyValueConfig::get_list(const std::string& dotted, const std::vector<double>& fallback) const {
    return has(dotted) ? parse_number_list(get_string(dotted)) : fallback;
}

void KeyValueConfig::set(const std::string& dotted, const std::string& value) { tree_.put(dotted, value); }

std::string KeyValueConfig::canonical_section(const std::string& section) const {
    std::ostringstream out;
    out << '[' << section << "]\n";
    auto child = tree_.get_child_optional(section);
    if (!child) return out.str();
    std::map<std::string, std::string> sorted;
    for (const auto& [k, v] : *child) sorted[k] = unquote(v.data());
    for (const auto& [k, v] : sorted) out << k << '=' << v << '\n';
    return out.str();
}

std::string KeyValueConfig::canonical() const {
    std::vector<std::string> sections;
    for (const auto& [k, v] : tree_) sections.push_back(k);
    std::sort(sections.begin(), sections.end());
    std::string out;
    for (const auto& s : sections) out += canonical_section(s);
    return out;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(unquote(text));
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(to_double("list item", item));
    }
    return out;
}

}  // namespace msf
