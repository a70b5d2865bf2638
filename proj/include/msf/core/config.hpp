/**
 * @file config.hpp
 * @brief Sectioned key=value configuration files.
 *
 * The format is INI/TOML-compatible for the subset we use: `[section]`
 * headers, `key = value` lines, and full-line `#` or `;` comments. String
 * values may be quoted. Lookups use dotted paths (`rve.seed`).
 */
#pragma once

#include <boost/property_tree/ptree.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace msf {

class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig from_file(const std::filesystem::path& path);
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& dotted) const;
    bool has_section(const std::string& section) const;

    std::string get_string(const std::string& dotted) const;
    std::string get_string(const std::string& dotted, const std::string& fallback) const;
    double get_double(const std::string& dotted) const;
    double get_double(const std::string& dotted, double fallback) const;
    long long get_int(const std::string& dotted) const;
    long long get_int(const std::string& dotted, long long fallback) const;
    bool get_bool(const std::string& dotted, bool fallback) const;
    /// Comma-separated list of numbers, e.g. `10000, 40000`.
    std::vector<double> get_list(const std::string& dotted, const std::vector<double>& fallback) const;

    void set(const std::string& dotted, const std::string& value);

    /// Canonical text of one section (keys sorted), used for cache keys.
    std::string canonical_section(const std::string& section) const;
    std::string canonical() const;

private:
    boost::property_tree::ptree tree_;
};

std::vector<double> parse_number_list(const std::string& text);

}  // namespace msf
