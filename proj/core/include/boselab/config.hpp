#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace boselab {

/// Flat key = value configuration; '#' starts a comment, blank lines ignored.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    /// Comma-separated list of numbers.
    std::vector<double> get_list(const std::string& key) const;
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const;

    /// Keys present but not in `allowed` (unknown keys are a config error).
    std::vector<std::string> unknown_keys(const std::set<std::string>& allowed) const;
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace boselab
