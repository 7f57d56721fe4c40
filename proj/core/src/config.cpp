#include "boselab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace boselab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: missing '=' on line " +
                                     std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key on line " +
                                     std::to_string(lineno));
        if (cfg.values_.count(key))
            throw std::runtime_error("config: duplicate key '" + key + "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error("config: missing required key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
    return has(key) ? values_.at(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    std::size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not a number");
    }
    if (pos != v.size())
        throw std::runtime_error("config: key '" + key + "' is not a number");
    return d;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    const double d = get_double(key);
    const int i = static_cast<int>(d);
    if (double(i) != d)
        throw std::runtime_error("config: key '" + key + "' is not an integer");
    return i;
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> Config::get_list(const std::string& key) const {
    const std::string v = get_string(key);
    std::vector<double> out;
    std::istringstream is(v);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw std::runtime_error("config: empty element in list '" + key + "'");
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size())
            throw std::runtime_error("config: non-numeric element in list '" + key +
                                     "'");
    }
    if (out.empty()) throw std::runtime_error("config: empty list '" + key + "'");
    return out;
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& fallback) const {
    return has(key) ? get_list(key) : fallback;
}

std::vector<std::string> Config::unknown_keys(
    const std::set<std::string>& allowed) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (!allowed.count(k)) out.push_back(k);
    return out;
}

} // namespace boselab
