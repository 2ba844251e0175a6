#include "extrap/config.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>

#include "extrap/error.hpp"

namespace extrap {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

bool parse_number(const std::string& s, double& out) {
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return !s.empty() && end == s.c_str() + s.size();
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
    static const std::regex key_re(R"([A-Za-z_][A-Za-z0-9_\-\.]*)");
    Config cfg;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(strip_comment(line));
        if (text.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw UsageError(source + ":" + std::to_string(lineno) + ": " + why);
        };
        if (text.front() == '[') {
            if (text.back() != ']') fail("unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            if (!std::regex_match(section, key_re)) fail("bad section name '" + section + "'");
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (!std::regex_match(key, key_re)) fail("bad key '" + key + "'");
        if (value.empty()) fail("missing value for '" + key + "'");
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') fail("unterminated string");
            value = value.substr(1, value.size() - 2);
        } else {
            double num = 0.0;
            if (value != "true" && value != "false" && !parse_number(value, num))
                fail("value '" + value + "' is not a number, boolean or quoted string");
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.values_.count(full)) fail("duplicate key '" + full + "'");
        cfg.values_[full] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    return parse(in, path);
}

Config Config::resolve(const std::string& path) {
    if (const char* env = std::getenv("EXTRAPKIT_CONFIG"); env != nullptr && *env != '\0') return load(env);
    if (!path.empty()) return load(path);
    return {};
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    double v = 0.0;
    if (!parse_number(it->second, v)) throw UsageError("config key '" + key + "' is not a number");
    return v;
}

int Config::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, fallback);
    if (v != static_cast<double>(static_cast<int>(v))) throw UsageError("config key '" + key + "' is not an integer");
    return static_cast<int>(v);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw UsageError("config key '" + key + "' is not a boolean");
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

}  // namespace extrap
