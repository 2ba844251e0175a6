#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace extrap {

/// Flat key/value configuration in a TOML subset: `key = value` lines,
/// `[section]` headers that prefix following keys with "section.", `#` comments,
/// numbers, booleans and double-quoted strings.
class Config {
public:
    Config() = default;

    /// Throws UsageError naming `source` and the line number on malformed input.
    static Config parse(std::istream& in, const std::string& source = "config");
    static Config load(const std::string& path);
    /// Uses EXTRAPKIT_CONFIG when set, else `path` when non-empty, else an empty config.
    static Config resolve(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    void set(const std::string& key, const std::string& raw) { values_[key] = raw; }
    const std::map<std::string, std::string>& entries() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;  // raw text, strings unquoted
};

}  // namespace extrap
