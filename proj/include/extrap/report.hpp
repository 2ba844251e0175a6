#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace extrap {

/// Outcome of one check: a measured constant against a bound plus named
/// auxiliary quantities in insertion order.
struct Report {
    std::string check;
    double measured = 0.0;
    double bound = std::numeric_limits<double>::infinity();
    bool pass = true;
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::string> flags;

    void set(std::string key, double v) {
        for (auto& [k, x] : values)
            if (k == key) {
                x = v;
                return;
            }
        values.emplace_back(std::move(key), v);
    }
    /// NaN when the key is absent.
    double get(const std::string& key) const {
        for (const auto& [k, x] : values)
            if (k == key) return x;
        return std::numeric_limits<double>::quiet_NaN();
    }
    bool has_flag(const std::string& f) const {
        for (const auto& x : flags)
            if (x == f) return true;
        return false;
    }
};

}  // namespace extrap
