#pragma once

#include <string>
#include <utility>
#include <vector>

#include "extrap/config.hpp"

namespace extrap::verify {

struct CheckResult {
    std::string id;           ///< "<criterion>.<letter>", e.g. "1.a"
    std::string suite;
    std::string description;
    double measured = 0.0;
    double bound = 0.0;
    std::string relation;     ///< "<=", ">=", "in", "pass", "fail"
    bool pass = false;
    std::string inputs_digest;  ///< FNV-1a of the canonical input description
    std::vector<std::pair<std::string, double>> details;
};

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct SuiteResult {
    std::string name;
    int criterion = 0;
    std::vector<CheckResult> checks;
    std::vector<Table> tables;
    double seconds = 0.0;

    bool pass() const;
};

struct SuiteInfo {
    std::string name;
    int criterion;
    std::string summary;
};

const std::vector<SuiteInfo>& suites();
/// Suite name for a criterion number; throws UsageError when out of range.
std::string suite_for_criterion(int criterion);

/// Runs one suite. Every grid and tolerance has a default pinned here and can be
/// overridden by "<suite>.<key>" in the config. Throws UsageError on unknown names.
SuiteResult run_suite(const std::string& name, const Config& cfg = {});

/// Runs several suites with at most `threads` in flight; results keep input order.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const Config& cfg, int threads);

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace extrap::verify
