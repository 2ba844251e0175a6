#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Core>

#include "json.hpp"

#include "extrap/report.hpp"
#include "extrap/stepfn.hpp"

namespace extrap::io {

using Json = nlohmann::ordered_json;

/// {"domain_length": L, "pieces": [[length, value], ...]}
Json to_json(const StepFn& f);
StepFn step_from_json(const Json& j);

/// Deterministic text: fixed key order and round-trip precision for doubles.
std::string dump(const Json& j);

StepFn read_step(const std::filesystem::path& path);
void write_step(const std::filesystem::path& path, const StepFn& f);

/// JSON has no infinities or NaN; those are written as the strings "inf", "-inf", "nan".
Json number(double v);

Json to_json(const Report& r);

/// JSON [[[re, im], ...], ...] (a bare number is a real entry) or CSV rows of
/// re,im pairs, chosen by the extension.
Eigen::MatrixXcd read_matrix(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace extrap::io
