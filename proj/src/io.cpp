#include "extrap/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "extrap/error.hpp"

namespace extrap::io {

Json to_json(const StepFn& f) {
    Json j;
    j["domain_length"] = f.domain_length();
    Json pieces = Json::array();
    for (const auto& p : f.pieces()) pieces.push_back(Json::array({p.length, p.value}));
    j["pieces"] = std::move(pieces);
    return j;
}

StepFn step_from_json(const Json& j) {
    try {
        std::vector<Piece> pieces;
        for (const auto& p : j.at("pieces")) {
            if (!p.is_array() || p.size() != 2) throw ValidationError("each piece must be [length, value]");
            pieces.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        if (j.contains("domain_length")) return StepFn(j.at("domain_length").get<double>(), std::move(pieces));
        return StepFn(std::move(pieces));
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("malformed step function: ") + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

StepFn read_step(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path.string() + "'");
    try {
        return step_from_json(Json::parse(in));
    } catch (const Json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path.string() + "'");
    out << text;
}

void write_step(const std::filesystem::path& path, const StepFn& f) { write_text(path, dump(to_json(f))); }

Json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

Json to_json(const Report& r) {
    Json j;
    j["check"] = r.check;
    j["measured"] = number(r.measured);
    j["bound"] = number(r.bound);
    j["pass"] = r.pass;
    Json values = Json::object();
    for (const auto& [k, v] : r.values) values[k] = number(v);
    j["values"] = std::move(values);
    j["flags"] = r.flags;
    return j;
}

namespace {

std::complex<double> entry_from_json(const Json& e) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2) return {e[0].get<double>(), e[1].get<double>()};
    throw ValidationError("matrix entries must be numbers or [re, im]");
}

Eigen::MatrixXcd assemble(const std::vector<std::vector<std::complex<double>>>& rows) {
    if (rows.empty() || rows.front().empty()) throw ValidationError("matrix is empty");
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto m = static_cast<Eigen::Index>(rows.front().size());
    Eigen::MatrixXcd a(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != m) throw ValidationError("matrix rows differ in length");
        for (Eigen::Index k = 0; k < m; ++k) a(i, k) = rows[i][k];
    }
    return a;
}

}  // namespace

Eigen::MatrixXcd read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path.string() + "'");
    std::vector<std::vector<std::complex<double>>> rows;
    if (path.extension() == ".csv") {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::vector<double> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                try {
                    cells.push_back(std::stod(cell));
                } catch (const std::exception&) {
                    throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
                }
            }
            if (cells.size() % 2 != 0)
                throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected re,im pairs");
            auto& row = rows.emplace_back();
            for (std::size_t k = 0; k < cells.size(); k += 2) row.emplace_back(cells[k], cells[k + 1]);
        }
    } else {
        try {
            for (const auto& r : Json::parse(in)) {
                auto& row = rows.emplace_back();
                for (const auto& e : r) row.push_back(entry_from_json(e));
            }
        } catch (const Json::exception& e) {
            throw ValidationError(path.string() + ": " + e.what());
        }
    }
    return assemble(rows);
}

}  // namespace extrap::io
