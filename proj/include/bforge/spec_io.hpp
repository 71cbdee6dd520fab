#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bforge/dynamics.hpp"
#include "bforge/errors.hpp"
#include "bforge/synthesis.hpp"

namespace bforge {

using ordered_json = nlohmann::ordered_json;

/// Format a double with 17 significant digits: enough for a lossless
/// parse round-trip, and byte-stable across runs.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Design-spec JSON file
// ---------------------------------------------------------------------------

/// Optional boundary-search overrides from the spec file's numerics block.
struct NumericsOptions {
    SearchConfig search;
    std::optional<int> n_samples;
};

/// Parsed spec file: the design problem plus optional simulation and
/// numerics blocks.
struct SpecFile {
    DesignSpec spec;
    std::optional<SimConfig> sim;
    NumericsOptions numerics;
};

namespace detail {

inline void require_keys(const ordered_json& obj, const std::string& where,
                         const std::vector<std::string>& required,
                         const std::vector<std::string>& optional) {
    if (!obj.is_object()) throw SchemaError(where + ": expected a JSON object");
    for (const auto& key : required)
        if (!obj.contains(key)) throw SchemaError(where + ": missing key \"" + key + "\"");
    for (const auto& item : obj.items()) {
        const std::string& key = item.key();
        const bool known =
            std::find(required.begin(), required.end(), key) != required.end() ||
            std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) throw SchemaError(where + ": unknown key \"" + key + "\"");
    }
}

inline double number_at(const ordered_json& obj, const std::string& where,
                        const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw SchemaError(where + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

inline TargetForce parse_force(const ordered_json& obj) {
    require_keys(obj, "force", {"type"}, {"coeffs", "k3", "samples"});
    if (!obj.at("type").is_string()) throw SchemaError("force: \"type\" must be a string");
    const std::string type = obj.at("type").get<std::string>();

    if (type == "polynomial") {
        require_keys(obj, "force", {"type", "coeffs"}, {});
        const auto& arr = obj.at("coeffs");
        if (!arr.is_array()) throw SchemaError("force: \"coeffs\" must be an array");
        std::vector<double> coeffs;
        for (const auto& c : arr) {
            if (!c.is_number()) throw SchemaError("force: coeffs entries must be numbers");
            coeffs.push_back(c.get<double>());
        }
        return PolynomialForce{std::move(coeffs)};
    }
    if (type == "duffing") {
        require_keys(obj, "force", {"type", "k3"}, {});
        return DuffingForce{number_at(obj, "force", "k3")};
    }
    if (type == "tabulated") {
        require_keys(obj, "force", {"type", "samples"}, {});
        const auto& arr = obj.at("samples");
        if (!arr.is_array()) throw SchemaError("force: \"samples\" must be an array");
        std::vector<double> xs, ps;
        for (const auto& pair : arr) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                !pair[1].is_number())
                throw SchemaError("force: samples entries must be [x, p] number pairs");
            xs.push_back(pair[0].get<double>());
            ps.push_back(pair[1].get<double>());
        }
        try {
            return TabulatedForce(std::move(xs), std::move(ps));
        } catch (const InvalidSpec& e) {
            throw SchemaError(std::string("force: ") + e.what());
        }
    }
    throw SchemaError("force: unknown type \"" + type + "\"");
}

}  // namespace detail

inline SpecFile parse_spec_json(const ordered_json& doc) {
    detail::require_keys(doc, "spec", {"force", "k_eff", "delta", "rod_length"},
                         {"sim", "numerics"});
    SpecFile file;
    file.spec.force = detail::parse_force(doc.at("force"));
    file.spec.k_eff = detail::number_at(doc, "spec", "k_eff");
    file.spec.delta = detail::number_at(doc, "spec", "delta");
    file.spec.rod_length = detail::number_at(doc, "spec", "rod_length");

    if (doc.contains("sim")) {
        const auto& sim = doc.at("sim");
        detail::require_keys(sim, "sim", {"mass", "dt", "t_end", "x0", "v0"}, {});
        file.sim = SimConfig{detail::number_at(sim, "sim", "mass"),
                             detail::number_at(sim, "sim", "dt"),
                             detail::number_at(sim, "sim", "t_end"),
                             detail::number_at(sim, "sim", "x0"),
                             detail::number_at(sim, "sim", "v0")};
    }
    if (doc.contains("numerics")) {
        const auto& num = doc.at("numerics");
        detail::require_keys(num, "numerics", {},
                             {"scan_step", "scan_horizon", "bisect_tol", "n_samples"});
        if (num.contains("scan_step"))
            file.numerics.search.scan_step = detail::number_at(num, "numerics", "scan_step");
        if (num.contains("scan_horizon"))
            file.numerics.search.scan_horizon = detail::number_at(num, "numerics", "scan_horizon");
        if (num.contains("bisect_tol"))
            file.numerics.search.bisect_tol = detail::number_at(num, "numerics", "bisect_tol");
        if (num.contains("n_samples")) {
            const auto& n = num.at("n_samples");
            if (!n.is_number_integer())
                throw SchemaError("numerics: \"n_samples\" must be an integer");
            file.numerics.n_samples = n.get<int>();
        }
    }
    return file;
}

inline SpecFile load_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file: " + path.string());
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("spec file is not valid JSON: ") + e.what());
    }
    return parse_spec_json(doc);
}

// ---------------------------------------------------------------------------
// Deterministic report serialization
// ---------------------------------------------------------------------------

namespace detail {

inline void dump_value(const ordered_json& v, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (v.type()) {
        case nlohmann::json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (const auto& item : v.items()) {
                out += pad;
                out += ordered_json(item.key()).dump();
                out += ": ";
                dump_value(item.value(), out, indent, depth + 1);
                if (++i < v.size()) out += ",";
                out += "\n";
            }
            out += close_pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out += pad;
                dump_value(v[i], out, indent, depth + 1);
                if (i + 1 < v.size()) out += ",";
                out += "\n";
            }
            out += close_pad + "]";
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += g17(v.get<double>());
            return;
        default:
            out += v.dump();
            return;
    }
}

}  // namespace detail

/// Serialize a report document: fixed field order (insertion order), fixed
/// 2-space indentation, floats at 17 significant digits.
inline std::string dump_report(const ordered_json& doc) {
    std::string out;
    detail::dump_value(doc, out, 2, 0);
    out += "\n";
    return out;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

/// Curve row of a design CSV: displacement, track height, radicand,
/// restoring force.
struct CurveRow {
    double x = 0.0, y = 0.0, u = 0.0, fr = 0.0;
};

inline std::string design_csv(const std::vector<CurveRow>& rows) {
    std::string out = "X,Y,U,Fr\n";
    for (const auto& r : rows)
        out += g17(r.x) + "," + g17(r.y) + "," + g17(r.u) + "," + g17(r.fr) + "\n";
    return out;
}

inline std::string samples_csv(const std::vector<BranchSample>& rows) {
    std::string out = "X,Y,U\n";
    for (const auto& r : rows) out += g17(r.x) + "," + g17(r.y) + "," + g17(r.u) + "\n";
    return out;
}

inline std::vector<double> parse_csv_row(const std::string& line, const std::string& where) {
    std::vector<double> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::string cell = line.substr(start, comma - start);
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(cell, &consumed);
        } catch (const std::exception&) {
            throw SchemaError(where + ": cell \"" + cell + "\" is not a number");
        }
        while (consumed < cell.size() && std::isspace(static_cast<unsigned char>(cell[consumed])))
            ++consumed;
        if (consumed != cell.size())
            throw SchemaError(where + ": cell \"" + cell + "\" is not a number");
        fields.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

/// Read a design CSV back (header "X,Y,U,Fr"); '#' lines are comments.
inline std::vector<CurveRow> read_design_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open curve table: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("curve table is empty: " + path.string());
    if (line != "X,Y,U,Fr")
        throw SchemaError("curve table header must be \"X,Y,U,Fr\": " + path.string());
    std::vector<CurveRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto f = parse_csv_row(line, path.string() + ":" + std::to_string(line_no));
        if (f.size() != 4)
            throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 4 columns");
        rows.push_back({f[0], f[1], f[2], f[3]});
    }
    if (rows.empty()) throw SchemaError("curve table has no data rows: " + path.string());
    return rows;
}

inline std::string sim_csv(const SimResult& result) {
    std::string out = "t,X,V,E\n";
    for (const auto& s : result.samples)
        out += g17(s.t) + "," + g17(s.x) + "," + g17(s.v) + "," + g17(s.e) + "\n";
    switch (result.termination.kind) {
        case TerminationKind::Completed:
            out += "# termination: completed t=" + g17(result.termination.time) + "\n";
            break;
        case TerminationKind::LockEvent:
            out += "# termination: lock_event t=" + g17(result.termination.time) + "\n";
            break;
        case TerminationKind::DomainExit:
            out += "# termination: domain_exit t=" + g17(result.termination.time) + "\n";
            break;
    }
    return out;
}

}  // namespace bforge
