#pragma once

// Command implementations behind the boundary-forge CLI. Each cmd_* returns
// the process exit code so both the binary and the tests share one contract:
//   0 success, 1 verification failure, 2 schema error, 3 synthesis/domain
//   error, 4 I/O error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "bforge/dynamics.hpp"
#include "bforge/errors.hpp"
#include "bforge/spec_io.hpp"
#include "bforge/synthesis.hpp"

namespace bforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitSynthesis = 3;
inline constexpr int kExitIo = 4;

inline constexpr int kDefaultSamples = 1001;
inline constexpr double kDefaultTolerance = 1e-8;

// Verbosity from BOUNDARY_FORGE_LOG: quiet < warn (default) < info < debug.
inline int log_level() {
    static const int level = [] {
        const char* env = std::getenv("BOUNDARY_FORGE_LOG");
        if (!env) return 1;
        const std::string v(env);
        if (v == "quiet" || v == "0") return 0;
        if (v == "info" || v == "2") return 2;
        if (v == "debug" || v == "3") return 3;
        return 1;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= 2) std::clog << "[boundary-forge] " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= 3) std::clog << "[boundary-forge] " << msg << "\n";
}

namespace detail {

inline int exit_code_for(const Error& e) {
    if (dynamic_cast<const SchemaError*>(&e)) return kExitSchema;
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    return kExitSynthesis;  // InvalidSpec, DomainError, SpecMismatch, ...
}

template <class Fn>
int guarded(std::ostream& diag, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return kExitSynthesis;
    }
}

inline int resolve_samples(int flag_value, const SpecFile& file) {
    if (flag_value > 0) return flag_value;
    if (file.numerics.n_samples) return *file.numerics.n_samples;
    return kDefaultSamples;
}

// The branch a spec file denotes directly: upper sign, case from delta,
// K sign from k_eff.
inline BranchId file_branch(const DesignSpec& spec) {
    return BranchId{BranchSign::Upper,
                    spec.delta != 0.0 ? DeformCase::PreDeformed : DeformCase::ZeroDeformed,
                    spec.k_eff > 0.0 ? KSign::Positive : KSign::Negative};
}

inline std::vector<CurveRow> design_rows(const DesignSpec& spec, const BranchId& id,
                                         const SearchConfig& search, int n) {
    std::vector<CurveRow> rows;
    for (const auto& s : sample_branch(spec, id, n, search))
        rows.push_back({s.x, s.y, s.u, -eval_force(spec.force, s.x)});
    return rows;
}

inline ordered_json interval_json(const Interval& dom) {
    ordered_json j;
    j["lo"] = dom.lo;
    j["hi"] = dom.hi;
    j["lo_closed"] = dom.lo_closed;
    j["hi_closed"] = dom.hi_closed;
    j["lo_truncated"] = dom.lo_truncated;
    j["hi_truncated"] = dom.hi_truncated;
    return j;
}

inline ordered_json census_json(const ConfigurationCensus& census, double k_mag, double delta_mag,
                                double rod_length) {
    ordered_json doc;
    doc["potential_class"] = to_string(census.potential_class);
    doc["strict_count"] = census.strict_count;
    doc["lenient_count"] = census.lenient_count;
    doc["k_mag"] = k_mag;
    doc["delta_mag"] = delta_mag;
    doc["rod_length"] = rod_length;
    ordered_json merged = ordered_json::array();
    for (const auto& group : census.merged_points) {
        ordered_json g = ordered_json::array();
        for (BranchLabel label : group) g.push_back(to_string(label));
        merged.push_back(g);
    }
    doc["merged_points"] = merged;
    ordered_json branches = ordered_json::array();
    for (const auto& b : census.branches) {
        ordered_json rec;
        rec["name"] = to_string(label_of(b.id));
        rec["k_eff"] = b.spec.k_eff;
        rec["delta"] = b.spec.delta;
        rec["status"] = to_string(b.status);
        rec["domain"] = interval_json(b.domain);
        if (b.status == BranchStatus::NonDegenerate)
            rec["samples_csv"] = to_string(label_of(b.id)) + ".csv";
        else
            rec["samples_csv"] = nullptr;
        branches.push_back(rec);
    }
    doc["branches"] = branches;
    return doc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// design: sample the spec's own track and write the curve CSV
// ---------------------------------------------------------------------------

inline int cmd_design(const std::string& config_path, const std::string& out_path,
                      int n_samples = 0, std::ostream& diag = std::cerr) {
    return detail::guarded(diag, [&] {
        const SpecFile file = load_spec_file(config_path);
        validate(file.spec);
        const int n = detail::resolve_samples(n_samples, file);
        const BranchId id = detail::file_branch(file.spec);
        log_info("design: branch " + to_string(label_of(id)) + ", " + std::to_string(n) +
                 " samples");
        const auto rows = detail::design_rows(file.spec, id, file.numerics.search, n);
        write_text_file(out_path, design_csv(rows));
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// enumerate: eight-branch census, report JSON + per-branch CSVs
// ---------------------------------------------------------------------------

inline int cmd_enumerate(const std::string& config_path, const std::string& out_dir,
                         int n_samples = 0, std::ostream& diag = std::cerr) {
    return detail::guarded(diag, [&] {
        const SpecFile file = load_spec_file(config_path);
        validate(file.spec);
        const int n = detail::resolve_samples(n_samples, file);
        const double k_mag = std::abs(file.spec.k_eff);
        const double delta_mag = std::abs(file.spec.delta);
        const auto census = enumerate_configurations(file.spec.force, k_mag, delta_mag,
                                                     file.spec.rod_length, file.numerics.search);

        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create output directory: " + out_dir);

        const std::filesystem::path dir(out_dir);
        for (const auto& b : census.branches) {
            if (b.status != BranchStatus::NonDegenerate) continue;
            const std::string name = to_string(label_of(b.id)) + ".csv";
            write_text_file(dir / name, samples_csv(sample_branch(b, n)));
            log_info("enumerate: wrote " + name);
        }
        const auto doc =
            detail::census_json(census, k_mag, delta_mag, file.spec.rod_length);
        write_text_file(dir / "census.json", dump_report(doc));
        log_info("enumerate: strict " + std::to_string(census.strict_count) + ", lenient " +
                 std::to_string(census.lenient_count));
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// simulate: conservative motion on a named branch
// ---------------------------------------------------------------------------

inline int cmd_simulate(const std::string& config_path, const std::string& branch_name,
                        const std::string& out_path, std::ostream& diag = std::cerr) {
    return detail::guarded(diag, [&] {
        const SpecFile file = load_spec_file(config_path);
        validate(file.spec);
        if (!file.sim) throw SchemaError("simulate: spec file has no \"sim\" block");
        const auto label = parse_branch_label(branch_name);
        if (!label) throw SchemaError("simulate: unknown branch name \"" + branch_name + "\"");
        const BranchId id = branch_id_of(*label);
        const auto result = simulate(file.spec, id, *file.sim, file.numerics.search);
        write_text_file(out_path, sim_csv(result));
        log_info("simulate: " + std::to_string(result.samples.size()) + " samples");
        return kExitOk;
    });
}

// ---------------------------------------------------------------------------
// verify: identity checks on every live branch, or replay of a curve table
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Exact-identity checks over all non-degenerate branches of the spec's
/// census: energy identity, upper/lower mirror symmetry, round-trip force
/// and strict |Y| < L domain safety. A zero pre-deformation admits no
/// eight-branch census, so only the spec's own upper/lower pair is checked.
inline std::vector<CheckResult> verify_identities(const DesignSpec& spec, double tol, int n,
                                                  const SearchConfig& search = {}) {
    std::vector<TrajectoryBranch> branches;
    if (spec.delta != 0.0) {
        auto census = enumerate_configurations(spec.force, std::abs(spec.k_eff),
                                               std::abs(spec.delta), spec.rod_length, search);
        branches = std::move(census.branches);
    } else {
        const BranchId upper = detail::file_branch(spec);
        branches.push_back(make_branch(spec, upper, search));
        branches.push_back(
            make_branch(spec, BranchId{BranchSign::Lower, upper.deform, upper.k_sign}, search));
    }

    double energy_res = 0.0, mirror_res = 0.0, roundtrip_res = 0.0, max_abs_y = 0.0,
           max_abs_p = 1.0;
    const double L = spec.rod_length;
    for (const auto& b : branches) {
        if (b.status != BranchStatus::NonDegenerate) continue;
        const BranchId mirror{b.id.sign == BranchSign::Upper ? BranchSign::Lower
                                                             : BranchSign::Upper,
                              b.id.deform, b.id.k_sign};
        for (const auto& s : sample_branch(b, n)) {
            const double S = potential(b.spec.force, s.x);
            energy_res = std::max(
                energy_res,
                std::abs(b.spec.k_eff * (s.y * s.y - b.spec.delta * b.spec.delta) / 2.0 - S));
            mirror_res =
                std::max(mirror_res, std::abs(branch_value(b.spec, mirror, s.x) + s.y));
            const double p = eval_force(b.spec.force, s.x);
            max_abs_p = std::max(max_abs_p, std::abs(p));
            roundtrip_res =
                std::max(roundtrip_res, std::abs(roundtrip_force(b.spec, b.id, s.x) - p));
            max_abs_y = std::max(max_abs_y, std::abs(s.y));
        }
    }
    roundtrip_res /= max_abs_p;

    std::vector<CheckResult> checks;
    checks.push_back({"energy_identity", energy_res, tol, energy_res <= tol});
    checks.push_back({"mirror_symmetry", mirror_res, tol, mirror_res <= tol});
    checks.push_back({"roundtrip_force", roundtrip_res, tol, roundtrip_res <= tol});
    // Domain safety is strict: any |Y| >= L is a failure regardless of tol.
    checks.push_back({"domain_safety", max_abs_y, L, max_abs_y < L});
    return checks;
}

/// Replay a previously emitted design CSV against the spec: every row must
/// reproduce Y, U and Fr at its X within tol (mixed abs/rel).
inline std::vector<CheckResult> verify_table(const DesignSpec& spec,
                                             const std::vector<CurveRow>& rows, double tol,
                                             const SearchConfig& search = {}) {
    const BranchId id = detail::file_branch(spec);
    const TrajectoryBranch branch = make_branch(spec, id, search);
    if (branch.status != BranchStatus::NonDegenerate)
        throw DegenerateBranch("verify: spec branch is degenerate, no table to check");

    double y_res = 0.0, u_res = 0.0, fr_res = 0.0;
    for (const auto& r : rows) {
        const double y = branch_value(spec, id, r.x);
        const double u = radicand(spec, r.x);
        const double fr = -eval_force(spec.force, r.x);
        y_res = std::max(y_res, std::abs(y - r.y) / std::max(1.0, std::abs(y)));
        u_res = std::max(u_res, std::abs(u - r.u) / std::max(1.0, std::abs(u)));
        fr_res = std::max(fr_res, std::abs(fr - r.fr) / std::max(1.0, std::abs(fr)));
    }
    std::vector<CheckResult> checks;
    checks.push_back({"table_y", y_res, tol, y_res <= tol});
    checks.push_back({"table_u", u_res, tol, u_res <= tol});
    checks.push_back({"table_fr", fr_res, tol, fr_res <= tol});
    return checks;
}

inline int cmd_verify(const std::string& config_path, double tol = kDefaultTolerance,
                      const std::string& table_path = "", const std::string& out_path = "",
                      int n_samples = 0, std::ostream& diag = std::cerr,
                      std::ostream& report_out = std::cout) {
    return detail::guarded(diag, [&] {
        const SpecFile file = load_spec_file(config_path);
        validate(file.spec);
        const int n = detail::resolve_samples(n_samples, file);

        std::vector<CheckResult> checks;
        std::string mode;
        if (table_path.empty()) {
            mode = "identities";
            checks = verify_identities(file.spec, tol, n, file.numerics.search);
        } else {
            mode = "table";
            checks = verify_table(file.spec, read_design_csv(table_path), tol,
                                  file.numerics.search);
        }

        bool all_pass = true;
        const CheckResult* worst = nullptr;
        ordered_json arr = ordered_json::array();
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            if (!worst || c.residual / std::max(c.tolerance, 1e-300) >
                              worst->residual / std::max(worst->tolerance, 1e-300))
                worst = &c;
            ordered_json j;
            j["name"] = c.name;
            j["residual"] = c.residual;
            j["tolerance"] = c.tolerance;
            j["pass"] = c.pass;
            arr.push_back(j);
        }

        ordered_json doc;
        doc["mode"] = mode;
        doc["tolerance"] = tol;
        doc["pass"] = all_pass;
        ordered_json worst_j;
        worst_j["name"] = worst ? worst->name : "";
        worst_j["residual"] = worst ? worst->residual : 0.0;
        doc["worst"] = worst_j;
        doc["checks"] = arr;

        const std::string text = dump_report(doc);
        if (out_path.empty()) report_out << text;
        else write_text_file(out_path, text);

        if (!all_pass && worst)
            diag << "verification failed: worst check \"" << worst->name
                 << "\" residual " << g17(worst->residual) << "\n";
        return all_pass ? kExitOk : kExitVerifyFailed;
    });
}

// ---------------------------------------------------------------------------
// duffing-demo: the built-in softening-cubic showcase
// ---------------------------------------------------------------------------

/// Runs the softening Duffing example (K3 = -5000 N/m^3, |K| = 100 N/m,
/// |delta| = 10 mm) and emits its seven distinct configurations: six sampled
/// branch CSVs plus the merged point configuration Y13 = Y23.
inline int cmd_duffing_demo(const std::string& out_dir, double rod_length = 0.05,
                            int n_samples = kDefaultSamples, std::ostream& diag = std::cerr) {
    return detail::guarded(diag, [&] {
        const TargetForce force = DuffingForce{-5000.0};
        const double k_mag = 100.0;
        const double delta_mag = 0.01;
        const auto census = enumerate_configurations(force, k_mag, delta_mag, rod_length);

        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw IoError("cannot create output directory: " + out_dir);
        const std::filesystem::path dir(out_dir);

        for (const auto& b : census.branches) {
            if (b.status != BranchStatus::NonDegenerate) continue;
            const std::string name = to_string(label_of(b.id)) + ".csv";
            write_text_file(dir / name, samples_csv(sample_branch(b, n_samples)));
        }
        for (const auto& group : census.merged_points) {
            std::string name;
            for (BranchLabel label : group) name += (name.empty() ? "" : "_") + to_string(label);
            // The merged configuration is the single point (X, Y) = (0, 0).
            write_text_file(dir / (name + ".csv"), samples_csv({BranchSample{0.0, 0.0, 0.0}}));
        }
        write_text_file(dir / "census.json",
                        dump_report(detail::census_json(census, k_mag, delta_mag, rod_length)));
        log_info("duffing-demo: lenient count " + std::to_string(census.lenient_count));
        return kExitOk;
    });
}

}  // namespace bforge::cli
