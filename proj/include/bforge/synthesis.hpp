#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bforge/bisect.hpp"
#include "bforge/errors.hpp"
#include "bforge/force.hpp"

namespace bforge {

/// One synthesis problem: realize the target force P with a linear spring of
/// effective stiffness k_eff, pre-deformed by delta, rods of length
/// rod_length. The designed track Y(X) solves K*Y*Y' = P with Y(0) = delta,
/// subject to |Y| < rod_length.
struct DesignSpec {
    TargetForce force;
    double k_eff = 0.0;       ///< effective stiffness K [N/m], K != 0
    double delta = 0.0;       ///< pre-deformation at X = 0 [m], |delta| < rod_length
    double rod_length = 0.0;  ///< rod length L [m]
};

inline void validate(const DesignSpec& s) {
    if (!(std::isfinite(s.k_eff) && std::isfinite(s.delta) && std::isfinite(s.rod_length)))
        throw InvalidSpec("design spec: values must be finite");
    if (s.k_eff == 0.0)
        throw InvalidSpec("design spec: effective stiffness violates {K | K != 0}");
    if (!(s.rod_length > 0.0)) throw InvalidSpec("design spec: rod_length must be > 0");
    if (!(std::abs(s.delta) < s.rod_length))
        throw InvalidSpec("design spec: need |delta| < rod_length");
}

enum class BranchSign { Upper, Lower };          ///< +sqrt vs -sqrt
enum class DeformCase { PreDeformed, ZeroDeformed };
enum class KSign { Positive, Negative };

/// Identity of one of the eight candidate track branches.
struct BranchId {
    BranchSign sign = BranchSign::Upper;
    DeformCase deform = DeformCase::PreDeformed;
    KSign k_sign = KSign::Positive;

    friend bool operator==(const BranchId&, const BranchId&) = default;
};

/// The eight branch labels. First index: 1 = upper, 2 = lower. Second:
/// 1 = (delta != 0, K > 0), 2 = (delta != 0, K < 0), 3 = (delta = 0, K > 0),
/// 4 = (delta = 0, K < 0).
enum class BranchLabel { Y11, Y12, Y13, Y14, Y21, Y22, Y23, Y24 };

inline constexpr std::array<BranchLabel, 8> kAllBranchLabels = {
    BranchLabel::Y11, BranchLabel::Y12, BranchLabel::Y13, BranchLabel::Y14,
    BranchLabel::Y21, BranchLabel::Y22, BranchLabel::Y23, BranchLabel::Y24};

inline BranchId branch_id_of(BranchLabel label) {
    switch (label) {
        case BranchLabel::Y11: return {BranchSign::Upper, DeformCase::PreDeformed, KSign::Positive};
        case BranchLabel::Y12: return {BranchSign::Upper, DeformCase::PreDeformed, KSign::Negative};
        case BranchLabel::Y13: return {BranchSign::Upper, DeformCase::ZeroDeformed, KSign::Positive};
        case BranchLabel::Y14: return {BranchSign::Upper, DeformCase::ZeroDeformed, KSign::Negative};
        case BranchLabel::Y21: return {BranchSign::Lower, DeformCase::PreDeformed, KSign::Positive};
        case BranchLabel::Y22: return {BranchSign::Lower, DeformCase::PreDeformed, KSign::Negative};
        case BranchLabel::Y23: return {BranchSign::Lower, DeformCase::ZeroDeformed, KSign::Positive};
        default:               return {BranchSign::Lower, DeformCase::ZeroDeformed, KSign::Negative};
    }
}

inline BranchLabel label_of(const BranchId& id) {
    const int row = id.sign == BranchSign::Upper ? 1 : 2;
    int col;
    if (id.deform == DeformCase::PreDeformed)
        col = id.k_sign == KSign::Positive ? 1 : 2;
    else
        col = id.k_sign == KSign::Positive ? 3 : 4;
    static constexpr BranchLabel table[2][4] = {
        {BranchLabel::Y11, BranchLabel::Y12, BranchLabel::Y13, BranchLabel::Y14},
        {BranchLabel::Y21, BranchLabel::Y22, BranchLabel::Y23, BranchLabel::Y24}};
    return table[row - 1][col - 1];
}

inline std::string to_string(BranchLabel label) {
    switch (label) {
        case BranchLabel::Y11: return "Y11";
        case BranchLabel::Y12: return "Y12";
        case BranchLabel::Y13: return "Y13";
        case BranchLabel::Y14: return "Y14";
        case BranchLabel::Y21: return "Y21";
        case BranchLabel::Y22: return "Y22";
        case BranchLabel::Y23: return "Y23";
        default: return "Y24";
    }
}

inline std::optional<BranchLabel> parse_branch_label(std::string_view s) {
    for (BranchLabel label : kAllBranchLabels)
        if (to_string(label) == s) return label;
    return std::nullopt;
}

enum class BranchStatus { NonDegenerate, DegeneratePoint, Nonexistent };

inline std::string to_string(BranchStatus s) {
    switch (s) {
        case BranchStatus::NonDegenerate: return "non_degenerate";
        case BranchStatus::DegeneratePoint: return "degenerate_point";
        default: return "nonexistent";
    }
}

/// Connected interval with per-endpoint closedness. An endpoint is closed
/// where the constraint U = 0 binds (roller crosses Y = 0) and open where
/// U = L^2 binds (lock). A truncated endpoint means the scan gave up before
/// any constraint bound: the domain continues beyond it (scan horizon hit,
/// or a tabulated force ran out of samples).
struct Interval {
    double lo = 0.0, hi = 0.0;
    bool lo_closed = true, hi_closed = true;
    bool lo_truncated = false, hi_truncated = false;

    double width() const { return hi - lo; }
    bool contains(double x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && !lo_closed && !lo_truncated) return false;
        if (x == hi && !hi_closed && !hi_truncated) return false;
        return true;
    }
};

/// Boundary-search knobs for compute_domain. Zero fields resolve against the
/// spec's rod length: step 1e-3*L, horizon 1e3*L, bisection tol 1e-12*max(L,1).
struct SearchConfig {
    double scan_step = 0.0;
    double scan_horizon = 0.0;
    double bisect_tol = 0.0;

    double step_for(double L) const { return scan_step > 0.0 ? scan_step : 1e-3 * L; }
    double horizon_for(double L) const { return scan_horizon > 0.0 ? scan_horizon : 1e3 * L; }
    double tol_for(double L) const {
        return bisect_tol > 0.0 ? bisect_tol : 1e-12 * std::max(L, 1.0);
    }
};

/// One solution branch of the design problem: its identity, spec, definition
/// domain and degeneracy status.
struct TrajectoryBranch {
    BranchId id;
    DesignSpec spec;
    Interval domain;
    BranchStatus status = BranchStatus::NonDegenerate;
};

namespace detail {

inline void check_consistent(const DesignSpec& spec, const BranchId& id) {
    validate(spec);
    const bool pre = spec.delta != 0.0;
    if (pre != (id.deform == DeformCase::PreDeformed))
        throw SpecMismatch("branch case does not match spec pre-deformation");
    const bool kpos = spec.k_eff > 0.0;
    if (kpos != (id.k_sign == KSign::Positive))
        throw SpecMismatch("branch K sign does not match spec stiffness");
}

}  // namespace detail

/// Radicand U(x) = delta^2 + 2*S(x)/K. The track is Y = +-sqrt(U), defined
/// while 0 <= U < L^2.
inline double radicand(const DesignSpec& spec, double x) {
    return spec.delta * spec.delta + 2.0 * potential(spec.force, x) / spec.k_eff;
}

/// Track height Y(x) for one branch: sign * sqrt(U(x)). Tiny negative U from
/// round-off at a closed endpoint clamps to zero; anything further out is a
/// domain violation.
inline double branch_value(const DesignSpec& spec, const BranchId& id, double x) {
    detail::check_consistent(spec, id);
    const double L2 = spec.rod_length * spec.rod_length;
    double u = radicand(spec, x);
    if (u < 0.0) {
        if (u < -1e-12 * L2) throw DomainError("branch_value: x outside branch domain (U < 0)");
        u = 0.0;
    }
    if (u >= L2) throw DomainError("branch_value: x outside branch domain (U >= L^2, lock)");
    const double y = std::sqrt(u);
    return id.sign == BranchSign::Upper ? y : -y;
}

/// Definition domain of a branch: the maximal connected interval around
/// X = 0 on which 0 <= U(x) < L^2, located by outward scanning plus
/// bisection. Returns the interval and its degeneracy status.
inline std::pair<Interval, BranchStatus> compute_domain(const DesignSpec& spec, const BranchId& id,
                                                        const SearchConfig& search = {}) {
    detail::check_consistent(spec, id);
    const double L = spec.rod_length;
    const double L2 = L * L;
    const double step = search.step_for(L);
    const double horizon = search.horizon_for(L);
    const double tol = search.tol_for(L);

    // The tabulated kind additionally limits scanning to its sample range.
    double eval_lo = -horizon, eval_hi = horizon;
    if (const auto* tab = std::get_if<TabulatedForce>(&spec.force)) {
        eval_lo = std::max(eval_lo, tab->grid().front());
        eval_hi = std::min(eval_hi, tab->grid().back());
    }

    const auto ok = [&](double x) {
        const double u = radicand(spec, x);
        return u >= 0.0 && u < L2;
    };
    if (!ok(0.0))
        throw SearchError("compute_domain: constraint violated at X = 0");

    struct Side {
        double end = 0.0;
        bool closed = true;
        bool truncated = false;
    };

    const auto scan_side = [&](double dir) {
        Side side;
        const double limit = dir > 0 ? eval_hi : -eval_lo;  // reach along this direction
        double x_ok = 0.0;
        for (long k = 1;; ++k) {
            double x = dir * static_cast<double>(k) * step;
            bool at_limit = false;
            if (std::abs(x) >= limit) {
                x = dir * limit;
                at_limit = true;
            }
            if (ok(x)) {
                x_ok = x;
                if (at_limit) {
                    side.end = x;
                    side.closed = true;
                    side.truncated = true;
                    return side;
                }
                continue;
            }
            const auto [x_in, x_out] = bisect_boundary(ok, x_ok, x, tol);
            side.end = x_in;
            // Which constraint failed just outside decides the endpoint kind:
            // U < 0 is the closed roller-at-centerline edge, U >= L^2 the lock.
            side.closed = radicand(spec, x_out) < 0.0;
            return side;
        }
    };

    const Side right = scan_side(+1.0);
    const Side left = scan_side(-1.0);

    Interval dom;
    dom.lo = left.end;
    dom.hi = right.end;
    dom.lo_closed = left.closed;
    dom.hi_closed = right.closed;
    dom.lo_truncated = left.truncated;
    dom.hi_truncated = right.truncated;

    BranchStatus status = BranchStatus::NonDegenerate;
    if (dom.width() < 1e-9 * std::max(L, 1.0)) {
        // True point solutions collapse onto the anchor X = 0.
        dom = Interval{0.0, 0.0, true, true, false, false};
        status = BranchStatus::DegeneratePoint;
    }
    return {dom, status};
}

/// Convenience: branch with its domain and status filled in.
inline TrajectoryBranch make_branch(const DesignSpec& spec, const BranchId& id,
                                    const SearchConfig& search = {}) {
    auto [dom, status] = compute_domain(spec, id, search);
    return TrajectoryBranch{id, spec, dom, status};
}

struct BranchSample {
    double x = 0.0;  ///< mass displacement [m]
    double y = 0.0;  ///< track height [m]
    double u = 0.0;  ///< radicand Y^2 [m^2]
};

/// n uniform samples across the branch domain. Open (and truncated)
/// endpoints are pulled inward by 1e-9 of the width so every sample is
/// strictly evaluable.
inline std::vector<BranchSample> sample_branch(const TrajectoryBranch& branch, int n) {
    if (branch.status != BranchStatus::NonDegenerate)
        throw DegenerateBranch("sample_branch: branch domain is a single point");
    if (n < 2) throw std::invalid_argument("sample_branch: need n >= 2");

    const double w = branch.domain.width();
    const double inset = 1e-9 * w;
    const double lo = branch.domain.lo + (branch.domain.lo_closed ? 0.0 : inset);
    const double hi = branch.domain.hi - (branch.domain.hi_closed ? 0.0 : inset);

    std::vector<BranchSample> out;
    out.reserve(static_cast<std::size_t>(n));
    const double L2 = branch.spec.rod_length * branch.spec.rod_length;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        double u = radicand(branch.spec, x);
        if (u < 0.0 && u >= -1e-12 * L2) u = 0.0;
        const double y = branch_value(branch.spec, branch.id, x);
        out.push_back({x, y, u});
    }
    return out;
}

inline std::vector<BranchSample> sample_branch(const DesignSpec& spec, const BranchId& id, int n,
                                               const SearchConfig& search = {}) {
    return sample_branch(make_branch(spec, id, search), n);
}

/// Recompose the target force from the track: K * Y * Y' with the analytic
/// Y' = P / (K * Y). At Y ~ 0 the product has a removable limit equal to P,
/// which is returned directly.
inline double roundtrip_force(const DesignSpec& spec, const BranchId& id, double x) {
    const double y = branch_value(spec, id, x);
    const double p = eval_force(spec.force, x);
    if (std::abs(y) > 1e-12 * spec.rod_length) {
        const double y_prime = p / (spec.k_eff * y);
        return spec.k_eff * y * y_prime;
    }
    return p;
}

/// Existence/degeneracy verdict for all eight candidate branches built from
/// one shared (|K|, |delta|) pair.
struct ConfigurationCensus {
    std::vector<TrajectoryBranch> branches;  ///< in label order Y11..Y14, Y21..Y24
    int strict_count = 0;    ///< branches with a non-degenerate domain
    int lenient_count = 0;   ///< strict + merged degenerate point configurations
    PotentialClass potential_class = PotentialClass::IdenticallyZero;
    std::vector<std::vector<BranchLabel>> merged_points;  ///< coincident degenerate groups
};

/// Build the full eight-branch census for a target force: branches Y11/Y21
/// use (+k, +delta), Y12/Y22 (-k, +delta), Y13/Y23 (+k, 0), Y14/Y24 (-k, 0).
inline ConfigurationCensus enumerate_configurations(const TargetForce& force, double k_mag,
                                                    double delta_mag, double rod_length,
                                                    const SearchConfig& search = {},
                                                    int n_probe = 1001) {
    if (!(k_mag > 0.0)) throw InvalidSpec("enumerate: k_mag must be > 0");
    if (!(delta_mag > 0.0 && delta_mag < rod_length))
        throw InvalidSpec("enumerate: need 0 < delta_mag < rod_length");

    ConfigurationCensus census;
    census.branches.reserve(kAllBranchLabels.size());
    for (BranchLabel label : kAllBranchLabels) {
        const BranchId id = branch_id_of(label);
        DesignSpec spec{force, id.k_sign == KSign::Positive ? k_mag : -k_mag,
                        id.deform == DeformCase::PreDeformed ? delta_mag : 0.0, rod_length};
        census.branches.push_back(make_branch(spec, id, search));
    }

    for (const auto& b : census.branches)
        if (b.status == BranchStatus::NonDegenerate) ++census.strict_count;

    // Degenerate upper/lower mirrors collapse onto the same point when their
    // track height there is zero; each such pair is one configuration.
    census.lenient_count = census.strict_count;
    for (KSign ks : {KSign::Positive, KSign::Negative}) {
        for (DeformCase dc : {DeformCase::PreDeformed, DeformCase::ZeroDeformed}) {
            std::vector<const TrajectoryBranch*> group;
            for (const auto& b : census.branches)
                if (b.status == BranchStatus::DegeneratePoint && b.id.k_sign == ks &&
                    b.id.deform == dc)
                    group.push_back(&b);
            if (group.empty()) continue;
            const bool coincide = group.size() == 2 && group[0]->spec.delta == 0.0;
            if (coincide) {
                census.lenient_count += 1;
                census.merged_points.push_back(
                    {label_of(group[0]->id), label_of(group[1]->id)});
            } else {
                census.lenient_count += static_cast<int>(group.size());
                for (const auto* b : group) census.merged_points.push_back({label_of(b->id)});
            }
        }
    }

    // Classify S where the zero-deformed branches live; their domains are
    // exactly the regions whose S sign decides existence. Fall back to the
    // always-present pre-deformed domains if all four are points.
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const auto& b : census.branches) {
        if (b.status != BranchStatus::NonDegenerate) continue;
        if (b.id.deform != DeformCase::ZeroDeformed) continue;
        lo = any ? std::min(lo, b.domain.lo) : b.domain.lo;
        hi = any ? std::max(hi, b.domain.hi) : b.domain.hi;
        any = true;
    }
    if (!any) {
        for (const auto& b : census.branches) {
            if (b.status != BranchStatus::NonDegenerate) continue;
            lo = any ? std::min(lo, b.domain.lo) : b.domain.lo;
            hi = any ? std::max(hi, b.domain.hi) : b.domain.hi;
            any = true;
        }
    }
    if (!any || !(lo < hi)) {
        lo = -rod_length;
        hi = rod_length;
    }
    census.potential_class = classify_potential(force, lo, hi, n_probe);
    return census;
}

}  // namespace bforge
