#pragma once

#include <cmath>
#include <vector>

#include "bforge/errors.hpp"
#include "bforge/synthesis.hpp"

namespace bforge {

/// Conservative simulation setup for M*Xdd + P(X) = 0 on one branch.
struct SimConfig {
    double mass = 1.0;  ///< lumped mass M [kg]
    double dt = 1e-4;   ///< fixed timestep [s]
    double t_end = 1.0; ///< duration [s]
    double x0 = 0.0;    ///< initial displacement [m], inside the branch domain
    double v0 = 0.0;    ///< initial velocity [m/s]
};

enum class TerminationKind { Completed, LockEvent, DomainExit };

struct Termination {
    TerminationKind kind = TerminationKind::Completed;
    double time = 0.0;  ///< t_end, t_lock or t_exit
};

struct SimSample {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
    double e = 0.0;  ///< total energy 0.5*M*V^2 + S(X) [J]
};

struct SimResult {
    std::vector<SimSample> samples;
    Termination termination;
};

/// Restoring force of the designed system: -K*Y*Y' = -P(x), the reaction
/// opposing the applied force.
inline double restoring_force(const DesignSpec& spec, const BranchId& id, double x) {
    return -roundtrip_force(spec, id, x);
}

namespace detail {

inline BranchId implied_branch(const DesignSpec& spec) {
    return BranchId{BranchSign::Upper,
                    spec.delta != 0.0 ? DeformCase::PreDeformed : DeformCase::ZeroDeformed,
                    spec.k_eff > 0.0 ? KSign::Positive : KSign::Negative};
}

}  // namespace detail

/// Total energy 0.5*M*V^2 + S(X). Also evaluates the equivalent boundary
/// form 0.5*M*V^2 + 0.5*K*(Y^2 - delta^2) and requires the two to agree to
/// 1e-12 absolute; a disagreement means the synthesized track is broken.
inline double total_energy(const DesignSpec& spec, double x, double v, double mass) {
    const BranchId id = detail::implied_branch(spec);
    const double kinetic = 0.5 * mass * v * v;
    const double e_potential = kinetic + potential(spec.force, x);
    const double y = branch_value(spec, id, x);  // DomainError if x is outside
    const double e_boundary =
        kinetic + 0.5 * spec.k_eff * (y * y - spec.delta * spec.delta);
    if (std::abs(e_potential - e_boundary) > 1e-12)
        throw std::logic_error("total_energy: potential and boundary forms disagree");
    return e_potential;
}

/// Integrate M*Xdd = -P(X) with fixed-step velocity Verlet, recording every
/// step. A tentative step that leaves the branch domain is bisected in time
/// (to dt*1e-6) and the run terminates there: LockEvent at a lock boundary
/// (U = L^2), DomainExit where the track ends (U = 0 edge or a truncated
/// side).
inline SimResult simulate(const DesignSpec& spec, const BranchId& id, const SimConfig& cfg,
                          const SearchConfig& search = {}) {
    if (!(cfg.mass > 0.0)) throw ConfigError("simulate: mass must be > 0");
    if (!(cfg.dt > 0.0)) throw ConfigError("simulate: dt must be > 0");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("simulate: t_end must be >= 0");

    const TrajectoryBranch branch = make_branch(spec, id, search);
    if (branch.status != BranchStatus::NonDegenerate)
        throw DegenerateBranch("simulate: branch domain is a single point");
    if (!branch.domain.contains(cfg.x0))
        throw ConfigError("simulate: x0 outside branch domain");

    const auto inside = [&](double x) { return branch.domain.contains(x); };
    const auto accel = [&](double x) { return -eval_force(spec.force, x) / cfg.mass; };

    SimResult result;
    const long long n_steps =
        static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    result.samples.reserve(static_cast<std::size_t>(n_steps) + 1);

    double x = cfg.x0;
    double v = cfg.v0;
    double a = accel(x);
    result.samples.push_back({0.0, x, v, total_energy(spec, x, v, cfg.mass)});

    for (long long step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * cfg.dt;
        const double x_next = x + v * cfg.dt + 0.5 * a * cfg.dt * cfg.dt;
        if (!inside(x_next)) {
            // Freeze the acceleration and bisect the ballistic sub-step for
            // the crossing time.
            const auto pos = [&](double tau) { return x + v * tau + 0.5 * a * tau * tau; };
            const auto [tau_in, tau_out] = bisect_boundary(
                [&](double tau) { return inside(pos(tau)); }, 0.0, cfg.dt, cfg.dt * 1e-6);
            (void)tau_out;
            const double xb = pos(tau_in);
            const double vb = v + a * tau_in;
            const double tb = t + tau_in;
            result.samples.push_back({tb, xb, vb, total_energy(spec, xb, vb, cfg.mass)});
            const bool exits_high =
                std::abs(xb - branch.domain.hi) < std::abs(xb - branch.domain.lo);
            const bool lock = exits_high ? !branch.domain.hi_closed && !branch.domain.hi_truncated
                                         : !branch.domain.lo_closed && !branch.domain.lo_truncated;
            result.termination = {lock ? TerminationKind::LockEvent : TerminationKind::DomainExit,
                                  tb};
            return result;
        }
        const double a_next = accel(x_next);
        v += 0.5 * (a + a_next) * cfg.dt;
        x = x_next;
        a = a_next;
        result.samples.push_back(
            {static_cast<double>(step + 1) * cfg.dt, x, v, total_energy(spec, x, v, cfg.mass)});
    }
    result.termination = {TerminationKind::Completed, static_cast<double>(n_steps) * cfg.dt};
    return result;
}

}  // namespace bforge
