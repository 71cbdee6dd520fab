#pragma once

#include <cmath>
#include <string>

#include "bforge/errors.hpp"

namespace bforge {

/// Parameters of the general linear spring: a vertical spring of stiffness
/// k1 in parallel with a pair of oblique springs (stiffness k2) acting
/// through rigid rods of length L. With half_gap B = 0 the assembly behaves
/// as a plain linear spring of stiffness k1 - 2*k2, which may be positive,
/// negative or zero.
struct GlsmParams {
    double k1 = 0.0;              ///< vertical spring stiffness [N/m]
    double k2 = 0.0;              ///< oblique spring stiffness [N/m]
    double rod_length = 0.0;      ///< rod length L [m]; working range |Y| < L
    double half_gap = 0.0;        ///< half gap B between oblique spring ends [m]
    double natural_length = 0.0;  ///< oblique spring natural length L0 [m]; stored, not used
};

enum class StiffnessClass { Positive, Negative, Zero };

inline void validate(const GlsmParams& p) {
    if (!(std::isfinite(p.k1) && std::isfinite(p.k2) && std::isfinite(p.rod_length) &&
          std::isfinite(p.half_gap)))
        throw InvalidSpec("glsm: parameters must be finite");
    if (p.k1 < 0.0) throw InvalidSpec("glsm: k1 must be >= 0");
    if (p.k2 < 0.0) throw InvalidSpec("glsm: k2 must be >= 0");
    if (!(p.rod_length > 0.0)) throw InvalidSpec("glsm: rod_length must be > 0");
    if (p.half_gap < 0.0) throw InvalidSpec("glsm: half_gap must be >= 0");
}

namespace detail {

// L^2 - Y^2 with the lock guard: rejects |y| >= L and round-off slivers
// below 1e-15 * L^2, where the model is no longer defined.
inline double gap_squared(const GlsmParams& p, double y) {
    const double L = p.rod_length;
    if (!(std::abs(y) < L))
        throw DomainError("glsm: |y| >= rod_length (roller locked)");
    const double s = (L - y) * (L + y);
    if (s < 1e-15 * L * L)
        throw DomainError("glsm: displacement too close to lock");
    return s;
}

}  // namespace detail

/// Spring force at displacement y:
///   F(y) = k1*y - 2*k2*(1 - B/sqrt(L^2 - y^2))*y,  |y| < L.
inline double glsm_force(const GlsmParams& p, double y) {
    const double s = detail::gap_squared(p, y);
    return p.k1 * y - 2.0 * p.k2 * (1.0 - p.half_gap / std::sqrt(s)) * y;
}

/// Tangent stiffness dF/dy:
///   K(y) = k1 - 2*k2 + 2*k2*B*L^2 / (L^2 - y^2)^(3/2),  |y| < L.
/// Diverges to +inf as |y| -> L when B > 0.
inline double glsm_stiffness(const GlsmParams& p, double y) {
    const double s = detail::gap_squared(p, y);
    const double L2 = p.rod_length * p.rod_length;
    return p.k1 - 2.0 * p.k2 + 2.0 * p.k2 * p.half_gap * L2 / (s * std::sqrt(s));
}

/// Effective linear stiffness K = k1 - 2*k2 (the B = 0 stiffness).
/// A zero result is legal here; synthesis rejects K = 0 specs.
inline double effective_stiffness(const GlsmParams& p) {
    return p.k1 - 2.0 * p.k2;
}

/// Sign of the effective stiffness. Exact comparison, no epsilon: parameter
/// sets are constructed deliberately and near-zero designs stay classified
/// as the side they were built on.
inline StiffnessClass classify_stiffness(const GlsmParams& p) {
    if (p.k1 > 2.0 * p.k2) return StiffnessClass::Positive;
    if (p.k1 < 2.0 * p.k2) return StiffnessClass::Negative;
    return StiffnessClass::Zero;
}

inline std::string to_string(StiffnessClass c) {
    switch (c) {
        case StiffnessClass::Positive: return "positive";
        case StiffnessClass::Negative: return "negative";
        default: return "zero";
    }
}

}  // namespace bforge
