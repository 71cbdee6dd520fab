#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bforge/errors.hpp"

namespace bforge {

namespace detail {

// Horner evaluation, coefficients in ascending powers.
inline double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

}  // namespace detail

/// Target force given as a polynomial, coefficients c0..cn in ascending
/// powers [N/m^k].
struct PolynomialForce {
    std::vector<double> coeffs;
};

/// Pure-cubic force P(X) = k3 * X^3. Semantically identical to
/// PolynomialForce{{0, 0, 0, k3}} and evaluated through the same path.
struct DuffingForce {
    double k3 = 0.0;  ///< cubic coefficient [N/m^3]
};

/// Force sampled on a strictly increasing grid, evaluated by linear
/// interpolation. The grid must have >= 2 samples and span X = 0.
class TabulatedForce {
public:
    TabulatedForce(std::vector<double> xs, std::vector<double> ps)
        : x_(std::move(xs)), p_(std::move(ps)) {
        if (x_.size() != p_.size() || x_.size() < 2)
            throw InvalidSpec("tabulated force: need >= 2 (x, p) samples");
        for (std::size_t i = 0; i + 1 < x_.size(); ++i)
            if (!(x_[i] < x_[i + 1]))
                throw InvalidSpec("tabulated force: x samples must be strictly increasing");
        if (x_.front() > 0.0 || x_.back() < 0.0)
            throw InvalidSpec("tabulated force: sample range must include x = 0");
        // Cumulative trapezoid integral at the nodes, from the left edge.
        cum_.resize(x_.size(), 0.0);
        for (std::size_t i = 1; i < x_.size(); ++i)
            cum_[i] = cum_[i - 1] + 0.5 * (p_[i - 1] + p_[i]) * (x_[i] - x_[i - 1]);
        raw_at_zero_ = raw_integral(0.0);
    }

    static TabulatedForce from_pairs(const std::vector<std::pair<double, double>>& samples) {
        std::vector<double> xs, ps;
        xs.reserve(samples.size());
        ps.reserve(samples.size());
        for (const auto& [x, p] : samples) {
            xs.push_back(x);
            ps.push_back(p);
        }
        return TabulatedForce(std::move(xs), std::move(ps));
    }

    const std::vector<double>& grid() const { return x_; }
    const std::vector<double>& values() const { return p_; }

    double eval(double x) const {
        const std::size_t i = segment(x);
        const double t = (x - x_[i]) / (x_[i + 1] - x_[i]);
        return p_[i] + t * (p_[i + 1] - p_[i]);
    }

    /// Integral of the interpolated force from 0 to x. Exactly consistent
    /// with eval(): the derivative of this integral is the interpolant.
    double integral_from_zero(double x) const { return raw_integral(x) - raw_at_zero_; }

private:
    std::size_t segment(double x) const {
        if (x < x_.front() || x > x_.back())
            throw RangeError("tabulated force: x outside sample range");
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        if (i > 0) --i;
        if (i + 1 >= x_.size()) i = x_.size() - 2;
        return i;
    }

    double raw_integral(double x) const {
        const std::size_t i = segment(x);
        const double h = x - x_[i];
        return cum_[i] + 0.5 * (p_[i] + eval(x)) * h;
    }

    std::vector<double> x_, p_;
    std::vector<double> cum_;
    double raw_at_zero_ = 0.0;
};

using TargetForce = std::variant<PolynomialForce, DuffingForce, TabulatedForce>;

/// P(x).
inline double eval_force(const TargetForce& f, double x) {
    return std::visit(
        [x](const auto& g) -> double {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, PolynomialForce>) {
                return detail::horner(g.coeffs, x);
            } else if constexpr (std::is_same_v<T, DuffingForce>) {
                // Horner order of {0, 0, 0, k3}, rounding-identical to the
                // polynomial path.
                return ((g.k3 * x) * x) * x;
            } else {
                return g.eval(x);
            }
        },
        f);
}

/// Potential S(x) = integral of P from 0 to x, with S(0) = 0 exactly.
/// Term-wise antiderivative for polynomial kinds, trapezoid on the sample
/// grid for tabulated forces.
inline double potential(const TargetForce& f, double x) {
    return std::visit(
        [x](const auto& g) -> double {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, PolynomialForce>) {
                // Horner on the antiderivative, whose constant term is 0.
                double acc = 0.0;
                for (std::size_t k = g.coeffs.size(); k-- > 0;)
                    acc = acc * x + g.coeffs[k] / static_cast<double>(k + 1);
                return acc * x;
            } else if constexpr (std::is_same_v<T, DuffingForce>) {
                return (((g.k3 / 4.0) * x) * x) * x * x;
            } else {
                return g.integral_from_zero(x);
            }
        },
        f);
}

enum class PotentialClass { NonNegative, NonPositive, SignChanging, IdenticallyZero };

inline std::string to_string(PotentialClass c) {
    switch (c) {
        case PotentialClass::NonNegative: return "non_negative";
        case PotentialClass::NonPositive: return "non_positive";
        case PotentialClass::SignChanging: return "sign_changing";
        default: return "identically_zero";
    }
}

/// Sign pattern of S over [lo, hi], probed at n uniformly spaced points.
/// Values within 1e-12 of the largest |S| seen count as zero, so the zero
/// force classifies as IdenticallyZero instead of picking up round-off.
inline PotentialClass classify_potential(const TargetForce& f, double lo, double hi,
                                         int n_probe = 1001) {
    if (n_probe < 101) throw std::invalid_argument("classify_potential: n_probe must be >= 101");
    if (!(lo < hi)) throw std::invalid_argument("classify_potential: empty probe range");
    if (lo > 0.0 || hi < 0.0) throw std::invalid_argument("classify_potential: range must contain 0");

    std::vector<double> s(static_cast<std::size_t>(n_probe));
    double max_abs = 0.0;
    for (int i = 0; i < n_probe; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_probe - 1);
        s[static_cast<std::size_t>(i)] = potential(f, x);
        max_abs = std::max(max_abs, std::abs(s[static_cast<std::size_t>(i)]));
    }
    if (max_abs == 0.0) return PotentialClass::IdenticallyZero;

    const double band = 1e-12 * max_abs;
    bool has_pos = false, has_neg = false;
    for (double v : s) {
        if (v > band) has_pos = true;
        else if (v < -band) has_neg = true;
    }
    if (has_pos && has_neg) return PotentialClass::SignChanging;
    if (has_pos) return PotentialClass::NonNegative;
    if (has_neg) return PotentialClass::NonPositive;
    return PotentialClass::IdenticallyZero;
}

}  // namespace bforge
