#pragma once

// Independent reference implementations used only by the test suites. These
// deliberately avoid the library's own search and quadrature code paths so
// that agreement is evidence, not tautology.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

/// Centered finite difference.
inline double fd_derivative(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Plain bisection on f with a sign change over [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) throw std::runtime_error("oracle::bisect: no sign change");
    while (std::abs(hi - lo) > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

inline double integrate_gl(const std::function<double(double)>& f, double a, double b,
                           int n = 128) {
    std::vector<double> nodes, weights;
    gauss_legendre(n, nodes, weights);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
}

/// Oscillation period of M*xdd = -S'(x) started at rest at amplitude A,
/// for an even potential S increasing on [0, A]:
///   T = 4 * int_0^A dx / sqrt((2/M)(S(A) - S(x))).
/// The substitution x = A sin(theta) removes the turning-point singularity;
/// Gauss-Legendre never evaluates the (finite-limit) endpoint itself.
inline double period_from_potential(const std::function<double(double)>& S, double mass,
                                    double amplitude) {
    const double SA = S(amplitude);
    const auto integrand = [&](double theta) {
        const double x = amplitude * std::sin(theta);
        return amplitude * std::cos(theta) / std::sqrt((2.0 / mass) * (SA - S(x)));
    };
    return 4.0 * integrate_gl(integrand, 0.0, M_PI / 2.0, 192);
}

/// Ascending-power polynomial evaluation (plain loop, not Horner).
inline double poly_eval(const std::vector<double>& coeffs, double x) {
    double sum = 0.0;
    double xn = 1.0;
    for (double c : coeffs) {
        sum += c * xn;
        xn *= x;
    }
    return sum;
}

/// Term-wise antiderivative of an ascending-power polynomial, zero at 0.
inline double poly_potential(const std::vector<double>& coeffs, double x) {
    double sum = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        sum += coeffs[k] * std::pow(x, static_cast<double>(k + 1)) / static_cast<double>(k + 1);
    return sum;
}

/// Random ascending-power polynomial of degree <= max_degree with
/// coefficients uniform in [-scale, scale].
inline std::vector<double> random_polynomial(std::mt19937& rng, int max_degree, double scale) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_real_distribution<double> coef(-scale, scale);
    std::vector<double> coeffs(static_cast<std::size_t>(deg(rng)) + 1);
    for (double& c : coeffs) c = coef(rng);
    return coeffs;
}

/// Closed-form track of the cubic family P = k3*x^3: value and half-width of
/// each branch, written directly from the algebraic solution.
struct CubicBranchOracle {
    double k3 = 0.0;
    double k_eff = 0.0;
    double delta = 0.0;
    double rod_length = 0.0;

    double radicand(double x) const {
        return delta * delta + k3 * x * x * x * x / (2.0 * k_eff);
    }

    double value(double x, bool upper) const {
        const double u = std::max(0.0, radicand(x));
        return upper ? std::sqrt(u) : -std::sqrt(u);
    }

    /// Half-width of the definition domain around 0, or +inf if unbounded.
    double half_width() const {
        const double ratio = k3 / (2.0 * k_eff);  // U = delta^2 + ratio * x^4
        const double L2 = rod_length * rod_length;
        if (ratio < 0.0) return std::pow(delta * delta / -ratio, 0.25);       // U = 0 edge
        if (ratio > 0.0) return std::pow((L2 - delta * delta) / ratio, 0.25); // lock edge
        return std::numeric_limits<double>::infinity();
    }
};

}  // namespace oracle
