#pragma once

#include <cmath>
#include <utility>

#include "bforge/errors.hpp"

namespace bforge {

/// Bisect a sign change of f on [lo, hi] down to absolute width tol.
/// Returns the midpoint of the final bracket.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw SearchError("bisect_root: no sign change on the bracket");
    for (int it = 0; it < 200 && std::abs(hi - lo) > tol; ++it) {
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

/// Bisect the edge of a region where a predicate holds. ok(t_in) must be
/// true and ok(t_out) false; shrinks the bracket to width tol and returns
/// {last satisfying point, first violating point}.
template <class P>
std::pair<double, double> bisect_boundary(P&& ok, double t_in, double t_out, double tol) {
    if (!ok(t_in)) throw SearchError("bisect_boundary: inner point does not satisfy predicate");
    if (ok(t_out)) throw SearchError("bisect_boundary: outer point satisfies predicate");
    for (int it = 0; it < 200 && std::abs(t_out - t_in) > tol; ++it) {
        const double mid = 0.5 * (t_in + t_out);
        if (ok(mid)) t_in = mid;
        else t_out = mid;
    }
    return {t_in, t_out};
}

}  // namespace bforge
