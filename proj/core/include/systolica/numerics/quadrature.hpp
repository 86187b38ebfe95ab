#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "systolica/errors.hpp"

namespace systolica { namespace num {

namespace detail {

template <typename F>
double simpson_recurse(const F& f, double a, double fa, double b, double fb,
                       double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left  = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    // Second acceptance branch: once the error estimate is at the rounding
    // floor of the panel sums themselves, subdividing further only chases
    // noise, so stop even if the requested tolerance is tighter than that.
    const double floor = 1e-14 * (std::abs(left) + std::abs(right));
    if (std::abs(err) <= std::max(tol, floor) ||
        (b - a) < 1e-14 * (1.0 + std::abs(a) + std::abs(b)))
        return left + right + err;
    if (depth <= 0)
        throw QuadratureError("adaptive quadrature: recursion depth exhausted");
    return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
         + simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
    if (!(b >= a)) throw DomainError("adaptive_simpson: b < a");
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_recurse(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

/// Integrates f over [a, b], forcing subdivisions at the interior knots in `splits`
/// (kinks of the integrand must be listed there for the error estimate to be honest).
template <typename F>
double integrate_with_splits(const F& f, double a, double b,
                             std::vector<double> splits, double tol) {
    splits.push_back(a);
    splits.push_back(b);
    std::sort(splits.begin(), splits.end());
    double total = 0.0;
    double lo = a;
    for (double s : splits) {
        if (s <= lo || s > b) continue;
        total += adaptive_simpson(f, lo, s, tol * (s - lo) / (b - a));
        lo = s;
    }
    if (lo < b) total += adaptive_simpson(f, lo, b, tol * (b - lo) / (b - a));
    return total;
}

}} // namespace systolica::num
