#pragma once

#include <functional>
#include <vector>

namespace systolica { namespace num {

struct PlateauInterval {
    double lo, hi;
};

struct LevelSetResult {
    std::vector<double> roots;               ///< isolated solutions of f(x) = target
    std::vector<PlateauInterval> plateaus;   ///< maximal intervals where f == target identically
};

/// Solves f(x) = target on the knot range. `values[i]` must equal f(knots[i]).
/// Sign-change brackets between adjacent knots are refined by bisection to x_tol;
/// runs of |f - target| <= zero_tol spanning more than one knot are reported as
/// plateaus (single near-zero knots count as isolated roots).
LevelSetResult scan_level_set(const std::function<double(double)>& f,
                              const std::vector<double>& knots,
                              const std::vector<double>& values,
                              double target, double zero_tol, double x_tol);

/// Bisection for f(x) = target on a bracket with f(a)-target and f(b)-target of
/// opposite sign; returns the midpoint of the final bracket.
double bisect_level(const std::function<double(double)>& f, double a, double b,
                    double target, double x_tol);

}} // namespace systolica::num
