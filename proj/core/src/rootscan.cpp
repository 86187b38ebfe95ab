#include "systolica/numerics/rootscan.hpp"

#include <cmath>
#include <cstddef>

#include "systolica/errors.hpp"

namespace systolica { namespace num {

double bisect_level(const std::function<double(double)>& f, double a, double b,
                    double target, double x_tol) {
    double fa = f(a) - target;
    double fb = f(b) - target;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw DomainError("bisect_level: bracket does not straddle the target");
    while (b - a > x_tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;  // double resolution reached
        const double fm = f(m) - target;
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

LevelSetResult scan_level_set(const std::function<double(double)>& f,
                              const std::vector<double>& knots,
                              const std::vector<double>& values,
                              double target, double zero_tol, double x_tol) {
    LevelSetResult out;
    const std::size_t n = knots.size();
    if (n != values.size() || n < 2) throw DomainError("scan_level_set: bad knot table");

    // Node classification: -1, 0 (within zero_tol), +1.
    std::vector<int> cls(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - target;
        cls[i] = (std::abs(d) <= zero_tol) ? 0 : (d > 0.0 ? 1 : -1);
    }

    std::size_t i = 0;
    while (i < n) {
        if (cls[i] == 0) {
            std::size_t j = i;
            while (j + 1 < n && cls[j + 1] == 0) ++j;
            if (j > i)
                out.plateaus.push_back({knots[i], knots[j]});
            else
                out.roots.push_back(knots[i]);
            i = j + 1;
            continue;
        }
        if (i + 1 < n && cls[i + 1] != 0 && cls[i + 1] != cls[i])
            out.roots.push_back(bisect_level(f, knots[i], knots[i + 1], target, x_tol));
        ++i;
    }
    return out;
}

}} // namespace systolica::num
