#include "systolica/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "systolica/errors.hpp"
#include "systolica/numerics/ode.hpp"
#include "systolica/numerics/quadrature.hpp"
#include "systolica/numerics/rootscan.hpp"

namespace systolica {

const char* to_string(GeodesicKind k) {
    switch (k) {
        case GeodesicKind::meridian: return "meridian";
        case GeodesicKind::equator: return "equator";
        case GeodesicKind::oscillating: return "oscillating";
    }
    return "?";
}

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 200 && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Uniform grid plus spline knots over [0, L].
std::vector<double> metric_knots(const RevolutionMetric& m, int n) {
    std::vector<double> knots;
    knots.reserve(static_cast<std::size_t>(n) + m.profile_curve().breakpoints().size());
    for (int i = 0; i <= n; ++i) knots.push_back(m.length() * i / n);
    for (double bp : m.profile_curve().breakpoints())
        if (bp > 0.0 && bp < m.length()) knots.push_back(bp);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    return knots;
}

} // namespace

RevolutionMetric::RevolutionMetric(double L, BranchFunction rho)
    : L_(L), rho_(std::move(rho)) {
    if (!(L_ > 0.0) || !std::isfinite(L_))
        throw ConstructionError("revolution metric: meridian length must be positive");
    if (std::abs(rho_.domain_lo()) > 1e-12 * L_ || std::abs(rho_.domain_hi() - L_) > 1e-12 * L_)
        throw ConstructionError("revolution metric: profile curve must live on [0, L]");
}

double RevolutionMetric::rho_argmax() const {
    const std::vector<double> knots = metric_knots(*this, 2048);
    std::size_t best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const double v = rho(knots[i]);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    const double lo = knots[best == 0 ? 0 : best - 1];
    const double hi = knots[std::min(best + 1, knots.size() - 1)];
    return golden_max([this](double x) { return rho(x); }, lo, hi);
}

double RevolutionMetric::rho_max() const { return rho(rho_argmax()); }

ValidationReport RevolutionMetric::validate(int grid_density) const {
    ValidationReport report;
    const int n = std::max(grid_density, 16);
    double scale = 1.0;
    for (int i = 0; i <= n; ++i) scale = std::max(scale, std::abs(rho(L_ * i / n)));

    const double pole_v = std::max(std::abs(rho(0.0)), std::abs(rho(L_)));
    report.checks.push_back({"pole-values", pole_v <= 1e-12 * scale,
                             1e-12 * scale - pole_v,
                             "max |rho| at the poles = " + fmt(pole_v)});
    const double slope_err = std::max(std::abs(rho_prime(0.0) - 1.0),
                                      std::abs(rho_prime(L_) + 1.0));
    report.checks.push_back({"pole-slopes", slope_err <= 1e-9, 1e-9 - slope_err,
                             "max pole slope deviation = " + fmt(slope_err)});
    double min_rho = std::numeric_limits<double>::infinity();
    double arg = 0.0;
    for (int i = 1; i < n; ++i) {
        const double x = L_ * i / n;
        const double v = rho(x);
        if (v < min_rho) {
            min_rho = v;
            arg = x;
        }
    }
    report.checks.push_back({"interior-positivity", min_rho > 1e-9 * scale, min_rho,
                             "min rho = " + fmt(min_rho) + " at x = " + fmt(arg)});
    return report;
}

RevolutionMetric round_sphere_metric(int nodes) {
    return perturbed_sphere_metric(0.0, nodes);
}

RevolutionMetric perturbed_sphere_metric(double A, int nodes) {
    if (nodes < 8) throw DomainError("perturbed_sphere_metric: need at least 8 nodes");
    std::vector<double> xs(nodes), vals(nodes), ders(nodes);
    for (int i = 0; i < nodes; ++i) {
        const double x = kPi * i / (nodes - 1);
        const double s = std::sin(x);
        xs[i] = x;
        vals[i] = s * (1.0 + A * s * s);
        ders[i] = std::cos(x) * (1.0 + 3.0 * A * s * s);
    }
    vals.front() = 0.0;  // pin the poles exactly
    vals.back() = 0.0;
    return RevolutionMetric(kPi, BranchFunction::cubic_hermite(xs, vals, ders));
}

ClairautData clairaut_data(const RevolutionMetric& metric, double c, double tol) {
    const double a = std::abs(c);
    const double L = metric.length();
    if (a == 0.0) return {c, 0.0, L, 0.0, 2.0 * L};

    const double x_top = metric.rho_argmax();
    const double rho_m = metric.rho(x_top);
    if (!(a < rho_m * (1.0 - 1e-12)))
        throw DomainError("clairaut_data: |c| = " + fmt(a) +
                          " reaches the top of rho = " + fmt(rho_m));

    // Band endpoints: the roots of rho = |c| on both sides of the maximum
    // (the band is assumed connected, i.e. rho has no other dips below |c|
    // between them).
    const std::vector<double> knots = metric_knots(metric, 2048);
    const auto rho_f = [&metric](double x) { return metric.rho(x); };
    const double x_tol = 1e-13 * std::max(1.0, L);
    std::size_t i_top = 0;
    while (i_top + 1 < knots.size() && knots[i_top + 1] <= x_top) ++i_top;

    // A couple of Newton steps after the bisection: the turning points enter
    // the band integrands through the difference rho(x) - |c|, so their
    // residual must sit at rounding level, not merely below x_tol.
    const auto polish = [&](double x, double lo, double hi) {
        for (int it = 0; it < 2; ++it) {
            const double dr = metric.rho_prime(x);
            if (std::abs(dr) < 1e-12) break;
            const double next = std::clamp(x - (metric.rho(x) - a) / dr, lo, hi);
            if (next == x) break;
            x = next;
        }
        return x;
    };

    double x_minus = 0.0, x_plus = L;
    for (std::size_t i = i_top + 1; i-- > 0;) {
        if (metric.rho(knots[i]) <= a) {
            x_minus = (metric.rho(knots[i]) == a)
                          ? knots[i]
                          : polish(num::bisect_level(rho_f, knots[i], knots[i + 1], a, x_tol),
                                   knots[i], knots[i + 1]);
            break;
        }
    }
    for (std::size_t i = i_top + 1; i < knots.size(); ++i) {
        if (metric.rho(knots[i]) <= a) {
            x_plus = (metric.rho(knots[i]) == a)
                         ? knots[i]
                         : polish(num::bisect_level(rho_f, knots[i - 1], knots[i], a, x_tol),
                                  knots[i - 1], knots[i]);
            break;
        }
    }

    const double slope_lo = metric.rho_prime(x_minus);
    const double slope_hi = metric.rho_prime(x_plus);
    if (std::abs(slope_lo) <= 1e-8 || std::abs(slope_hi) <= 1e-8)
        throw SingularLevelError("clairaut_data: degenerate turning point at c = " + fmt(c) +
                                 " (rho' = " + fmt(slope_lo) + " / " + fmt(slope_hi) + ")");

    // One traversal of the band, regularized by u^2 = x - x_minus on the left
    // half and v^2 = x_plus - x on the right: with
    // h(u) = (rho(x) - |c|) / u^2 -> rho'(x_minus) the integrands are smooth.
    const double xm = 0.5 * (x_minus + x_plus);

    const auto piece = [&](double sign_end, double x_end, double span) {
        // sign_end = +1: x = x_end + u^2 (left end); -1: x = x_end - u^2.
        const double u_hi = std::sqrt(span);
        const Side inward = sign_end > 0 ? Side::right : Side::left;
        // Force subdivisions at the spline knots mapped into u, where the
        // integrands lose smoothness; between them convergence is fast.
        std::vector<double> offs;
        for (double bp : metric.profile_curve().breakpoints()) {
            const double d = sign_end * (bp - x_end);
            if (d > 0.0 && d < span) offs.push_back(d);
        }
        std::sort(offs.begin(), offs.end());
        std::vector<double> u_splits;
        for (double d : offs) u_splits.push_back(std::sqrt(d));

        // Near the turning point the direct quotient (rho(x) - a) / u^2 has
        // no significant digits left, and feeding that noise to the adaptive
        // quadrature stalls it.  The spline is an exact cubic on each piece,
        // so expand rho - a in zeta = u^2 about the turning point instead,
        // transporting the value offset knot to knot; past zeta_cover the
        // quotient is well-conditioned again and the direct form takes over.
        struct TaylorPiece { double zeta, v, s, c2, c3; };
        std::vector<TaylorPiece> taylor;
        const double zeta_need = std::pow(1e-3 * std::max(1.0, u_hi), 2);
        double zeta_cover = span;
        {
            double zeta = 0.0, v = 0.0;
            std::size_t idx = 0;
            for (;;) {
                while (idx < offs.size() && offs[idx] <= zeta * (1.0 + 1e-15)) ++idx;
                const double next = idx < offs.size() ? offs[idx] : span;
                const double x_j = x_end + sign_end * zeta;
                const double s = sign_end * metric.rho_prime(x_j, inward);
                const double c2 =
                    0.5 * metric.profile_curve().second_derivative(x_j, inward);
                const double w = 0.5 * (next - zeta);
                const double c3 =
                    (metric.profile_curve().second_derivative(x_end +
                                                              sign_end * (zeta + w)) -
                     2.0 * c2) /
                    (6.0 * w);
                taylor.push_back({zeta, v, s, c2, c3});
                if (next >= zeta_need || idx >= offs.size()) {
                    zeta_cover = next;
                    break;
                }
                const double dz = next - zeta;
                v += dz * (s + dz * (c2 + dz * c3));
                zeta = next;
            }
        }
        const auto h = [&](double u) {
            const double zeta = u * u;
            if (zeta < zeta_cover) {
                std::size_t j = 0;
                while (j + 1 < taylor.size() && taylor[j + 1].zeta <= zeta) ++j;
                const TaylorPiece& tp = taylor[j];
                const double xi = zeta - tp.zeta;
                if (j == 0) return tp.s + xi * (tp.c2 + xi * tp.c3);
                return (tp.v + xi * (tp.s + xi * (tp.c2 + xi * tp.c3))) / zeta;
            }
            const double x = x_end + sign_end * zeta;
            return (metric.rho(x) - a) / zeta;
        };
        const auto arc_integrand = [&](double u) {
            const double x = x_end + sign_end * u * u;
            const double r = metric.rho(x);
            const double hh = h(u);
            if (!(hh > 0.0))
                throw SingularLevelError("clairaut_data: band integrand degenerate at x = " +
                                         fmt(x));
            return 2.0 * r / std::sqrt(hh * (r + a));
        };
        const auto theta_integrand = [&](double u) {
            const double x = x_end + sign_end * u * u;
            const double r = metric.rho(x);
            const double hh = h(u);
            if (!(hh > 0.0))
                throw SingularLevelError("clairaut_data: band integrand degenerate at x = " +
                                         fmt(x));
            return 2.0 * c / (r * std::sqrt(hh * (r + a)));
        };
        const double arc =
            num::integrate_with_splits(arc_integrand, 0.0, u_hi, u_splits, 0.25 * tol);
        const double dth =
            num::integrate_with_splits(theta_integrand, 0.0, u_hi, u_splits, 0.25 * tol);
        return std::pair<double, double>(arc, dth);
    };

    const auto [arc_l, dth_l] = piece(+1.0, x_minus, xm - x_minus);
    const auto [arc_r, dth_r] = piece(-1.0, x_plus, x_plus - xm);

    ClairautData out;
    out.c = c;
    out.x_minus = x_minus;
    out.x_plus = x_plus;
    out.arc_length = 2.0 * (arc_l + arc_r);
    out.delta_theta = 2.0 * (dth_l + dth_r);
    return out;
}

namespace {

struct BandTable {
    std::vector<double> c;
    std::vector<double> dtheta;
    std::vector<double> arc;
};

BandTable band_table(const RevolutionMetric& metric, int n) {
    BandTable t;
    const double rho_m = metric.rho_max();
    t.c.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double c = rho_m * (0.001 + 0.998 * (i + 0.5) / n);
        const ClairautData d = clairaut_data(metric, c);
        t.c.push_back(c);
        t.dtheta.push_back(d.delta_theta);
        t.arc.push_back(d.arc_length);
    }
    return t;
}

std::vector<ClosedGeodesic> equator_geodesics(const RevolutionMetric& metric) {
    std::vector<ClosedGeodesic> out;
    const std::vector<double> knots = metric_knots(metric, 2048);
    std::vector<double> slope(knots.size());
    double slope_scale = 1.0;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        slope[i] = metric.rho_prime(knots[i]);
        slope_scale = std::max(slope_scale, std::abs(slope[i]));
    }
    const auto f = [&metric](double x) { return metric.rho_prime(x); };
    const num::LevelSetResult hits = num::scan_level_set(
        f, knots, slope, 0.0, 1e-9 * slope_scale, 1e-12 * std::max(1.0, metric.length()));
    std::vector<double> xs = hits.roots;
    for (const num::PlateauInterval& pl : hits.plateaus) xs.push_back(0.5 * (pl.lo + pl.hi));
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
        if (x <= 0.0 || x >= metric.length()) continue;
        ClosedGeodesic g;
        g.kind = GeodesicKind::equator;
        g.c = metric.rho(x);
        g.length = 2.0 * kPi * metric.rho(x);
        out.push_back(g);
    }
    return out;
}

void require_valid(const RevolutionMetric& metric) {
    const ValidationReport rep = metric.validate(256);
    if (!rep.all_passed()) {
        for (const CheckResult& c : rep.checks)
            if (!c.passed)
                throw AdmissibilityError("revolution metric failed '" + c.name + "' (" +
                                         c.detail + ")");
    }
}

/// Oscillating closed geodesics with exactly q oscillations, located on the
/// cached band table.
std::vector<ClosedGeodesic> scan_band_for_q(const RevolutionMetric& metric,
                                            const BandTable& table, long long q) {
    std::vector<ClosedGeodesic> out;
    const double th_min = *std::min_element(table.dtheta.begin(), table.dtheta.end());
    const double th_max = *std::max_element(table.dtheta.begin(), table.dtheta.end());
    const double zero_tol = 1e-6 * 2.0 * kPi;
    const double c_tol = 1e-10 * std::max(1.0, table.c.back());
    const auto dtheta_f = [&metric](double c) { return clairaut_data(metric, c).delta_theta; };

    const long long p_lo =
        static_cast<long long>(std::ceil((q * (th_min - zero_tol)) / (2.0 * kPi)));
    const long long p_hi =
        static_cast<long long>(std::floor((q * (th_max + zero_tol)) / (2.0 * kPi)));
    for (long long p = p_lo; p <= p_hi; ++p) {
        if (std::gcd(std::llabs(p), q) != 1) continue;
        const double target = 2.0 * kPi * static_cast<double>(p) / static_cast<double>(q);
        const num::LevelSetResult hits =
            num::scan_level_set(dtheta_f, table.c, table.dtheta, target, zero_tol, c_tol);
        std::vector<double> cs = hits.roots;
        for (const num::PlateauInterval& pl : hits.plateaus) cs.push_back(0.5 * (pl.lo + pl.hi));
        for (double c : cs) {
            const ClairautData d = clairaut_data(metric, c);
            ClosedGeodesic g;
            g.kind = GeodesicKind::oscillating;
            g.c = c;
            g.p = p;
            g.q = q;
            g.arc = d.arc_length;
            g.delta_theta = d.delta_theta;
            g.length = static_cast<double>(q) * d.arc_length;
            out.push_back(g);
        }
    }
    return out;
}

ClosedGeodesic meridian_geodesic(const RevolutionMetric& metric) {
    ClosedGeodesic g;
    g.kind = GeodesicKind::meridian;
    g.length = 2.0 * metric.length();
    g.arc = 2.0 * metric.length();
    return g;
}

} // namespace

std::vector<ClosedGeodesic> closed_geodesics(const RevolutionMetric& metric, int q_max,
                                             int grid_density) {
    if (q_max < 1) throw DomainError("closed_geodesics: q_max must be >= 1");
    require_valid(metric);
    std::vector<ClosedGeodesic> out;
    out.push_back(meridian_geodesic(metric));
    for (ClosedGeodesic& g : equator_geodesics(metric)) out.push_back(g);
    const BandTable table = band_table(metric, std::max(grid_density, 64));
    for (long long q = 1; q <= q_max; ++q)
        for (ClosedGeodesic& g : scan_band_for_q(metric, table, q)) out.push_back(g);
    std::sort(out.begin(), out.end(), [](const ClosedGeodesic& a, const ClosedGeodesic& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.c < b.c;
    });
    return out;
}

GeodesicSystoleResult geodesic_systole(const RevolutionMetric& metric, int grid_density) {
    require_valid(metric);
    const BandTable table = band_table(metric, std::max(grid_density, 64));
    const double min_arc = *std::min_element(table.arc.begin(), table.arc.end());
    if (!(min_arc > 0.0))
        throw AdmissibilityError("geodesic_systole: nonpositive oscillation arclength");
    const double cert = 0.99 * min_arc;

    ClosedGeodesic best = meridian_geodesic(metric);
    for (const ClosedGeodesic& g : equator_geodesics(metric))
        if (g.length < best.length) best = g;

    constexpr int q_cap = 64;
    for (int q = 1; q <= q_cap; ++q) {
        for (const ClosedGeodesic& g : scan_band_for_q(metric, table, q))
            if (g.length < best.length - 1e-12 * std::max(1.0, best.length)) best = g;
        if (best.length <= q * cert)
            return {best.length, best, q, q * cert};
    }
    throw SearchError("geodesic_systole: certification did not terminate before the q cap");
}

double surface_area(const RevolutionMetric& metric, double tol) {
    std::vector<double> splits;
    for (double bp : metric.profile_curve().breakpoints())
        if (bp > 0.0 && bp < metric.length()) splits.push_back(bp);
    const auto f = [&metric](double x) { return metric.rho(x); };
    return 2.0 * kPi * num::integrate_with_splits(f, 0.0, metric.length(), splits, tol);
}

InequalityReport finsler_corollary_check(const RevolutionMetric& metric, int grid_density) {
    const GeodesicSystoleResult sys = geodesic_systole(metric, grid_density);
    const double area = surface_area(metric);
    InequalityReport rep;
    rep.e = 2;
    rep.systole = sys.value;
    rep.volume = kPi * area;
    rep.ratio = sys.value * sys.value / rep.volume;
    rep.bound = 1.0;
    rep.margin = rep.bound - rep.ratio;
    rep.equality_flag = std::abs(rep.margin) <= 1e-8 * std::max(rep.bound, rep.ratio);
    rep.branch = "revolution";
    if (rep.margin < -1e-9)
        throw TheoremError("finsler_corollary_check: sys^2 = " + fmt(sys.value * sys.value) +
                           " exceeds pi * area = " + fmt(rep.volume));
    return rep;
}

namespace {

num::State<3> geodesic_rhs(const RevolutionMetric& metric, const num::State<3>& y) {
    const double r = metric.rho(y[0]);
    const double rp = metric.rho_prime(y[0]);
    const double sin_phi = std::sin(y[2]);
    return {std::cos(y[2]), sin_phi / r, -rp * sin_phi / r};
}

} // namespace

std::vector<std::array<double, 4>> integrate_geodesic(const RevolutionMetric& metric,
                                                      double x0, double phi0, double length,
                                                      int samples) {
    if (!(x0 > 0.0) || !(x0 < metric.length()))
        throw DomainError("integrate_geodesic: x0 must lie strictly between the poles");
    if (!(length > 0.0)) throw DomainError("integrate_geodesic: length must be positive");
    if (samples < 2) throw DomainError("integrate_geodesic: need at least two samples");

    std::vector<std::array<double, 4>> rows;
    rows.reserve(samples);
    const double c0 = metric.rho(x0) * std::sin(phi0);
    if (std::abs(c0) < 1e-13) {
        // Meridians pass through the poles, where the chart angle theta is
        // singular; propagate the zigzag analytically: theta gains pi and the
        // running direction flips at every pole.
        const double L = metric.length();
        const double dir = std::cos(phi0) >= 0.0 ? 1.0 : -1.0;
        for (int i = 0; i < samples; ++i) {
            const double lambda = length * i / (samples - 1);
            const double z = x0 + dir * lambda;
            const double f = z / L - 2.0 * std::floor(z / (2.0 * L));
            const double x = (f <= 1.0 ? f : 2.0 - f) * L;
            const double crossings = std::abs(std::floor(z / L));
            const double moving_up = dir * (std::fmod(crossings, 2.0) == 0.0 ? 1.0 : -1.0);
            rows.push_back({lambda, x, kPi * crossings, moving_up > 0.0 ? 0.0 : kPi});
        }
        return rows;
    }

    num::RungeKutta<3> rk(
        [&metric](double, const num::State<3>& y) { return geodesic_rhs(metric, y); }, 1e-11,
        1e-13);
    num::State<3> y = {x0, 0.0, phi0};
    double lambda = 0.0;
    rows.push_back({lambda, y[0], y[1], y[2]});
    for (int i = 1; i < samples; ++i) {
        const double next = length * i / (samples - 1);
        y = rk.propagate(lambda, y, next);
        lambda = next;
        rows.push_back({lambda, y[0], y[1], y[2]});
    }
    return rows;
}

double clairaut_drift(const RevolutionMetric& metric, double x0, double phi0,
                      double total_length, int steps) {
    if (!(x0 > 0.0) || !(x0 < metric.length()))
        throw DomainError("clairaut_drift: x0 must lie strictly between the poles");
    if (steps < 1) throw DomainError("clairaut_drift: need at least one step");
    const double c0 = metric.rho(x0) * std::sin(phi0);
    // Tighter than the generic flow tolerances: the whole point of this
    // measurement is the accumulated error over a long arc, so leave an order
    // of magnitude between the integrator and the 1e-8 drift budget.
    num::RungeKutta<3> rk(
        [&metric](double, const num::State<3>& y) { return geodesic_rhs(metric, y); }, 1e-12,
        1e-14);
    num::State<3> y = {x0, 0.0, phi0};
    double lambda = 0.0;
    double drift = 0.0;
    for (int i = 1; i <= steps; ++i) {
        const double next = total_length * i / steps;
        y = rk.propagate(lambda, y, next);
        lambda = next;
        drift = std::max(drift, std::abs(metric.rho(y[0]) * std::sin(y[2]) - c0));
    }
    return drift;
}

GeodesicCrosscheckReport quadrature_ode_crosscheck(const RevolutionMetric& metric, int levels,
                                                   unsigned long long seed) {
    require_valid(metric);
    GeodesicCrosscheckReport rep;
    const double x_top = metric.rho_argmax();
    const double rho_m = metric.rho(x_top);
    std::mt19937_64 gen(seed);
    const auto uniform = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    for (int i = 0; i < levels; ++i) {
        const double c = rho_m * (0.05 + 0.9 * uniform());
        const ClairautData ref = clairaut_data(metric, c);

        num::RungeKutta<3> rk(
            [&metric](double, const num::State<3>& y) { return geodesic_rhs(metric, y); },
            1e-11, 1e-13);
        const auto turning = [](double, const num::State<3>& y) { return std::cos(y[2]); };
        const double phi0 = std::asin(c / rho_m);
        num::State<3> y0 = {x_top, 0.0, phi0};
        const auto e1 = rk.integrate_to_event(0.0, y0, turning, 0, 2.0 * ref.arc_length);
        const auto e2 =
            rk.integrate_to_event(e1.t, e1.y, turning, 0, e1.t + 1.5 * ref.arc_length);
        const auto e3 =
            rk.integrate_to_event(e2.t, e2.y, turning, 0, e2.t + 1.5 * ref.arc_length);

        GeodesicCrosscheckRow row;
        row.c = c;
        row.delta_theta_quad = ref.delta_theta;
        row.arc_quad = ref.arc_length;
        row.delta_theta_ode = e3.y[1] - e1.y[1];
        row.arc_ode = e3.t - e1.t;
        rep.rows.push_back(row);
        rep.max_delta_theta_err =
            std::max(rep.max_delta_theta_err,
                     std::abs(row.delta_theta_ode - row.delta_theta_quad) /
                         std::max(1.0, std::abs(row.delta_theta_quad)));
        rep.max_arc_err = std::max(rep.max_arc_err, std::abs(row.arc_ode - row.arc_quad) /
                                                        std::max(1.0, row.arc_quad));
    }
    rep.passed = rep.max_delta_theta_err <= 1e-5 && rep.max_arc_err <= 1e-5;
    return rep;
}

} // namespace systolica
