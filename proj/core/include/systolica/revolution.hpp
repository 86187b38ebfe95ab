#pragma once

#include <array>
#include <string>
#include <vector>

#include "systolica/branch_function.hpp"
#include "systolica/measures.hpp"
#include "systolica/profile.hpp"

namespace systolica {

/// Smooth metric of revolution dx^2 + rho(x)^2 dtheta^2 on the sphere:
/// x in [0, L] is arclength along a meridian, rho vanishes at both poles
/// with slope +1 at x = 0 and -1 at x = L (smooth closing condition).
class RevolutionMetric {
public:
    RevolutionMetric(double L, BranchFunction rho);

    double length() const { return L_; }
    const BranchFunction& profile_curve() const { return rho_; }

    double rho(double x) const { return rho_.value(x); }
    double rho_prime(double x, Side side = Side::two_sided) const {
        return rho_.derivative(x, side);
    }
    double rho_second(double x) const { return rho_.second_derivative(x); }

    /// Largest rho value and its location, from a dense grid refined once.
    double rho_max() const;
    double rho_argmax() const;

    /// Named checks: pole values, pole slopes, interior positivity.
    ValidationReport validate(int grid_density = 512) const;

private:
    double L_ = 0.0;
    BranchFunction rho_;
};

/// The unit round sphere: L = pi, rho = sin x, sampled as a cubic Hermite
/// spline on the given number of nodes.  The default resolution is chosen so
/// that the spline's second-derivative jumps at the knots (a C1 spline is all
/// the geodesic flow ever sees) stay below the long-arc integration budgets;
/// a coarse profile caps the achievable flow accuracy no matter how tight the
/// integrator tolerances are.
RevolutionMetric round_sphere_metric(int nodes = 1025);

/// rho_A = sin(x) (1 + A sin^2 x): a rotationally symmetric pinch/bulge of
/// the round sphere keeping both pole slopes exactly one.
RevolutionMetric perturbed_sphere_metric(double A, int nodes = 1025);

/// Band data of the geodesics with Clairaut constant c = rho sin(phi):
/// they oscillate between the two roots x_minus < x_plus of rho = |c|, and
/// over one full oscillation advance the azimuth by delta_theta and arclength
/// by arc_length.
struct ClairautData {
    double c = 0.0;
    double x_minus = 0.0;
    double x_plus = 0.0;
    double delta_theta = 0.0;
    double arc_length = 0.0;
};

/// Computes the band and the two oscillation integrals for level c.  The
/// turning-point singularities are removed by the substitution u^2 = x - x_minus
/// (and mirrored at the right end); throws SingularLevelError when a turning
/// point degenerates (rho' vanishing there) and DomainError when |c| reaches
/// the top of rho.
ClairautData clairaut_data(const RevolutionMetric& metric, double c, double tol = 1e-9);

enum class GeodesicKind { meridian, equator, oscillating };
const char* to_string(GeodesicKind k);

struct ClosedGeodesic {
    GeodesicKind kind = GeodesicKind::oscillating;
    double c = 0.0;
    long long p = 0;  ///< azimuth turns per closed orbit (oscillating only)
    long long q = 0;  ///< oscillations per closed orbit (oscillating only)
    double length = 0.0;
    double delta_theta = 0.0;  ///< azimuth advance per oscillation
    double arc = 0.0;          ///< arclength per oscillation
};

/// Closed geodesics up to q_max oscillations: the meridian family, every
/// equator (critical circle of rho), and the oscillating geodesics whose
/// azimuth advance is a rational multiple 2 pi p / q.  Only c > 0 levels are
/// listed; the mirror family c < 0 is isometric.
std::vector<ClosedGeodesic> closed_geodesics(const RevolutionMetric& metric, int q_max,
                                             int grid_density = 512);

/// Shortest closed geodesic with a certified search cutoff, analogous to the
/// profile systole: unseen geodesics with more than q oscillations are longer
/// than q times a certified lower bound for the oscillation arclength.
struct GeodesicSystoleResult {
    double value = 0.0;
    ClosedGeodesic witness;
    int q_max_used = 0;
    double certification_bound = 0.0;
};

GeodesicSystoleResult geodesic_systole(const RevolutionMetric& metric, int grid_density = 512);

/// Riemannian area 2 pi * integral of rho.
double surface_area(const RevolutionMetric& metric, double tol = 1e-10);

/// Systolic inequality for the geodesic flow of the metric, phrased on the
/// unit cotangent bundle: sys^2 <= pi * area, equality only for the round
/// family.  Fills an InequalityReport with branch "revolution", bound 1.
InequalityReport finsler_corollary_check(const RevolutionMetric& metric,
                                         int grid_density = 512);

/// Direct geodesic flow in coordinates (x, theta, phi), where phi is the
/// angle against the meridian direction: x' = cos phi, theta' = sin phi / rho,
/// phi' = -rho' sin phi / rho.  Rows are (lambda, x, theta, phi).  An exact
/// meridian (c = 0) is propagated analytically through the poles.
std::vector<std::array<double, 4>> integrate_geodesic(const RevolutionMetric& metric,
                                                      double x0, double phi0, double length,
                                                      int samples = 256);

/// Sup over the trajectory of |rho sin(phi) - c0|: the Clairaut constant is a
/// first integral, so this measures pure integrator drift.
double clairaut_drift(const RevolutionMetric& metric, double x0, double phi0,
                      double total_length, int steps = 1000);

/// Independent check of the oscillation integrals: for seeded random levels,
/// one full oscillation is flown with the ODE (events at the turning points)
/// and its azimuth advance and arclength are compared with the quadratures.
struct GeodesicCrosscheckRow {
    double c = 0.0;
    double delta_theta_quad = 0.0;
    double delta_theta_ode = 0.0;
    double arc_quad = 0.0;
    double arc_ode = 0.0;
};

struct GeodesicCrosscheckReport {
    std::vector<GeodesicCrosscheckRow> rows;
    double max_delta_theta_err = 0.0;  ///< relative, normalized by max(1, |reference|)
    double max_arc_err = 0.0;
    bool passed = false;
};

GeodesicCrosscheckReport quadrature_ode_crosscheck(const RevolutionMetric& metric,
                                                   int levels = 20,
                                                   unsigned long long seed = 2026);

} // namespace systolica
