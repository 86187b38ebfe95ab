#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "systolica/branch_function.hpp"
#include "systolica/errors.hpp"
#include "systolica/revolution.hpp"

using namespace systolica;

namespace {

constexpr double kPi = 3.14159265358979323846;

const ClosedGeodesic* find_kind(const std::vector<ClosedGeodesic>& v, GeodesicKind kind) {
    for (const ClosedGeodesic& g : v)
        if (g.kind == kind) return &g;
    return nullptr;
}

} // namespace

TEST_CASE("round sphere metric: validation, shape, area") {
    const RevolutionMetric m = round_sphere_metric();
    const ValidationReport rep = m.validate();
    CHECK(rep.all_passed());
    CHECK(rep.check("pole-values").passed);
    CHECK(rep.check("pole-slopes").passed);
    CHECK(rep.check("interior-positivity").passed);

    CHECK(m.length() == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(m.rho(kPi / 2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.rho_max() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.rho_argmax() == doctest::Approx(kPi / 2).epsilon(1e-8));
    CHECK(surface_area(m) == doctest::Approx(4.0 * kPi).epsilon(1e-8));
}

TEST_CASE("Clairaut band data on the round sphere") {
    const RevolutionMetric m = round_sphere_metric();

    // sin x = 1/2 brackets the band [pi/6, 5 pi/6]; a great circle advances
    // the azimuth by a full turn per oscillation
    const ClairautData d = clairaut_data(m, 0.5);
    CHECK(d.x_minus == doctest::Approx(kPi / 6).epsilon(1e-9));
    CHECK(d.x_plus == doctest::Approx(5 * kPi / 6).epsilon(1e-9));
    CHECK(d.delta_theta == doctest::Approx(2 * kPi).epsilon(1e-7));
    CHECK(d.arc_length == doctest::Approx(2 * kPi).epsilon(1e-7));

    // the degenerate level c = 0 is the meridian: full band, no azimuth
    const ClairautData mer = clairaut_data(m, 0.0);
    CHECK(mer.x_minus == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(mer.x_plus == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(mer.delta_theta == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(mer.arc_length == doctest::Approx(2 * kPi).epsilon(1e-7));

    CHECK_THROWS_AS((void)clairaut_data(m, 1.01), DomainError);
    CHECK_THROWS_AS((void)clairaut_data(m, -1.01), DomainError);
}

TEST_CASE("round sphere: every closed geodesic is a great circle of length 2 pi") {
    const RevolutionMetric m = round_sphere_metric();
    const auto geos = closed_geodesics(m, 3);
    REQUIRE(geos.size() >= 3);
    for (const ClosedGeodesic& g : geos) {
        CAPTURE(to_string(g.kind));
        CHECK(g.length == doctest::Approx(2 * kPi).epsilon(1e-6));
    }
    CHECK(find_kind(geos, GeodesicKind::meridian) != nullptr);
    CHECK(find_kind(geos, GeodesicKind::equator) != nullptr);
    CHECK(find_kind(geos, GeodesicKind::oscillating) != nullptr);

    const GeodesicSystoleResult sys = geodesic_systole(m);
    CHECK(sys.value == doctest::Approx(2 * kPi).epsilon(1e-6));
    CHECK(sys.value <= sys.certification_bound);

    const InequalityReport ineq = finsler_corollary_check(m);
    CHECK(ineq.branch == "revolution");
    CHECK(ineq.bound == 1.0);
    CHECK(ineq.ratio == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(ineq.equality_flag);
}

TEST_CASE("bulged sphere: meridian systole and strict inequality") {
    const RevolutionMetric m = perturbed_sphere_metric(0.1);
    CHECK(m.validate().all_passed());

    const GeodesicSystoleResult sys = geodesic_systole(m);
    CHECK(sys.witness.kind == GeodesicKind::meridian);
    CHECK(sys.value == doctest::Approx(2 * kPi).epsilon(1e-9));

    // area = 2 pi (2 + 4 A / 3): ratio drops to 15/16 for A = 0.1
    CHECK(surface_area(m) == doctest::Approx(2 * kPi * (2.0 + 0.4 / 3.0)).epsilon(1e-9));
    const InequalityReport ineq = finsler_corollary_check(m);
    CHECK(ineq.ratio == doctest::Approx(0.9375).epsilon(1e-7));
    CHECK(ineq.margin > 1e-4);
    CHECK_FALSE(ineq.equality_flag);
}

TEST_CASE("geodesic flow: equator stays put, meridian zigzags through the poles") {
    const RevolutionMetric m = round_sphere_metric();

    const auto eq = integrate_geodesic(m, kPi / 2, kPi / 2, 2 * kPi, 65);
    REQUIRE(eq.size() == 65);
    for (const auto& row : eq)
        CHECK(row[1] == doctest::Approx(kPi / 2).epsilon(1e-8));
    CHECK(eq.back()[2] == doctest::Approx(2 * kPi).epsilon(1e-6));

    const auto mer = integrate_geodesic(m, kPi / 2, 0.0, 2 * kPi, 257);
    double x_lo = kPi, x_hi = 0.0;
    for (const auto& row : mer) {
        x_lo = std::min(x_lo, row[1]);
        x_hi = std::max(x_hi, row[1]);
        // c = rho sin(phi) vanishes along the whole meridian
        CHECK(std::abs(m.rho(row[1]) * std::sin(row[3])) < 1e-9);
    }
    CHECK(x_hi == doctest::Approx(kPi).epsilon(1e-6));
    CHECK(x_lo == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(mer.back()[1] == doctest::Approx(kPi / 2).epsilon(1e-6));
    // the azimuth jumped by pi at each of the two pole crossings
    CHECK(std::abs(std::sin(mer.back()[2])) < 1e-6);
}

TEST_CASE("Clairaut constant drifts below 1e-8 over arclength 100") {
    const RevolutionMetric m = round_sphere_metric();
    CHECK(clairaut_drift(m, 0.7, 0.9, 100.0) <= 1e-8);
}

TEST_CASE("oscillation quadratures agree with event-based ODE flights") {
    const GeodesicCrosscheckReport rep = quadrature_ode_crosscheck(round_sphere_metric(), 12);
    CHECK(rep.passed);
    CHECK(rep.rows.size() == 12);
    CHECK(rep.max_delta_theta_err <= 1e-5);
    CHECK(rep.max_arc_err <= 1e-5);
}

TEST_CASE("metric construction and validation failures") {
    CHECK_THROWS_AS(RevolutionMetric(0.0, BranchFunction::cubic_hermite(
                                              {0.0, 1.0}, {0.0, 0.0}, {1.0, -1.0})),
                    ConstructionError);
    CHECK_THROWS_AS(RevolutionMetric(2.0, BranchFunction::cubic_hermite(
                                              {0.0, 1.0}, {0.0, 0.0}, {1.0, -1.0})),
                    ConstructionError);

    // a profile curve that misses the pole: caught by validation, not the ctor
    const RevolutionMetric bad(kPi, BranchFunction::cubic_hermite(
                                        {0.0, kPi / 2, kPi}, {0.1, 1.0, 0.0}, {1.0, 0.0, -1.0}));
    const ValidationReport rep = bad.validate();
    CHECK_FALSE(rep.all_passed());
    CHECK_FALSE(rep.check("pole-values").passed);
}

TEST_CASE("geodesic trace argument validation") {
    const RevolutionMetric m = round_sphere_metric();
    CHECK_THROWS_AS((void)integrate_geodesic(m, -0.5, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)integrate_geodesic(m, 0.5, 0.0, -1.0), DomainError);
    CHECK_THROWS_AS((void)integrate_geodesic(m, 0.5, 0.0, 1.0, 1), DomainError);
}
