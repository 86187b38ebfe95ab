#include <cmath>

#include <doctest.h>

#include "systolica/constructors.hpp"
#include "systolica/errors.hpp"
#include "systolica/profile.hpp"

using namespace systolica;

namespace {

/// A hand-built e = 2 tent profile J = T - |k| on [-T, T].
Profile tent(double T) {
    auto neg = BranchFunction::piecewise_polynomial({-T, 0.0}, {{0.0, 1.0}});
    auto pos = BranchFunction::piecewise_polynomial({0.0, T}, {{T, -1.0}});
    return Profile(EulerNumber(2), std::move(neg), std::move(pos));
}

} // namespace

TEST_CASE("euler number excludes zero") {
    CHECK_THROWS_AS(EulerNumber(0), DomainError);
    CHECK(EulerNumber(-3).abs() == 3);
    CHECK(EulerNumber(-3).negative());
}

TEST_CASE("constructor enforces the branch layout") {
    auto neg = BranchFunction::piecewise_polynomial({-1.0, 0.0}, {{0.0, 1.0}});
    auto pos = BranchFunction::piecewise_polynomial({0.0, 1.0}, {{1.0, -1.0}});
    auto shifted = BranchFunction::piecewise_polynomial({0.5, 1.0}, {{1.0, -1.0}});
    CHECK_THROWS_AS(Profile(EulerNumber(2), pos, pos), ConstructionError);
    CHECK_THROWS_AS(Profile(EulerNumber(2), neg, shifted), ConstructionError);
    CHECK_NOTHROW(Profile(EulerNumber(2), neg, pos));
}

TEST_CASE("tent profile: evaluation, kink, return time, rotation") {
    const Profile p = tent(1.0);
    CHECK(p.k_minus() == -1.0);
    CHECK(p.k_plus() == 1.0);
    CHECK(p.evaluate(0.0) == 1.0);
    CHECK(p.evaluate(0.25) == 0.75);
    CHECK(p.evaluate(-0.5) == 0.5);

    CHECK(p.derivative(0.0, Side::left) == 1.0);
    CHECK(p.derivative(0.0, Side::right) == -1.0);
    CHECK_THROWS_AS((void)p.derivative(0.0), KinkError);
    CHECK(p.derivative_jump_at_zero() == -2.0);

    // tau = J - k J' is identically T for the tent
    for (double k : {-0.9, -0.3, 0.2, 0.7})
        CHECK(p.return_time(k) == doctest::Approx(1.0).epsilon(1e-15));
    // w = -J': +1 left of the kink... J' = +1 for k < 0 so w = -1; mirrored on the right
    CHECK(p.rotation(-0.5) == -1.0);
    CHECK(p.rotation(0.5) == 1.0);
}

TEST_CASE("return time is rejected at and beyond the closure endpoints") {
    const Profile p = tent(1.0);
    CHECK_THROWS_AS((void)p.return_time(1.0), DomainError);
    CHECK_THROWS_AS((void)p.return_time(-1.5), DomainError);
}

TEST_CASE("interior breakpoints contain zero exactly once") {
    const Profile p = zoll_profile(2, 1.0);
    const auto bps = p.interior_breakpoints();
    int zeros = 0;
    for (double b : bps) {
        CHECK(b > p.k_minus());
        CHECK(b < p.k_plus());
        if (b == 0.0) ++zeros;
    }
    CHECK(zeros == 1);
}

TEST_CASE("validate passes a healthy profile and names every check") {
    const auto rep = tent(2.0).validate();
    CHECK(rep.all_passed());
    for (const char* name : {"continuity-at-zero", "closure", "derivative-jump",
                             "positivity", "return-time-positivity"})
        CHECK(rep.check(name).passed);
    CHECK_THROWS_AS((void)rep.check("no-such-check"), DomainError);
}

TEST_CASE("validate flags an injected jump violation with margin") {
    // slope 1/2 on the left instead of 1: jump becomes -1.5 instead of -2
    auto neg = BranchFunction::piecewise_polynomial({-2.0, 0.0}, {{0.0, 0.5}});
    auto pos = BranchFunction::piecewise_polynomial({0.0, 1.0}, {{1.0, -1.0}});
    const Profile bad(EulerNumber(2), std::move(neg), std::move(pos));
    const auto rep = bad.validate();
    CHECK_FALSE(rep.all_passed());
    CHECK_FALSE(rep.check("derivative-jump").passed);
    CHECK(rep.check("derivative-jump").margin < -0.4);
}

TEST_CASE("validate flags a closure violation") {
    // J(k_plus) = 0.1 instead of 0
    auto neg = BranchFunction::piecewise_polynomial({-1.0, 0.0}, {{0.0, 1.0}});
    auto pos = BranchFunction::piecewise_polynomial({0.0, 1.0}, {{1.0, -0.9}});
    const Profile bad(EulerNumber(2), std::move(neg), std::move(pos));
    CHECK_FALSE(bad.validate().check("closure").passed);
}

TEST_CASE("scaling equivariance: periods scale, rotation is invariant") {
    const Profile p = ellipsoid_profile(1.0, 2.0);
    const double c = 3.0;
    const Profile s = p.scaled(c);
    CHECK(s.k_minus() == doctest::Approx(c * p.k_minus()).epsilon(1e-15));
    CHECK(s.k_plus() == doctest::Approx(c * p.k_plus()).epsilon(1e-15));
    for (double k : {-1.5, -0.2, 0.4, 0.9}) {
        CHECK(s.return_time(c * k) == doctest::Approx(c * p.return_time(k)).epsilon(1e-13));
        CHECK(s.rotation(c * k) == doctest::Approx(p.rotation(k)).epsilon(1e-13));
    }
    CHECK(s.validate().all_passed());
}
