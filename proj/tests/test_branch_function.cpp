#include <cmath>
#include <vector>

#include <doctest.h>

#include "systolica/branch_function.hpp"
#include "systolica/errors.hpp"

using namespace systolica;

TEST_CASE("piecewise polynomial evaluates in local coordinates") {
    // f = 1 + 2(x-0) + 3(x-0)^2 on [0,1], then 6 - (x-1) on [1,2]
    auto f = BranchFunction::piecewise_polynomial({0.0, 1.0, 2.0},
                                                  {{1.0, 2.0, 3.0}, {6.0, -1.0}});
    CHECK(f.value(0.0) == 1.0);
    CHECK(f.value(0.5) == doctest::Approx(1.0 + 1.0 + 0.75).epsilon(1e-15));
    CHECK(f.value(1.5) == doctest::Approx(5.5).epsilon(1e-15));
    CHECK(f.derivative(0.5) == doctest::Approx(2.0 + 3.0).epsilon(1e-15));
    CHECK(f.second_derivative(0.25) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(f.second_derivative(1.5) == 0.0);
}

TEST_CASE("one-sided evaluation at an interior kink") {
    // slope +1 then slope -1, continuous at the joint
    auto f = BranchFunction::piecewise_polynomial({-1.0, 0.0, 1.0},
                                                  {{0.0, 1.0}, {1.0, -1.0}});
    CHECK(f.derivative(0.0, Side::left) == 1.0);
    CHECK(f.derivative(0.0, Side::right) == -1.0);
    CHECK(f.max_value_jump() == 0.0);
    CHECK(f.max_derivative_jump() == 2.0);
}

TEST_CASE("two-sided derivative averages at interior breakpoints") {
    // A branch function reports the mean slope at its own joints; deciding
    // whether a joint is a genuine kink is the profile's job (the potential
    // is only allowed one, at k = 0).
    auto f = BranchFunction::piecewise_polynomial({-1.0, 0.0, 1.0},
                                                  {{0.0, 1.0}, {1.0, -1.0}});
    CHECK(f.derivative(0.0, Side::two_sided) == 0.0);
    // smooth joint: same slope on both sides, and the mean is exact
    auto g = BranchFunction::piecewise_polynomial({-1.0, 0.0, 1.0},
                                                  {{0.0, 1.0}, {1.0, 1.0}});
    CHECK(g.derivative(0.0) == 1.0);
}

TEST_CASE("cubic hermite interpolates nodes, slopes, and between them") {
    std::vector<double> xs = {0.0, 1.0, 3.0};
    std::vector<double> vs = {0.0, 1.0, -1.0};
    std::vector<double> ds = {2.0, 0.0, 1.0};
    auto f = BranchFunction::cubic_hermite(xs, vs, ds);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(f.value(xs[i]) == doctest::Approx(vs[i]).epsilon(1e-15));
        CHECK(f.derivative(xs[i]) == doctest::Approx(ds[i]).epsilon(1e-13));
    }
    // Hermite pieces are genuine cubics: check a hand-expanded midpoint value
    // on [0,1] with h00/h10/h01/h11 at t = 1/2: (v0 + v1)/2 + (d0 - d1)/8.
    CHECK(f.value(0.5) == doctest::Approx(0.5 + 2.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("domain and shape violations are rejected") {
    CHECK_THROWS_AS(BranchFunction::piecewise_polynomial({0.0, 1.0}, {}), ConstructionError);
    CHECK_THROWS_AS(BranchFunction::piecewise_polynomial({0.0}, {{1.0}}), ConstructionError);
    CHECK_THROWS_AS(BranchFunction::piecewise_polynomial({1.0, 0.0}, {{1.0}}),
                    ConstructionError);
    CHECK_THROWS_AS(BranchFunction::cubic_hermite({0.0, 1.0}, {0.0}, {0.0, 0.0}),
                    ConstructionError);
    auto f = BranchFunction::piecewise_polynomial({0.0, 1.0}, {{1.0}});
    CHECK_THROWS_AS((void)f.value(1.5), DomainError);
    CHECK_THROWS_AS((void)f.value(-0.5), DomainError);
    CHECK_THROWS_AS((void)f.node_values(), DomainError);  // wrong representation
}

TEST_CASE("mirrored flips the domain and the argument") {
    auto f = BranchFunction::piecewise_polynomial({0.0, 2.0}, {{1.0, 3.0}});  // 1 + 3x
    auto m = f.mirrored();
    CHECK(m.domain_lo() == -2.0);
    CHECK(m.domain_hi() == 0.0);
    CHECK(m.value(-0.5) == doctest::Approx(f.value(0.5)).epsilon(1e-15));
    CHECK(m.derivative(-0.5) == doctest::Approx(-f.derivative(0.5)).epsilon(1e-15));
}

TEST_CASE("scaled implements c f(x/c)") {
    std::vector<double> xs = {0.0, 1.0, 2.0};
    std::vector<double> vs = {1.0, 0.5, 0.25};
    std::vector<double> ds = {-1.0, -0.25, -0.1};
    auto f = BranchFunction::cubic_hermite(xs, vs, ds);
    const double c = 2.5;
    auto s = f.scaled(c);
    CHECK(s.domain_hi() == doctest::Approx(2.0 * c).epsilon(1e-15));
    for (double x : {0.3, 1.1, 1.9}) {
        CHECK(s.value(c * x) == doctest::Approx(c * f.value(x)).epsilon(1e-14));
        // derivative is scale invariant: d/dx [c f(x/c)] = f'(x/c)
        CHECK(s.derivative(c * x) == doctest::Approx(f.derivative(x)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(f.scaled(-1.0), DomainError);
}
