#include "systolica/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "systolica/errors.hpp"

namespace systolica {

EulerNumber::EulerNumber(int value) : value_(value) {
    if (value == 0)
        throw DomainError("euler number must be nonzero");
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

const CheckResult& ValidationReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw DomainError("no validation check named '" + name + "'");
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

} // namespace

Profile::Profile(EulerNumber e, BranchFunction negative_branch, BranchFunction positive_branch)
    : e_(e), neg_(std::move(negative_branch)), pos_(std::move(positive_branch)) {
    if (neg_.domain_hi() != 0.0)
        throw ConstructionError("negative branch must end at k = 0");
    if (pos_.domain_lo() != 0.0)
        throw ConstructionError("positive branch must start at k = 0");
    if (!(neg_.domain_lo() < 0.0) || !(pos_.domain_hi() > 0.0))
        throw ConstructionError("moment interval must contain 0 in its interior");
}

double Profile::evaluate(double k) const {
    if (k < 0.0) return neg_.value(k);
    if (k > 0.0) return pos_.value(k);
    // At the singular level average the two (equal-to-roundoff) branch values.
    return 0.5 * (neg_.value(0.0) + pos_.value(0.0));
}

double Profile::derivative(double k, Side side) const {
    if (k == 0.0) {
        if (side == Side::left) return neg_.derivative(0.0, Side::left);
        if (side == Side::right) return pos_.derivative(0.0, Side::right);
        throw KinkError("J' is two-valued at k = 0; pass Side::left or Side::right");
    }
    return k < 0.0 ? neg_.derivative(k, side) : pos_.derivative(k, side);
}

double Profile::second_derivative(double k, Side side) const {
    if (k == 0.0) {
        if (side == Side::left) return neg_.second_derivative(0.0, Side::left);
        if (side == Side::right) return pos_.second_derivative(0.0, Side::right);
        throw KinkError("J'' is two-valued at k = 0; pass Side::left or Side::right");
    }
    return k < 0.0 ? neg_.second_derivative(k, side) : pos_.second_derivative(k, side);
}

double Profile::return_time(double k, Side side) const {
    if (k <= k_minus() || k >= k_plus())
        throw DomainError("return time is defined on the open moment interval");
    const double tau = evaluate(k) - k * derivative(k, k == 0.0 && side == Side::two_sided
                                                           ? Side::right : side);
    if (!(tau > 0.0))
        throw AdmissibilityError("nonpositive return time at k = " + fmt(k));
    return tau;
}

double Profile::rotation(double k, Side side) const {
    if (k == 0.0 && side == Side::two_sided)
        throw KinkError("rotation is two-valued at k = 0; pass Side::left or Side::right");
    return -derivative(k, side);
}

double Profile::derivative_jump_at_zero() const {
    return pos_.derivative(0.0, Side::right) - neg_.derivative(0.0, Side::left);
}

std::vector<double> Profile::interior_breakpoints() const {
    std::vector<double> out;
    for (double b : neg_.breakpoints())
        if (b > k_minus() && b < 0.0) out.push_back(b);
    out.push_back(0.0);
    for (double b : pos_.breakpoints())
        if (b > 0.0 && b < k_plus()) out.push_back(b);
    return out;
}

ValidationReport Profile::validate(int grid_density) const {
    ValidationReport rep;
    const double scale = std::max({1.0, std::abs(evaluate(0.0)),
                                   std::abs(k_minus()), k_plus()});

    {
        const double gap = std::abs(pos_.value(0.0) - neg_.value(0.0));
        rep.checks.push_back({"continuity-at-zero", gap <= 1e-12 * scale,
                              1e-12 * scale - gap,
                              "|J(0+)-J(0-)| = " + fmt(gap)});
    }
    {
        const double lo = std::abs(evaluate(k_minus()));
        const double hi = std::abs(evaluate(k_plus()));
        const double worst = std::max(lo, hi);
        rep.checks.push_back({"closure", worst <= 1e-12 * scale,
                              1e-12 * scale - worst,
                              "|J(K-)| = " + fmt(lo) + ", |J(K+)| = " + fmt(hi)});
    }
    {
        const double jump = derivative_jump_at_zero();
        const double err = std::abs(jump + static_cast<double>(e_.value()));
        const double tol = 1e-12 * std::max(1.0, std::abs(static_cast<double>(e_.value())));
        rep.checks.push_back({"derivative-jump", err <= tol, tol - err,
                              "J'(0+)-J'(0-) = " + fmt(jump) + ", expected " +
                                  fmt(-static_cast<double>(e_.value()))});
    }
    {
        const double vj = std::max(neg_.max_value_jump(), pos_.max_value_jump());
        rep.checks.push_back({"branch-c0", vj <= 1e-12 * scale, 1e-12 * scale - vj,
                              "worst interior value jump " + fmt(vj)});
        const double dj = std::max(neg_.max_derivative_jump(), pos_.max_derivative_jump());
        rep.checks.push_back({"branch-c1", dj <= 1e-9 * scale, 1e-9 * scale - dj,
                              "worst interior slope jump " + fmt(dj)});
    }

    // Dense sampling for the sign conditions: grid points union breakpoints.
    std::vector<double> samples;
    const int n = std::max(grid_density, 16);
    for (int i = 1; i < n; ++i)
        samples.push_back(k_minus() + (k_plus() - k_minus()) * i / n);
    for (double b : interior_breakpoints()) samples.push_back(b);
    std::sort(samples.begin(), samples.end());

    double min_j = std::numeric_limits<double>::infinity();
    double min_tau = std::numeric_limits<double>::infinity();
    double argmin_j = 0.0, argmin_tau = 0.0;
    auto consider_tau = [&](double k, double tau) {
        if (tau < min_tau) { min_tau = tau; argmin_tau = k; }
    };
    for (double k : samples) {
        if (k <= k_minus() || k >= k_plus()) continue;
        const double j = evaluate(k);
        if (j < min_j) { min_j = j; argmin_j = k; }
        if (k == 0.0) {
            consider_tau(k, j);  // tau(0) = J(0) from either side
        } else {
            consider_tau(k, j - k * derivative(k));
        }
    }
    // One-sided endpoint limits of tau (tau extends continuously to the ends).
    consider_tau(k_minus(),
                 evaluate(k_minus()) - k_minus() * neg_.derivative(k_minus(), Side::right));
    consider_tau(k_plus(),
                 evaluate(k_plus()) - k_plus() * pos_.derivative(k_plus(), Side::left));

    rep.checks.push_back({"positivity", min_j > -1e-9 * scale, min_j + 1e-9 * scale,
                          "min J = " + fmt(min_j) + " at k = " + fmt(argmin_j)});
    rep.checks.push_back({"return-time-positivity", min_tau > 1e-9 * scale,
                          min_tau - 1e-9 * scale,
                          "min tau = " + fmt(min_tau) + " at k = " + fmt(argmin_tau)});

    {
        const double dl = neg_.derivative(k_minus(), Side::right);
        const double dr = pos_.derivative(k_plus(), Side::left);
        const bool ok = std::isfinite(dl) && std::isfinite(dr);
        rep.checks.push_back({"endpoint-derivatives-finite", ok, ok ? 1.0 : -1.0,
                              "J'(K-) = " + fmt(dl) + ", J'(K+) = " + fmt(dr)});
    }

    return rep;
}

Profile Profile::scaled(double c) const {
    if (!(c > 0.0)) throw DomainError("profile scaling factor must be positive");
    return Profile(e_, neg_.scaled(c), pos_.scaled(c));
}

} // namespace systolica
