#include "systolica/branch_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "systolica/errors.hpp"

namespace systolica {

namespace {

/// Binomial coefficients up to the small degrees used by profile branches.
double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double horner(const std::vector<double>& c, double u) {
    double r = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) r = r * u + c[j];
    return r;
}

double horner_derivative(const std::vector<double>& c, double u) {
    double r = 0.0;
    for (std::size_t j = c.size(); j-- > 1;) r = r * u + c[j] * static_cast<double>(j);
    return r;
}

double horner_second(const std::vector<double>& c, double u) {
    double r = 0.0;
    for (std::size_t j = c.size(); j-- > 2;)
        r = r * u + c[j] * static_cast<double>(j) * static_cast<double>(j - 1);
    return r;
}

} // namespace

BranchFunction BranchFunction::piecewise_polynomial(std::vector<double> breakpoints,
                                                    std::vector<std::vector<double>> coefficients) {
    BranchFunction f;
    f.kind_ = BranchKind::piecewise_polynomial;
    f.breakpoints_ = std::move(breakpoints);
    f.coeff_ = std::move(coefficients);
    if (f.coeff_.size() + 1 != f.breakpoints_.size())
        throw ConstructionError("piecewise polynomial: need one coefficient row per interval");
    for (const auto& row : f.coeff_)
        if (row.empty()) throw ConstructionError("piecewise polynomial: empty coefficient row");
    f.check_shape();
    return f;
}

BranchFunction BranchFunction::cubic_hermite(std::vector<double> breakpoints,
                                             std::vector<double> values,
                                             std::vector<double> derivatives) {
    BranchFunction f;
    f.kind_ = BranchKind::cubic_hermite_spline;
    f.breakpoints_ = std::move(breakpoints);
    f.values_ = std::move(values);
    f.derivs_ = std::move(derivatives);
    if (f.values_.size() != f.breakpoints_.size() || f.derivs_.size() != f.breakpoints_.size())
        throw ConstructionError("hermite spline: need one value and one slope per node");
    f.check_shape();
    return f;
}

void BranchFunction::check_shape() const {
    if (breakpoints_.size() < 2)
        throw ConstructionError("branch function: need at least two breakpoints");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] > breakpoints_[i - 1]))
            throw ConstructionError("branch function: breakpoints must be strictly increasing");
    for (double b : breakpoints_)
        if (!std::isfinite(b)) throw ConstructionError("branch function: non-finite breakpoint");
}

std::size_t BranchFunction::locate(double x, Side side) const {
    const double lo = domain_lo(), hi = domain_hi();
    const double snap = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
    if (x < lo - snap || x > hi + snap)
        throw DomainError("branch function: argument outside domain");
    x = std::min(std::max(x, lo), hi);
    // Interval index: by default the right-closed convention [b_i, b_{i+1});
    // Side::left selects the interval ending at x when x is a breakpoint.
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t i = (it == breakpoints_.begin()) ? 0 : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    if (i + 2 > breakpoints_.size()) i = breakpoints_.size() - 2;
    if (side == Side::left && i > 0 && x == breakpoints_[i]) --i;
    return i;
}

double BranchFunction::value(double x) const {
    const std::size_t i = locate(x, Side::two_sided);
    if (kind_ == BranchKind::piecewise_polynomial)
        return horner(coeff_[i], x - breakpoints_[i]);
    const double h = breakpoints_[i + 1] - breakpoints_[i];
    const double t = (x - breakpoints_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * values_[i]
         + (t3 - 2.0 * t2 + t) * h * derivs_[i]
         + (-2.0 * t3 + 3.0 * t2) * values_[i + 1]
         + (t3 - t2) * h * derivs_[i + 1];
}

double BranchFunction::derivative(double x, Side side) const {
    if (side == Side::two_sided) {
        // Interior breakpoints of a valid branch are C1; report the mean so
        // representation roundoff cancels. Kink detection happens in Profile.
        const std::size_t i = locate(x, Side::two_sided);
        const bool at_interior_bp = i > 0 && x == breakpoints_[i];
        if (!at_interior_bp) side = Side::right;
        else return 0.5 * (derivative(x, Side::left) + derivative(x, Side::right));
    }
    const std::size_t i = locate(x, side);
    if (kind_ == BranchKind::piecewise_polynomial)
        return horner_derivative(coeff_[i], x - breakpoints_[i]);
    const double h = breakpoints_[i + 1] - breakpoints_[i];
    const double t = (x - breakpoints_[i]) / h;
    const double t2 = t * t;
    return ((6.0 * t2 - 6.0 * t) * values_[i]
            + (3.0 * t2 - 4.0 * t + 1.0) * h * derivs_[i]
            + (-6.0 * t2 + 6.0 * t) * values_[i + 1]
            + (3.0 * t2 - 2.0 * t) * h * derivs_[i + 1]) / h;
}

double BranchFunction::second_derivative(double x, Side side) const {
    if (side == Side::two_sided) side = Side::right;
    const std::size_t i = locate(x, side);
    if (kind_ == BranchKind::piecewise_polynomial)
        return horner_second(coeff_[i], x - breakpoints_[i]);
    const double h = breakpoints_[i + 1] - breakpoints_[i];
    const double t = (x - breakpoints_[i]) / h;
    return ((12.0 * t - 6.0) * values_[i]
            + (6.0 * t - 4.0) * h * derivs_[i]
            + (-12.0 * t + 6.0) * values_[i + 1]
            + (6.0 * t - 2.0) * h * derivs_[i + 1]) / (h * h);
}

double BranchFunction::max_value_jump() const {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
        const double x = breakpoints_[i];
        double left, right;
        if (kind_ == BranchKind::piecewise_polynomial) {
            left = horner(coeff_[i - 1], x - breakpoints_[i - 1]);
            right = coeff_[i][0];
        } else {
            left = right = values_[i];  // shared node, continuous by construction
        }
        worst = std::max(worst, std::abs(left - right));
    }
    return worst;
}

double BranchFunction::max_derivative_jump() const {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
        const double x = breakpoints_[i];
        worst = std::max(worst, std::abs(derivative(x, Side::left) - derivative(x, Side::right)));
    }
    return worst;
}

BranchFunction BranchFunction::mirrored() const {
    std::vector<double> bp(breakpoints_.rbegin(), breakpoints_.rend());
    for (double& b : bp) b = -b;
    if (kind_ == BranchKind::cubic_hermite_spline) {
        std::vector<double> v(values_.rbegin(), values_.rend());
        std::vector<double> d(derivs_.rbegin(), derivs_.rend());
        for (double& s : d) s = -s;
        return cubic_hermite(std::move(bp), std::move(v), std::move(d));
    }
    // Piece on [b_i, b_{i+1}] with local coefficients c_j maps to the piece on
    // [-b_{i+1}, -b_i]: with v = x + b_{i+1}, p(-x) = sum_j c_j (h_i - v)^j.
    std::vector<std::vector<double>> rows;
    rows.reserve(coeff_.size());
    for (std::size_t i = coeff_.size(); i-- > 0;) {
        const auto& c = coeff_[i];
        const double h = breakpoints_[i + 1] - breakpoints_[i];
        std::vector<double> out(c.size(), 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            // (h - v)^j expanded in powers of v
            for (std::size_t m = 0; m <= j; ++m) {
                const double sign = (m % 2 == 0) ? 1.0 : -1.0;
                out[m] += c[j] * sign * binom(static_cast<int>(j), static_cast<int>(m))
                          * std::pow(h, static_cast<double>(j - m));
            }
        }
        rows.push_back(std::move(out));
    }
    return piecewise_polynomial(std::move(bp), std::move(rows));
}

BranchFunction BranchFunction::scaled(double c) const {
    if (!(c > 0.0)) throw DomainError("branch scaling factor must be positive");
    std::vector<double> bp = breakpoints_;
    for (double& b : bp) b *= c;
    if (kind_ == BranchKind::cubic_hermite_spline) {
        std::vector<double> v = values_;
        for (double& x : v) x *= c;
        return cubic_hermite(std::move(bp), std::move(v), derivs_);
    }
    std::vector<std::vector<double>> rows = coeff_;
    for (auto& row : rows)
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] *= std::pow(c, 1.0 - static_cast<double>(j));
    return piecewise_polynomial(std::move(bp), std::move(rows));
}

const std::vector<std::vector<double>>& BranchFunction::coefficients() const {
    if (kind_ != BranchKind::piecewise_polynomial)
        throw DomainError("coefficients(): not a piecewise polynomial");
    return coeff_;
}

const std::vector<double>& BranchFunction::node_values() const {
    if (kind_ != BranchKind::cubic_hermite_spline)
        throw DomainError("node_values(): not a hermite spline");
    return values_;
}

const std::vector<double>& BranchFunction::node_derivatives() const {
    if (kind_ != BranchKind::cubic_hermite_spline)
        throw DomainError("node_derivatives(): not a hermite spline");
    return derivs_;
}

} // namespace systolica
