#pragma once

#include <string>
#include <vector>

#include "systolica/branch_function.hpp"

namespace systolica {

/// Euler number of the bundle; zero is excluded (no such tight invariant form).
class EulerNumber {
public:
    explicit EulerNumber(int value);
    int value() const { return value_; }
    int abs() const { return value_ < 0 ? -value_ : value_; }
    bool negative() const { return value_ < 0; }

private:
    int value_;
};

/// One named structural or admissibility check with its signed margin.
struct CheckResult {
    std::string name;
    bool passed = false;
    double margin = 0.0;  ///< distance to failure; negative when failed
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    const CheckResult& check(const std::string& name) const;
};

/// Invariant contact structure encoded by its potential on the moment interval.
///
/// The potential J lives on [k_minus, 0] and [0, k_plus] as two branch
/// functions meeting continuously at k = 0 with a slope jump of exactly -e.
/// Everything the library computes — return times, rotation numbers, closed
/// orbits, volume, the systolic certificates — is a functional of this data.
class Profile {
public:
    Profile(EulerNumber e, BranchFunction negative_branch, BranchFunction positive_branch);

    const EulerNumber& euler() const { return e_; }
    const BranchFunction& negative_branch() const { return neg_; }
    const BranchFunction& positive_branch() const { return pos_; }

    double k_minus() const { return neg_.domain_lo(); }
    double k_plus() const { return pos_.domain_hi(); }

    /// J(k); continuous on the closed moment interval.
    double evaluate(double k) const;

    /// J'(k). At k = 0 a side must be given: the derivative jumps by -e there.
    double derivative(double k, Side side = Side::two_sided) const;

    double second_derivative(double k, Side side = Side::two_sided) const;

    /// Return time tau(k) = J(k) - k J'(k); positive on the open interval.
    double return_time(double k, Side side = Side::two_sided) const;

    /// Rotation number w(k) = -J'(k) of the orbit cylinder at level k.
    double rotation(double k, Side side = Side::two_sided) const;

    /// J'(0+) - J'(0-); equals -e for a valid profile.
    double derivative_jump_at_zero() const;

    /// Breakpoints strictly inside (k_minus, k_plus), zero included once.
    std::vector<double> interior_breakpoints() const;

    /// Full admissibility audit on a dense grid plus all breakpoints.
    ValidationReport validate(int grid_density = 512) const;

    /// The rescaled profile k -> c J(k/c), the pullback under fiberwise scaling.
    Profile scaled(double c) const;

private:
    EulerNumber e_;
    BranchFunction neg_;
    BranchFunction pos_;
};

} // namespace systolica
