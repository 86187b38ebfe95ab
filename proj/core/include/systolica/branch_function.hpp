#pragma once

#include <vector>

namespace systolica {

/// Side selector for one-sided evaluation at kinks and domain endpoints.
enum class Side { left, right, two_sided };

enum class BranchKind { piecewise_polynomial, cubic_hermite_spline };

/// A scalar function of one variable on a closed interval, stored either as a
/// piecewise polynomial in local coordinates or as a cubic Hermite spline.
/// Evaluation and first-derivative evaluation are exact for the stored
/// representation (no re-fitting, no quadrature).
class BranchFunction {
public:
    /// Piecewise polynomial: piece i is sum_j coeff[i][j] * (x - breakpoints[i])^j
    /// on [breakpoints[i], breakpoints[i+1]].
    static BranchFunction piecewise_polynomial(std::vector<double> breakpoints,
                                               std::vector<std::vector<double>> coefficients);

    /// Cubic Hermite spline through (breakpoints[i], values[i]) with slopes derivatives[i].
    static BranchFunction cubic_hermite(std::vector<double> breakpoints,
                                        std::vector<double> values,
                                        std::vector<double> derivatives);

    BranchKind kind() const { return kind_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    double domain_lo() const { return breakpoints_.front(); }
    double domain_hi() const { return breakpoints_.back(); }

    double value(double x) const;
    double derivative(double x, Side side = Side::two_sided) const;
    double second_derivative(double x, Side side = Side::two_sided) const;

    /// Largest |value jump| across interior breakpoints (continuity defect).
    double max_value_jump() const;
    /// Largest |derivative jump| across interior breakpoints (C1 defect).
    double max_derivative_jump() const;

    /// The function x -> f(-x) on the reflected domain.
    BranchFunction mirrored() const;
    /// The function x -> c * f(x / c), c > 0 (profile scaling).
    BranchFunction scaled(double c) const;

    // Raw data access for serialization.
    const std::vector<std::vector<double>>& coefficients() const;
    const std::vector<double>& node_values() const;
    const std::vector<double>& node_derivatives() const;

private:
    BranchFunction() = default;

    std::size_t locate(double x, Side side) const;
    void check_shape() const;

    BranchKind kind_ = BranchKind::piecewise_polynomial;
    std::vector<double> breakpoints_;
    std::vector<std::vector<double>> coeff_;  // piecewise_polynomial
    std::vector<double> values_, derivs_;     // cubic_hermite_spline
};

} // namespace systolica
