#pragma once

#include <string>
#include <vector>

#include "systolica/orbits.hpp"
#include "systolica/profile.hpp"

namespace systolica {

/// Outcome of testing a profile against the sharp systolic bound for its
/// Euler number: sys^2 / volume <= 1/e for e in {1, 2}, and < 1/2 for e > 2.
struct InequalityReport {
    int e = 0;
    double systole = 0.0;
    double volume = 0.0;
    double ratio = 0.0;   ///< systole^2 / volume
    double bound = 0.0;   ///< sharp upper bound for this Euler number
    double margin = 0.0;  ///< bound - ratio
    bool equality_flag = false;
    std::string branch;   ///< which case of the inequality applied
};

/// Certificate that the systolic bound holds, built from the comparison
/// function g = J + |k| (or J + |k|/2 when e = 1): g must dominate both |k|
/// and the systole pointwise, and integrating g reproduces a volume lower
/// bound that already exceeds the required multiple of sys^2.
struct CertificateReport {
    int e = 0;
    double systole = 0.0;
    double worst_pointwise_margin = 0.0;  ///< min over grid of g - max(|k|-type floor, systole floor)
    double argmin_k = 0.0;                ///< grid point realizing the worst margin
    double integral_bound = 0.0;          ///< volume lower bound reconstructed from g
    double volume = 0.0;
    bool passed = false;
};

/// Sampled check of the reversed inequality sys^2 / volume <= 1/|e| for
/// negative Euler numbers, fed by externally computed singular-fiber data.
struct NegativeEulerReport {
    int e = 0;
    double volume = 0.0;        ///< sum of w_i * K_i^2 with weights normalized to |e|
    double systole_bound = 0.0; ///< min |K_i|
    double ratio = 0.0;
    double bound = 0.0;         ///< 1/|e|
    double margin = 0.0;        ///< bound - ratio, computed so that it is exactly >= 0
    bool equality_flag = false;
};

/// Contact volume 2 * integral of J over [k_minus, k_plus].
double contact_volume(const Profile& profile, double tol = 1e-10);

/// systole^2 / volume.
double systolic_ratio(const Profile& profile, int grid_density = 4096);

/// Evaluates the sharp systolic inequality for e >= 1; throws TheoremError
/// if the computed data contradicts it beyond tolerance.
InequalityReport theorem_check(const Profile& profile, int grid_density = 4096);

/// Re-derives the volume lower bound through the comparison function and
/// reports the worst pointwise margin; throws CertificateError on violation.
CertificateReport certificate_check(const Profile& profile, int grid_density = 2048);

/// Checks sys^2 <= volume / |e| for a negative Euler number from singular
/// fiber periods K_i and orbifold weights w_i (which must sum to |e|).
NegativeEulerReport negative_euler_check(int e, const std::vector<double>& K_samples,
                                         const std::vector<double>& weights);

} // namespace systolica
