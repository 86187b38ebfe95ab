#pragma once

#include <cstdint>
#include <string>

#include "systolica/profile.hpp"

namespace systolica {

/// Parameters of the near-maximizer family for Euler number e > 2.
struct EtaFamilyParams {
    int e = 3;           ///< Euler number, > 2
    double eta = 0.05;   ///< in (0, 1/(2+e)); smaller eta pushes the ratio toward 1/2
    std::string smoothing;  ///< filled by the constructor: descriptor of the interpolant
};

struct RandomProfileParams {
    int e = 2;
    std::uint64_t seed = 0;
    double k_minus = -1.0;
    double k_plus = 1.0;
    /// Relative amplitude of the rotation-function variation on top of the
    /// two-plateau baseline +-e/2.
    double roughness = 0.3;
    int nodes_per_branch = 33;
    int max_attempts = 64;
};

/// Zoll profile J(k) = T - |k| (e = 2) or (T - |k|)/2 (e = 1) on [-T, T].
/// No Zoll form exists for e > 2, so other Euler numbers are rejected.
Profile zoll_profile(int e, double T);

/// Besse quotient: J(k) = scale/2 - (e/2)|k| on [-scale/e, scale/e]; the two
/// endpoint fibers have period scale/e, the regular orbits period scale
/// (e odd) or scale/2 (e even).
Profile besse_quotient_profile(int e, double scale);

/// Near-maximizer for e > 2: J(k) = f(|k|) with f linear of slope -e/2 near 0
/// and slope -1 near the endpoint a = 1/2 - e*eta/2, joined by a convex C^1
/// parabolic arc. Fills params.smoothing with a descriptor of the joint.
/// Throws ConstructionError when no convex C^1 joint exists for the requested
/// eta (eta >= (e-2)/e^2).
Profile eta_family_profile(EtaFamilyParams& params);
Profile eta_family_profile(int e, double eta);

/// Boundary of the toric ellipsoid E(a1, a2) as an e = 1 profile on [-a2, a1]:
/// linear branches with constant return time a1*a2/(a1+a2).
Profile ellipsoid_profile(double a1, double a2);

/// Deterministic seeded generator of admissible profiles: samples a rotation
/// function with the prescribed jump at 0, corrects it so J closes at both
/// endpoints, and rejection-checks positivity of J and tau. Throws
/// GenerationError when the rejection budget is exhausted.
Profile random_admissible_profile(const RandomProfileParams& params);

} // namespace systolica
