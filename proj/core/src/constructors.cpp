#include "systolica/constructors.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "systolica/errors.hpp"

namespace systolica {

namespace {

/// Linear branch through two breakpoints, local coefficients {f(lo), slope}.
BranchFunction linear_branch(double lo, double hi, double value_at_lo, double slope) {
    return BranchFunction::piecewise_polynomial({lo, hi}, {{value_at_lo, slope}});
}

} // namespace

Profile zoll_profile(int e, double T) {
    if (e != 1 && e != 2)
        throw DomainError("zoll_profile: no Zoll form exists for e outside {1, 2}");
    if (!(T > 0.0)) throw DomainError("zoll_profile: T must be positive");
    const double s = (e == 2) ? 1.0 : 0.5;
    // J = s*(T - |k|) on [-T, T].
    BranchFunction neg = linear_branch(-T, 0.0, 0.0, s);
    BranchFunction pos = linear_branch(0.0, T, s * T, -s);
    return Profile(EulerNumber(e), std::move(neg), std::move(pos));
}

Profile besse_quotient_profile(int e, double scale) {
    if (e < 1) throw DomainError("besse_quotient_profile: e must be >= 1");
    if (!(scale > 0.0)) throw DomainError("besse_quotient_profile: scale must be positive");
    const double half_e = 0.5 * static_cast<double>(e);
    const double kp = scale / static_cast<double>(e);
    // J = scale/2 - (e/2)|k| on [-scale/e, scale/e].
    BranchFunction neg = linear_branch(-kp, 0.0, 0.0, half_e);
    BranchFunction pos = linear_branch(0.0, kp, 0.5 * scale, -half_e);
    return Profile(EulerNumber(e), std::move(neg), std::move(pos));
}

Profile eta_family_profile(EtaFamilyParams& params) {
    const int e = params.e;
    const double eta = params.eta;
    if (e <= 2) throw DomainError("eta_family_profile: e must be > 2");
    if (!(eta > 0.0) || !(eta < 1.0 / (2.0 + e)))
        throw DomainError("eta_family_profile: eta must lie in (0, 1/(2+e))");

    const double he = 0.5 * static_cast<double>(e);
    const double a = 0.5 - he * eta;

    // The slope -e/2 and slope -1 lines J = 1/2 - (e/2)r and J = a - r meet at
    // r_hat; a convex C1 joint must bracket r_hat, so its existence requires
    // r_hat < a, i.e. eta < (e-2)/e^2. (Any window inside (eta/2, eta) is too
    // far left: the mean slope a C1 interpolant would need there, -e/2 - 2,
    // lies below both end slopes, contradicting convexity.)
    const double r_hat = e * eta / (e - 2.0);
    if (!(r_hat < a)) {
        std::ostringstream os;
        os << "eta_family_profile: no convex C1 smoothing exists for e = " << e
           << ", eta = " << eta << " (requires eta < (e-2)/e^2 = "
           << (e - 2.0) / (static_cast<double>(e) * e) << ")";
        throw ConstructionError(os.str());
    }

    // Symmetric window around r_hat: a parabola tangent to both lines at the
    // window ends is automatically C1 (the cubic correction term vanishes by
    // symmetry) and convex, with f'' = (e-2)/(4h) > 0.
    const double h = 0.5 * std::min(r_hat - 0.5 * eta, a - r_hat);
    const double w0 = r_hat - h;
    const double w1 = r_hat + h;
    const double c2 = (e - 2.0) / (8.0 * h);

    std::vector<double> bp = {0.0, w0, w1, a};
    std::vector<std::vector<double>> coeff = {
        {0.5, -he},
        {0.5 - he * w0, -he, c2},
        {a - w1, -1.0},
    };
    BranchFunction pos = BranchFunction::piecewise_polynomial(bp, coeff);
    BranchFunction neg = pos.mirrored();
    Profile profile(EulerNumber(e), std::move(neg), std::move(pos));

    // Programmatic convexity and smoothness verification of the joint.
    const BranchFunction& f = profile.positive_branch();
    for (double r : {w0, 0.5 * (w0 + w1), w1}) {
        if (f.second_derivative(r, Side::right) < -1e-12 ||
            f.second_derivative(r, Side::left) < -1e-12)
            throw ConstructionError("eta_family_profile: interpolant not convex");
    }
    if (f.max_derivative_jump() > 1e-12 || f.max_value_jump() > 1e-14)
        throw ConstructionError("eta_family_profile: interpolant not C1");

    std::ostringstream os;
    os << "tangent parabola on [" << w0 << ", " << w1 << "]";
    params.smoothing = os.str();
    return profile;
}

Profile eta_family_profile(int e, double eta) {
    EtaFamilyParams p;
    p.e = e;
    p.eta = eta;
    return eta_family_profile(p);
}

Profile ellipsoid_profile(double a1, double a2) {
    if (!(a1 > 0.0) || !(a2 > 0.0))
        throw DomainError("ellipsoid_profile: a1, a2 must be positive");
    const double denom = a1 + a2;
    // J = (a1 - k) a2/(a1+a2) on [0, a1], (a2 + k) a1/(a1+a2) on [-a2, 0].
    BranchFunction neg = linear_branch(-a2, 0.0, 0.0, a1 / denom);
    BranchFunction pos = linear_branch(0.0, a1, a1 * a2 / denom, -a2 / denom);
    Profile profile(EulerNumber(1), std::move(neg), std::move(pos));

    // The derivation (linear branches, constant return time) is verified here
    // instead of trusted: jump -1, closure, tau constant at a1*a2/(a1+a2).
    const double tau = a1 * a2 / denom;
    if (std::abs(profile.derivative_jump_at_zero() + 1.0) > 1e-12)
        throw ConstructionError("ellipsoid_profile: slope jump check failed");
    for (double k : {0.5 * a1, 0.25 * a1, -0.5 * a2, -0.25 * a2})
        if (std::abs(profile.return_time(k) - tau) > 1e-12 * (1.0 + tau))
            throw ConstructionError("ellipsoid_profile: return time check failed");
    if (std::abs(profile.evaluate(a1)) > 1e-15 * denom ||
        std::abs(profile.evaluate(-a2)) > 1e-15 * denom)
        throw ConstructionError("ellipsoid_profile: closure check failed");
    return profile;
}

namespace {

constexpr int kHarmonics = 4;

/// Rotation-function model: w(k) = (e/2) sgn(k) + c0 + trig series in k - k_minus.
struct RotationModel {
    double e = 0.0;
    double k_minus = 0.0, k_plus = 0.0;
    double c0 = 0.0;
    double A[kHarmonics] = {}, B[kHarmonics] = {};

    double range() const { return k_plus - k_minus; }
    double omega(int j) const { return (j + 1) * M_PI / range(); }

    double trig(double k) const {
        const double u = k - k_minus;
        double s = c0;
        for (int j = 0; j < kHarmonics; ++j)
            s += A[j] * std::cos(omega(j) * u) + B[j] * std::sin(omega(j) * u);
        return s;
    }

    double w(double k, int sign) const { return 0.5 * e * sign + trig(k); }

    /// Antiderivative of w from k_minus; the c0 correction makes it vanish at k_plus.
    double W(double k, int /*unused sign: |k| + k_minus is sign-free*/) const {
        const double u = k - k_minus;
        double s = 0.5 * e * (std::abs(k) + k_minus) + c0 * u;
        for (int j = 0; j < kHarmonics; ++j) {
            const double om = omega(j);
            s += A[j] * std::sin(om * u) / om + B[j] * (1.0 - std::cos(om * u)) / om;
        }
        return s;
    }
};

/// Platform-deterministic uniform in [-1, 1): mt19937_64 is bit-exact per the
/// standard, and the 53-bit mantissa construction avoids the
/// implementation-defined std::uniform_real_distribution.
double symmetric_uniform(std::mt19937_64& gen) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

Profile build_from_model(const RotationModel& m, int e, int nodes_per_branch) {
    const int n = nodes_per_branch;
    std::vector<double> bp_n(n), val_n(n), der_n(n);
    std::vector<double> bp_p(n), val_p(n), der_p(n);
    for (int i = 0; i < n; ++i) {
        const double tn = static_cast<double>(i) / (n - 1);
        bp_n[i] = m.k_minus * (1.0 - tn);
        val_n[i] = -m.W(bp_n[i], -1);
        der_n[i] = -m.w(bp_n[i], -1);
        bp_p[i] = m.k_plus * tn;
        val_p[i] = -m.W(bp_p[i], +1);
        der_p[i] = -m.w(bp_p[i], +1);
    }
    bp_n.front() = m.k_minus;
    bp_n.back() = 0.0;
    bp_p.front() = 0.0;
    bp_p.back() = m.k_plus;
    // Closure holds analytically; pin the endpoint node values so the profile
    // representation closes exactly rather than to rounding error.
    val_n.front() = 0.0;
    val_p.back() = 0.0;
    val_n.back() = val_p.front() = 0.5 * (val_n.back() + val_p.front());
    return Profile(EulerNumber(e),
                   BranchFunction::cubic_hermite(bp_n, val_n, der_n),
                   BranchFunction::cubic_hermite(bp_p, val_p, der_p));
}

} // namespace

Profile random_admissible_profile(const RandomProfileParams& params) {
    if (!(params.k_minus < 0.0) || !(params.k_plus > 0.0))
        throw DomainError("random_admissible_profile: need k_minus < 0 < k_plus");
    if (!(params.roughness > 0.0))
        throw DomainError("random_admissible_profile: roughness must be positive");
    if (params.e == 0) throw DomainError("random_admissible_profile: e must be nonzero");
    if (params.nodes_per_branch < 4)
        throw DomainError("random_admissible_profile: need at least 4 nodes per branch");

    const double abs_e = std::abs(static_cast<double>(params.e));
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        std::mt19937_64 gen(params.seed ^
                            (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt)));
        RotationModel m;
        m.e = static_cast<double>(params.e);
        m.k_minus = params.k_minus;
        m.k_plus = params.k_plus;
        const double amp = params.roughness * 0.5 * abs_e;
        for (int j = 0; j < kHarmonics; ++j) {
            m.A[j] = amp * symmetric_uniform(gen) / (j + 1);
            m.B[j] = amp * symmetric_uniform(gen) / (j + 1);
        }
        // Enforce integral-zero of w so J = -W closes at both endpoints.
        const double R = m.range();
        double b_mass = 0.0;
        for (int j = 0; j < kHarmonics; ++j)
            b_mass += m.B[j] * R * (1.0 - ((j % 2 == 0) ? -1.0 : 1.0)) / ((j + 1) * M_PI);
        m.c0 = -(0.5 * m.e * (m.k_plus + m.k_minus) + b_mass) / R;

        Profile candidate = build_from_model(m, params.e, params.nodes_per_branch);
        if (candidate.validate(256).all_passed()) return candidate;
    }
    std::ostringstream os;
    os << "random_admissible_profile: rejection budget exhausted (seed " << params.seed
       << ", e " << params.e << ", " << params.max_attempts << " attempts)";
    throw GenerationError(os.str());
}

} // namespace systolica
