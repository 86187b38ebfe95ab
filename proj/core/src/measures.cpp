#include "systolica/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "systolica/errors.hpp"
#include "systolica/numerics/quadrature.hpp"

namespace systolica {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

double measure_scale(const Profile& p) {
    return std::max({1.0, p.evaluate(0.0), -p.k_minus(), p.k_plus()});
}

} // namespace

double contact_volume(const Profile& profile, double tol) {
    const auto j = [&](double k) { return profile.evaluate(k); };
    return 2.0 * num::integrate_with_splits(j, profile.k_minus(), profile.k_plus(),
                                            profile.interior_breakpoints(), tol);
}

double systolic_ratio(const Profile& profile, int grid_density) {
    const double sys = systole(profile, grid_density).value;
    const double vol = contact_volume(profile);
    if (!(vol > 0.0)) throw AdmissibilityError("systolic_ratio: nonpositive contact volume");
    return sys * sys / vol;
}

InequalityReport theorem_check(const Profile& profile, int grid_density) {
    const int e = profile.euler().value();
    if (e < 1)
        throw DomainError("theorem_check: requires a positive Euler number, got e=" +
                          std::to_string(e));
    InequalityReport rep;
    rep.e = e;
    rep.systole = systole(profile, grid_density).value;
    rep.volume = contact_volume(profile);
    if (!(rep.volume > 0.0)) throw AdmissibilityError("theorem_check: nonpositive volume");
    rep.ratio = rep.systole * rep.systole / rep.volume;
    rep.bound = (e <= 2) ? 1.0 / e : 0.5;
    rep.branch = (e == 1) ? "e=1" : (e == 2) ? "e=2" : "e>2";
    rep.margin = rep.bound - rep.ratio;
    rep.equality_flag = std::abs(rep.margin) <= 1e-8 * std::max(rep.bound, rep.ratio);

    if (rep.margin < -1e-9)
        throw TheoremError("theorem_check: systolic ratio " + fmt(rep.ratio) +
                           " exceeds the sharp bound " + fmt(rep.bound) + " for " + rep.branch);
    if (e > 2 && !(rep.margin > 1e-9))
        throw TheoremError("theorem_check: ratio " + fmt(rep.ratio) +
                           " fails to sit strictly below 1/2 for e=" + std::to_string(e));
    if (rep.equality_flag && e <= 2 && classify(profile) != ProfileClass::Zoll)
        throw TheoremError("theorem_check: equality reached by a profile that is not Zoll");
    return rep;
}

CertificateReport certificate_check(const Profile& profile, int grid_density) {
    const int e = profile.euler().value();
    if (e < 1)
        throw DomainError("certificate_check: requires a positive Euler number, got e=" +
                          std::to_string(e));
    CertificateReport rep;
    rep.e = e;
    rep.systole = systole(profile, grid_density).value;
    rep.volume = contact_volume(profile);
    const double scale = measure_scale(profile);

    // Comparison function and the floor it must dominate.  For e >= 2 the
    // certificate is g = J + |k| >= max(|k|, sys); for e = 1 every quantity
    // is halved: g = J + |k|/2 >= max(|k|/2, sys/2).
    const double half = (e == 1) ? 0.5 : 1.0;
    const auto g = [&](double k) { return profile.evaluate(k) + half * std::abs(k); };
    const auto floor_fn = [&](double k) {
        return std::max(half * std::abs(k), half * rep.systole);
    };

    std::vector<double> ks;
    const int n = std::max(grid_density, 16);
    ks.reserve(static_cast<std::size_t>(n) + 8);
    for (int i = 0; i <= n; ++i)
        ks.push_back(profile.k_minus() + (profile.k_plus() - profile.k_minus()) * i / n);
    for (double bp : profile.interior_breakpoints()) ks.push_back(bp);
    std::sort(ks.begin(), ks.end());

    rep.worst_pointwise_margin = std::numeric_limits<double>::infinity();
    rep.argmin_k = ks.front();
    for (double k : ks) {
        const double m = g(k) - floor_fn(k);
        if (m < rep.worst_pointwise_margin) {
            rep.worst_pointwise_margin = m;
            rep.argmin_k = k;
        }
    }
    if (rep.worst_pointwise_margin < -1e-9 * scale)
        throw CertificateError("certificate_check: comparison function dips below its floor by " +
                               fmt(-rep.worst_pointwise_margin) + " at k=" + fmt(rep.argmin_k));

    // Integrating g over the symmetric window [-Km, Km] and removing the
    // exactly-known contribution of half*|k| leaves a volume lower bound that
    // must still clear the required multiple of sys^2.
    const double km = std::min(profile.k_plus(), -profile.k_minus());
    std::vector<double> splits = profile.interior_breakpoints();
    const double integral_g =
        num::integrate_with_splits(g, -km, km, splits, 1e-10);
    const double window_floor_area = half * km * km;  // integral of half*|k| over [-Km, Km]
    rep.integral_bound = 2.0 * (integral_g - window_floor_area);

    const double factor = (e == 1) ? 1.0 : 2.0;
    const double area_tol = 1e-9 * scale * scale;
    if (rep.integral_bound < factor * rep.systole * rep.systole - area_tol)
        throw CertificateError("certificate_check: integral bound " + fmt(rep.integral_bound) +
                               " fails to dominate " + fmt(factor) + " * sys^2 = " +
                               fmt(factor * rep.systole * rep.systole));
    if (rep.volume < rep.integral_bound - area_tol)
        throw CertificateError("certificate_check: volume " + fmt(rep.volume) +
                               " fell below its own lower bound " + fmt(rep.integral_bound));
    rep.passed = true;
    return rep;
}

NegativeEulerReport negative_euler_check(int e, const std::vector<double>& K_samples,
                                         const std::vector<double>& weights) {
    if (e >= 0)
        throw DomainError("negative_euler_check: requires e < 0, got e=" + std::to_string(e));
    if (K_samples.empty() || K_samples.size() != weights.size())
        throw DomainError("negative_euler_check: need matching nonempty samples and weights");
    const double abs_e = std::abs(static_cast<double>(e));
    double weight_sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw DomainError("negative_euler_check: weights must be positive");
        weight_sum += w;
    }
    if (std::abs(weight_sum - abs_e) > 1e-9)
        throw NormalizationError("negative_euler_check: weights sum to " + fmt(weight_sum) +
                                 ", expected |e| = " + fmt(abs_e));
    for (double K : K_samples)
        if (K == 0.0)
            throw TransversalityError(
                "negative_euler_check: a singular fiber period vanished (non-transverse data)");

    NegativeEulerReport rep;
    rep.e = e;
    rep.bound = 1.0 / abs_e;
    double min_abs = std::abs(K_samples.front());
    double max_abs = min_abs;
    for (double K : K_samples) {
        min_abs = std::min(min_abs, std::abs(K));
        max_abs = std::max(max_abs, std::abs(K));
    }
    rep.systole_bound = min_abs;

    // Normalize weights internally so the identity margin = bound - ratio can
    // be evaluated as a sum of individually nonnegative terms; this makes
    // margin >= 0 hold exactly in floating point, with margin == 0 precisely
    // when every sample has the same |K|.
    const double min_sq = min_abs * min_abs;
    double volume = 0.0;
    double excess = 0.0;
    for (std::size_t i = 0; i < K_samples.size(); ++i) {
        const double wt = weights[i] * (abs_e / weight_sum);
        const double k_sq = K_samples[i] * K_samples[i];
        volume += wt * k_sq;
        excess += wt * (k_sq - min_sq);
    }
    rep.volume = volume;
    rep.ratio = min_sq / volume;
    rep.margin = excess / (abs_e * volume);
    rep.equality_flag = (max_abs - min_abs) <= 1e-9 * std::max(1.0, max_abs);
    return rep;
}

} // namespace systolica
