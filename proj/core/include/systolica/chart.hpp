#pragma once

#include <array>
#include <vector>

#include "systolica/profile.hpp"

namespace systolica {

enum class ChartId { plus, minus };

/// Invariant contact form written in one polar coordinate chart.
///
/// Each chart trades the moment coordinate k for a radial coordinate r >= 0:
/// the plus chart covers k in (-delta, k_plus] via k = k_plus - r^2, the
/// minus chart covers [k_minus, delta) via k = k_minus + r^2, so each closure
/// locus k = K becomes the regular polar core r = 0.  In coordinates
/// (r, s, t) -- s the base angle, t the fiber angle, both of period one --
/// the form reads alpha = Q(r) ds + P(r) dt.  P is the moment coordinate k
/// itself (the pairing of alpha with the circle action), while Q extends the
/// potential across k = 0 so that the derivative kink of J is absorbed:
/// on the plus chart Q = J for k >= 0 and Q = J - e k below, on the minus
/// chart Q = -J for k <= 0 and Q = -J - e k above.  The contact volume
/// density P Q' - Q P' (prime = d/dr) then equals 2 r tau on both charts.
class ChartContactForm {
public:
    ChartContactForm(Profile profile, ChartId chart, double delta);

    ChartId chart() const { return chart_; }
    const Profile& profile() const { return profile_; }
    double delta() const { return delta_; }
    /// Largest admissible radius (the image of the far end of the k-range).
    double r_max() const;
    /// Orientation of the base angle: +1 on the plus chart, -1 on the minus.
    double direction() const { return chart_ == ChartId::plus ? 1.0 : -1.0; }

    double k_of_r(double r) const;
    double r_of_k(double k) const;

    double P(double r) const;
    double Q(double r) const;
    /// dQ/dk at k = k_of_r(r); one-sided values merge continuously at k = 0.
    double Q_k_prime_of_k(double k) const;
    /// Return time expressed through the chart data (equals J - k J').
    double tau_of_k(double k) const;
    /// Contact density P Q' - Q P' with respect to r; equals 2 r tau.
    double density(double r) const;
    /// Reeb field components (dr/dt, ds/dt, dt/dt) at radius r.
    std::array<double, 3> reeb_rates(double r) const;

private:
    Profile profile_;
    ChartId chart_;
    double delta_;
};

/// Builds one chart; delta defaults to min(k_plus, -k_minus)/4 and must stay
/// below half of that reach so both polar cores are genuinely covered once.
ChartContactForm build_chart_form(const Profile& profile, ChartId chart, double delta = -1.0);

/// A point of the overlap carried from plus-chart to minus-chart coordinates:
/// r~ = sqrt(k - k_minus), s~ = -s, t~ = t - e s (angles wrapped to [0,1)).
std::array<double, 3> glue_plus_to_minus(const Profile& profile, double r, double s, double t);

/// Max over random overlap samples of |Q_plus + Q_minus + e k| and
/// |P_plus - P_minus|; this is the obstruction to the two chart forms being
/// the same global form under the gluing above.
double overlap_form_defect(const ChartContactForm& plus, const ChartContactForm& minus,
                           int samples = 100, unsigned long long seed = 12345);

/// One Reeb trajectory integrated in chart coordinates until the base angle
/// has advanced by one full turn.
struct ReebSample {
    ChartId chart = ChartId::plus;
    double k = 0.0;
    double r = 0.0;
    double s0 = 0.0;
    double t0 = 0.0;
    double return_time = 0.0;  ///< elapsed time at the section return
    double rotation = 0.0;     ///< fiber angle advance over one return
};

/// Integrates the Reeb flow at moment level k (chart picked by the sign of k)
/// and measures the section return.  k = 0 is ambiguous between charts and is
/// rejected; the closure endpoints are legal (r = 0 is regular).
ReebSample integrate_return(const ChartContactForm& form, double k, double s0 = 0.0,
                            double t0 = 0.0);
ReebSample integrate_return(const Profile& profile, double k);

/// Chart-side audit of the potential calculus: every row compares an ODE
/// measurement against the closed-form prediction.
struct RoundtripReport {
    std::vector<ReebSample> rows;
    double max_return_time_rel_err = 0.0;
    double max_rotation_rel_err = 0.0;
    double jump_estimate = 0.0;           ///< Richardson-extrapolated rotation jump at k = 0
    double jump_error = 0.0;              ///< |jump_estimate - e|
    double reconstruction_sup_error = 0.0;  ///< sup |J rebuilt from measured rotations - J|
    bool passed = false;
};

/// Measures return times and rotations on ~sample_count levels, estimates the
/// rotation jump across k = 0, and rebuilds J by integrating the measured
/// rotation inward from the closure endpoints (where J vanishes exactly).
RoundtripReport roundtrip_audit(const Profile& profile, int sample_count = 50);

/// Contact volume computed as a genuine 3-D chart integral of the density
/// over (r, s, t); agrees with 2 * integral of J.
double chart_volume(const Profile& profile, double tol = 1e-10);

/// Sampled Reeb trajectory rows (lambda, r, s, t); the angles are reported in
/// the universal cover (not wrapped).
std::vector<std::array<double, 4>> trace_orbit(const Profile& profile, double k,
                                               double duration, int samples = 256);

} // namespace systolica
