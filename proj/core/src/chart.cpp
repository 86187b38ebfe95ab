#include "systolica/chart.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "systolica/errors.hpp"
#include "systolica/numerics/ode.hpp"
#include "systolica/numerics/quadrature.hpp"

namespace systolica {

namespace {

double wrap_unit(double x) { return x - std::floor(x); }

double chart_scale(const Profile& p) {
    return std::max({1.0, p.evaluate(0.0), -p.k_minus(), p.k_plus()});
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

} // namespace

ChartContactForm::ChartContactForm(Profile profile, ChartId chart, double delta)
    : profile_(std::move(profile)), chart_(chart), delta_(delta) {
    const double reach = std::min(profile_.k_plus(), -profile_.k_minus());
    if (!(delta_ > 0.0) || !(delta_ < 0.5 * reach))
        throw DomainError("chart form: delta must lie in (0, min(k_plus, -k_minus)/2)");
    // The chart is contact only where the density is positive away from the
    // polar core; sample it once at construction.
    const double rm = r_max();
    std::vector<double> radii;
    for (int i = 1; i <= 256; ++i) radii.push_back(rm * i / 256.0);
    for (double bp : profile_.interior_breakpoints()) {
        const double rr = chart_ == ChartId::plus ? profile_.k_plus() - bp
                                                  : bp - profile_.k_minus();
        if (rr > 0.0 && std::sqrt(rr) < rm) radii.push_back(std::sqrt(rr));
    }
    for (double r : radii) {
        if (!(density(r) > 0.0))
            throw ConstructionError("chart form: contact density nonpositive at r=" + fmt(r));
    }
}

double ChartContactForm::r_max() const {
    return chart_ == ChartId::plus ? std::sqrt(profile_.k_plus() + delta_)
                                   : std::sqrt(delta_ - profile_.k_minus());
}

double ChartContactForm::k_of_r(double r) const {
    if (!(r >= 0.0) || r > r_max() * (1.0 + 1e-12))
        throw DomainError("chart form: radius outside the chart");
    return chart_ == ChartId::plus ? profile_.k_plus() - r * r : profile_.k_minus() + r * r;
}

double ChartContactForm::r_of_k(double k) const {
    const double snap = 1e-12 * chart_scale(profile_);
    if (chart_ == ChartId::plus) {
        if (k > profile_.k_plus() + snap || k <= -delta_)
            throw DomainError("chart form: k outside the plus chart range");
        return std::sqrt(std::max(0.0, profile_.k_plus() - k));
    }
    if (k < profile_.k_minus() - snap || k >= delta_)
        throw DomainError("chart form: k outside the minus chart range");
    return std::sqrt(std::max(0.0, k - profile_.k_minus()));
}

double ChartContactForm::P(double r) const { return k_of_r(r); }

double ChartContactForm::Q(double r) const {
    const double k = k_of_r(r);
    const double e = static_cast<double>(profile_.euler().value());
    if (chart_ == ChartId::plus)
        return k >= 0.0 ? profile_.evaluate(k) : profile_.evaluate(k) - e * k;
    return k <= 0.0 ? -profile_.evaluate(k) : -profile_.evaluate(k) - e * k;
}

double ChartContactForm::Q_k_prime_of_k(double k) const {
    const double e = static_cast<double>(profile_.euler().value());
    if (chart_ == ChartId::plus) {
        if (k > 0.0) return profile_.derivative(k);
        if (k < 0.0) return profile_.derivative(k) - e;
        return profile_.derivative(0.0, Side::right);
    }
    if (k < 0.0) return -profile_.derivative(k);
    if (k > 0.0) return -profile_.derivative(k) - e;
    return -profile_.derivative(0.0, Side::left);
}

double ChartContactForm::tau_of_k(double k) const {
    const Side side = (k == 0.0)
                          ? (chart_ == ChartId::plus ? Side::right : Side::left)
                          : Side::two_sided;
    return profile_.evaluate(k) - k * profile_.derivative(k, side);
}

double ChartContactForm::density(double r) const {
    const double k = k_of_r(r);
    const double dk_dr = chart_ == ChartId::plus ? -2.0 * r : 2.0 * r;
    const double p = P(r);
    const double q = Q(r);
    const double dp_dr = dk_dr;
    const double dq_dr = Q_k_prime_of_k(k) * dk_dr;
    return p * dq_dr - q * dp_dr;
}

std::array<double, 3> ChartContactForm::reeb_rates(double r) const {
    const double k = k_of_r(r);
    const double tau = tau_of_k(k);
    if (!(tau > 0.0))
        throw AdmissibilityError("chart form: nonpositive return time at k=" + fmt(k));
    const double dir = direction();
    return {0.0, dir / tau, -dir * Q_k_prime_of_k(k) / tau};
}

ChartContactForm build_chart_form(const Profile& profile, ChartId chart, double delta) {
    const double reach = std::min(profile.k_plus(), -profile.k_minus());
    if (delta < 0.0) delta = 0.25 * reach;
    return ChartContactForm(profile, chart, delta);
}

std::array<double, 3> glue_plus_to_minus(const Profile& profile, double r, double s, double t) {
    const double k = profile.k_plus() - r * r;
    const double delta = 0.25 * std::min(profile.k_plus(), -profile.k_minus());
    if (!(std::abs(k) < delta))
        throw DomainError("glue_plus_to_minus: point lies outside the chart overlap");
    const double e = static_cast<double>(profile.euler().value());
    return {std::sqrt(k - profile.k_minus()), wrap_unit(-s), wrap_unit(t - e * s)};
}

double overlap_form_defect(const ChartContactForm& plus, const ChartContactForm& minus,
                           int samples, unsigned long long seed) {
    if (plus.chart() != ChartId::plus || minus.chart() != ChartId::minus)
        throw DomainError("overlap_form_defect: pass the plus chart first, the minus second");
    const double delta = std::min(plus.delta(), minus.delta());
    const double e = static_cast<double>(plus.profile().euler().value());
    std::mt19937_64 gen(seed);
    const auto uniform = [&gen]() {
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;
    };
    double defect = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double k = (i == 0) ? 0.0 : 0.999 * delta * (2.0 * uniform() - 1.0);
        const double rp = plus.r_of_k(k);
        const double rm = minus.r_of_k(k);
        defect = std::max(defect, std::abs(plus.Q(rp) + minus.Q(rm) + e * k));
        defect = std::max(defect, std::abs(plus.P(rp) - minus.P(rm)));
    }
    return defect;
}

ReebSample integrate_return(const ChartContactForm& form, double k, double s0, double t0) {
    const double r = form.r_of_k(k);
    const double tau_ref = form.tau_of_k(k);
    if (!(tau_ref > 0.0))
        throw AdmissibilityError("integrate_return: nonpositive return time at k=" + fmt(k));
    const double dir = form.direction();

    num::RungeKutta<3> rk([&form](double, const num::State<3>& y) {
        return form.reeb_rates(y[0]);
    });
    const auto event = [dir, s0](double, const num::State<3>& y) {
        return dir * (y[1] - s0) - 1.0;
    };
    const auto hit = rk.integrate_to_event(0.0, {r, s0, t0}, event, +1, 10.0 * tau_ref);

    ReebSample out;
    out.chart = form.chart();
    out.k = k;
    out.r = r;
    out.s0 = s0;
    out.t0 = t0;
    out.return_time = hit.t;
    out.rotation = hit.y[2] - t0;
    return out;
}

ReebSample integrate_return(const Profile& profile, double k) {
    if (k == 0.0)
        throw DomainError("integrate_return: k = 0 is ambiguous between the two charts");
    const ChartId chart = k > 0.0 ? ChartId::plus : ChartId::minus;
    return integrate_return(build_chart_form(profile, chart), k);
}

namespace {

/// Audit levels on one branch, placed away from both the kink at zero and the
/// closure endpoint by a 2% margin.
std::vector<double> branch_levels(double endpoint, int count) {
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i)
        out.push_back(endpoint * (0.02 + 0.96 * (i + 0.5) / count));
    return out;
}

/// Rebuilds J on one branch purely from ODE-measured rotations, anchored at
/// the closure endpoint where J vanishes, and returns the sup deviation from
/// the potential at the marching nodes.  Interval quadrature is Simpson with
/// a measured midpoint, which is exact for the piecewise-polynomial rotation
/// once every breakpoint is a node.
double reconstruct_branch(const Profile& profile, const ChartContactForm& form,
                          double endpoint, const std::vector<double>& levels) {
    const auto measured_w = [&](double k) { return integrate_return(form, k).rotation; };

    std::vector<double> nodes = levels;
    nodes.push_back(endpoint);
    double innermost = endpoint;
    for (double k : levels) innermost = std::abs(k) < std::abs(innermost) ? k : innermost;
    for (double bp : profile.interior_breakpoints())
        if (std::abs(bp) > std::abs(innermost) && std::abs(bp) < std::abs(endpoint) &&
            bp * endpoint > 0.0)
            nodes.push_back(bp);
    // March from the closure endpoint inward (descending |k|).
    std::sort(nodes.begin(), nodes.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [&](double a, double b) {
                                return std::abs(a - b) <= 1e-12 * chart_scale(profile);
                            }),
                nodes.end());

    double j_rec = 0.0;  // J at the closure endpoint
    double sup_err = std::abs(profile.evaluate(endpoint));
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double a = nodes[i];      // outer node
        const double b = nodes[i + 1];  // inner node
        const double wa = measured_w(a);
        const double wm = measured_w(0.5 * (a + b));
        const double wb = measured_w(b);
        // J(b) - J(a) = -int_a^b w dk, oriented along the actual k-axis.
        j_rec += -(b - a) / 6.0 * (wa + 4.0 * wm + wb);
        sup_err = std::max(sup_err, std::abs(j_rec - profile.evaluate(b)));
    }
    return sup_err;
}

} // namespace

RoundtripReport roundtrip_audit(const Profile& profile, int sample_count) {
    if (sample_count < 8) throw DomainError("roundtrip_audit: need at least 8 samples");
    const ChartContactForm plus = build_chart_form(profile, ChartId::plus);
    const ChartContactForm minus = build_chart_form(profile, ChartId::minus);
    const auto form_for = [&](double k) -> const ChartContactForm& {
        return k > 0.0 ? plus : minus;
    };

    RoundtripReport rep;
    const int per_branch = std::max(sample_count / 2, 4);
    std::vector<double> levels = branch_levels(profile.k_minus(), per_branch);
    const std::vector<double> pos_levels = branch_levels(profile.k_plus(), per_branch);
    levels.insert(levels.end(), pos_levels.begin(), pos_levels.end());

    for (double k : levels) {
        const ReebSample row = integrate_return(form_for(k), k);
        const double tau_ref = profile.return_time(k);
        const double w_ref = profile.rotation(k);
        rep.max_return_time_rel_err =
            std::max(rep.max_return_time_rel_err,
                     std::abs(row.return_time - tau_ref) / std::max(1.0, std::abs(tau_ref)));
        rep.max_rotation_rel_err =
            std::max(rep.max_rotation_rel_err,
                     std::abs(row.rotation - w_ref) / std::max(1.0, std::abs(w_ref)));
        rep.rows.push_back(row);
    }

    // The rotation jumps by exactly e across k = 0; estimate it from measured
    // rotations at +-eps and +-2eps and cancel the linear error in eps by
    // Richardson extrapolation.
    const double eps = std::min(1e-3, 0.1 * std::min(profile.k_plus(), -profile.k_minus()));
    const auto jump_at = [&](double h) {
        return integrate_return(plus, h).rotation - integrate_return(minus, -h).rotation;
    };
    rep.jump_estimate = 2.0 * jump_at(eps) - jump_at(2.0 * eps);
    rep.jump_error =
        std::abs(rep.jump_estimate - static_cast<double>(profile.euler().value()));

    rep.reconstruction_sup_error =
        std::max(reconstruct_branch(profile, plus, profile.k_plus(), pos_levels),
                 reconstruct_branch(profile, minus, profile.k_minus(),
                                    branch_levels(profile.k_minus(), per_branch)));

    rep.passed = rep.max_return_time_rel_err <= 1e-6 && rep.max_rotation_rel_err <= 1e-6 &&
                 rep.jump_error <= 5e-3 && rep.reconstruction_sup_error <= 1e-6;
    return rep;
}

double chart_volume(const Profile& profile, double tol) {
    double total = 0.0;
    for (ChartId id : {ChartId::plus, ChartId::minus}) {
        const ChartContactForm form = build_chart_form(profile, id);
        // Radial range covering exactly half of the moment interval, so the
        // two charts partition the volume at k = 0.
        const double r_hi = id == ChartId::plus ? std::sqrt(profile.k_plus())
                                                : std::sqrt(-profile.k_minus());
        std::vector<double> splits;
        for (double bp : profile.interior_breakpoints()) {
            if (bp == 0.0) continue;
            if (id == ChartId::plus && bp > 0.0)
                splits.push_back(std::sqrt(profile.k_plus() - bp));
            if (id == ChartId::minus && bp < 0.0)
                splits.push_back(std::sqrt(bp - profile.k_minus()));
        }
        std::sort(splits.begin(), splits.end());
        // Honest 3-D integral: midpoint rule over a 4x4 grid of (s, t) cells
        // times an adaptive radial quadrature of the chart density.
        constexpr int cells = 4;
        for (int i = 0; i < cells; ++i) {
            for (int j = 0; j < cells; ++j) {
                const double s = (i + 0.5) / cells;
                const double t = (j + 0.5) / cells;
                const auto density_3d = [&form, s, t](double r) {
                    (void)s;
                    (void)t;
                    return form.density(r);
                };
                total += num::integrate_with_splits(density_3d, 0.0, r_hi, splits,
                                                    tol / (2.0 * cells * cells)) /
                         (cells * cells);
            }
        }
    }
    return total;
}

std::vector<std::array<double, 4>> trace_orbit(const Profile& profile, double k,
                                               double duration, int samples) {
    if (k == 0.0) throw DomainError("trace_orbit: k = 0 is ambiguous between the two charts");
    if (!(duration > 0.0)) throw DomainError("trace_orbit: duration must be positive");
    if (samples < 2) throw DomainError("trace_orbit: need at least two samples");
    const ChartContactForm form =
        build_chart_form(profile, k > 0.0 ? ChartId::plus : ChartId::minus);
    num::RungeKutta<3> rk([&form](double, const num::State<3>& y) {
        return form.reeb_rates(y[0]);
    });
    std::vector<std::array<double, 4>> rows;
    rows.reserve(samples);
    num::State<3> y = {form.r_of_k(k), 0.0, 0.0};
    double lambda = 0.0;
    rows.push_back({lambda, y[0], y[1], y[2]});
    for (int i = 1; i < samples; ++i) {
        const double next = duration * i / (samples - 1);
        y = rk.propagate(lambda, y, next);
        lambda = next;
        rows.push_back({lambda, y[0], y[1], y[2]});
    }
    return rows;
}

} // namespace systolica
