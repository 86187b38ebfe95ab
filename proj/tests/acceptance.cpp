// Acceptance gate: one timed line per criterion, exit code = number of
// failures.  Tolerances and time budgets are pinned here, next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "systolica/chart.hpp"
#include "systolica/constructors.hpp"
#include "systolica/errors.hpp"
#include "systolica/measures.hpp"
#include "systolica/orbits.hpp"
#include "systolica/revolution.hpp"

using namespace systolica;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Accumulates failure text without aborting the criterion.
struct Checker {
    Outcome out;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        out.ok = false;
        if (!out.detail.empty()) out.detail += "; ";
        out.detail += what;
    }
};

int run_criterion(int index, const char* title, double budget_s,
                  const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("unexpected exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed > budget_s) {
        out.ok = false;
        if (!out.detail.empty()) out.detail += "; ";
        std::ostringstream os;
        os << "over time budget (" << elapsed << " s > " << budget_s << " s)";
        out.detail += os.str();
    }
    std::printf("[%s] %d. %-58s %7.3f s%s%s\n", out.ok ? "PASS" : "FAIL", index, title, elapsed,
                out.detail.empty() ? "" : " -- ", out.detail.c_str());
    std::fflush(stdout);
    return out.ok ? 0 : 1;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// --- criteria -----------------------------------------------------------------

Outcome zoll_equality_pair() {
    Checker c;
    const InequalityReport z1 = theorem_check(zoll_profile(1, 1.0));
    c.require(std::abs(z1.ratio - 1.0) <= 1e-9, "e=1 ratio " + fmt(z1.ratio) + " != 1");
    c.require(z1.equality_flag, "e=1 equality flag not set");
    const InequalityReport z2 = theorem_check(zoll_profile(2, 1.0));
    c.require(std::abs(z2.ratio - 0.5) <= 1e-9, "e=2 ratio " + fmt(z2.ratio) + " != 1/2");
    c.require(z2.equality_flag, "e=2 equality flag not set");
    return c.out;
}

Outcome eta_family_approach() {
    Checker c;
    const int e = 3;
    for (double eta : {0.1, 0.05, 0.01, 0.001}) {
        const Profile p = eta_family_profile(e, eta);
        const SystoleResult s = systole(p);
        const double a = 0.5 - (0.5 * static_cast<double>(e)) * eta;
        c.require(s.value == a, "eta=" + fmt(eta) + ": systole " + fmt(s.value) +
                                    " != endpoint fiber period " + fmt(a) + " bitwise");
        c.require(s.witness.kind == OrbitKind::endpoint_fiber,
                  "eta=" + fmt(eta) + ": witness is not the endpoint fiber");
        const InequalityReport rep = theorem_check(p);
        c.require(rep.ratio < 0.5, "eta=" + fmt(eta) + ": ratio not strictly below 1/2");
        c.require(rep.ratio >= 0.5 - 5.0 * eta,
                  "eta=" + fmt(eta) + ": ratio " + fmt(rep.ratio) + " below 1/2 - 5 eta");
    }
    return c.out;
}

Outcome besse_spectra() {
    Checker c;
    for (int e : {3, 4, 5, 7}) {
        const Profile p = besse_quotient_profile(e, 1.0);
        const double cs = contractible_systole(p).value;
        const double vol = contact_volume(p);
        c.require(std::abs(cs * cs - e * vol) <= 1e-9,
                  "e=" + std::to_string(e) + ": contractible systole^2 != e * volume");
        const auto spectrum = action_spectrum(p, 8);
        const double second = (e % 2 == 1) ? 1.0 : 0.5;
        c.require(spectrum.size() == 2,
                  "e=" + std::to_string(e) + ": spectrum has " +
                      std::to_string(spectrum.size()) + " entries, expected 2");
        if (spectrum.size() == 2) {
            c.require(std::abs(spectrum[0].period - 1.0 / e) <= 1e-9,
                      "e=" + std::to_string(e) + ": first period != 1/e");
            c.require(std::abs(spectrum[1].period - second) <= 1e-9,
                      "e=" + std::to_string(e) + ": second period != " + fmt(second));
        }
    }
    return c.out;
}

Outcome ellipsoid_checks() {
    Checker c;
    const Profile ell = ellipsoid_profile(1.0, 2.0);
    const double sys = systole(ell).value;
    const double vol = contact_volume(ell);
    c.require(std::abs(sys - 1.0) <= 1e-9, "E(1,2) systole " + fmt(sys) + " != 1");
    c.require(std::abs(vol - 2.0) <= 1e-9, "E(1,2) volume " + fmt(vol) + " != 2");
    c.require(std::abs(sys * sys / vol - 0.5) <= 1e-9, "E(1,2) ratio != 1/2");
    const InequalityReport round = theorem_check(ellipsoid_profile(kPi, kPi));
    c.require(round.equality_flag, "E(pi,pi) equality flag not set");
    return c.out;
}

Outcome random_sweep() {
    Checker c;
    int generation_failures = 0;
    for (int e : {1, 2, 3, 5}) {
        double min_margin = 1e300;
        for (int seed = 1; seed <= 200; ++seed) {
            RandomProfileParams params;
            params.e = e;
            params.seed = static_cast<std::uint64_t>(seed);
            Profile p = zoll_profile(2, 1.0);
            try {
                p = random_admissible_profile(params);
            } catch (const GenerationError&) {
                ++generation_failures;
                continue;
            }
            try {
                const InequalityReport rep = theorem_check(p);
                min_margin = std::min(min_margin, rep.margin);
                c.require(rep.margin >= -1e-9, "e=" + std::to_string(e) + " seed " +
                                                   std::to_string(seed) + ": margin " +
                                                   fmt(rep.margin));
                if (e > 2)
                    c.require(rep.margin > 1e-9, "e=" + std::to_string(e) + " seed " +
                                                     std::to_string(seed) +
                                                     ": margin not strictly positive");
                const CertificateReport cert = certificate_check(p);
                c.require(cert.passed && cert.worst_pointwise_margin >= -1e-9,
                          "e=" + std::to_string(e) + " seed " + std::to_string(seed) +
                              ": certificate margin " + fmt(cert.worst_pointwise_margin));
            } catch (const Error& err) {
                c.require(false, "e=" + std::to_string(e) + " seed " + std::to_string(seed) +
                                     ": " + err.what());
            }
            if (!c.out.ok && c.out.detail.size() > 400) return c.out;  // enough evidence
        }
    }
    c.require(generation_failures == 0,
              std::to_string(generation_failures) + " of 800 seeds failed to generate");
    return c.out;
}

Outcome ode_roundtrip() {
    Checker c;
    std::vector<Profile> profiles = {zoll_profile(2, 1.0), ellipsoid_profile(1.0, 2.0)};
    for (int e : {1, 2, 3}) {
        RandomProfileParams params;
        params.e = e;
        params.seed = static_cast<std::uint64_t>(100 + e);
        profiles.push_back(random_admissible_profile(params));
    }
    int idx = 0;
    for (const Profile& p : profiles) {
        const RoundtripReport rep = roundtrip_audit(p, 50);
        const std::string tag = "profile " + std::to_string(idx++);
        c.require(rep.max_return_time_rel_err <= 1e-6,
                  tag + ": return time error " + fmt(rep.max_return_time_rel_err));
        c.require(rep.max_rotation_rel_err <= 1e-6,
                  tag + ": rotation error " + fmt(rep.max_rotation_rel_err));
        c.require(rep.jump_error <= 5e-3, tag + ": jump error " + fmt(rep.jump_error));
        c.require(rep.passed, tag + ": audit not passed");
    }
    return c.out;
}

Outcome chart_volume_match() {
    Checker c;
    RandomProfileParams params;
    params.e = 3;
    params.seed = 104;
    const std::vector<Profile> profiles = {zoll_profile(2, 1.0), ellipsoid_profile(1.0, 2.0),
                                           random_admissible_profile(params)};
    int idx = 0;
    for (const Profile& p : profiles) {
        const double vol = contact_volume(p);
        const double chart = chart_volume(p);
        c.require(std::abs(chart - vol) <= 1e-6 * std::max(1.0, std::abs(vol)),
                  "profile " + std::to_string(idx) + ": chart volume " + fmt(chart) +
                      " vs potential volume " + fmt(vol));
        ++idx;
    }
    return c.out;
}

Outcome revolution_oracle() {
    Checker c;
    const RevolutionMetric round = round_sphere_metric();
    const double sys = geodesic_systole(round).value;
    c.require(std::abs(sys - 2 * kPi) <= 1e-6, "round systole " + fmt(sys) + " != 2 pi");
    const double area = surface_area(round);
    c.require(std::abs(area - 4 * kPi) <= 1e-8, "round area " + fmt(area) + " != 4 pi");
    const InequalityReport fin = finsler_corollary_check(round);
    c.require(std::abs(fin.ratio - 1.0) <= 1e-6 && fin.equality_flag,
              "round ratio " + fmt(fin.ratio) + " not at equality");

    const RevolutionMetric bulged = perturbed_sphere_metric(0.1);
    const InequalityReport pert = finsler_corollary_check(bulged);
    c.require(pert.ratio < 1.0 - 1e-4, "bulged ratio " + fmt(pert.ratio) + " not below 1");

    const double drift = clairaut_drift(round, 0.7, 0.9, 100.0);
    c.require(drift <= 1e-8, "Clairaut drift " + fmt(drift) + " over arclength 100");

    const GeodesicCrosscheckReport xc = quadrature_ode_crosscheck(round, 20);
    c.require(xc.passed && xc.max_delta_theta_err <= 1e-5 && xc.max_arc_err <= 1e-5,
              "quadrature/ODE mismatch: dtheta " + fmt(xc.max_delta_theta_err) + ", arc " +
                  fmt(xc.max_arc_err));
    return c.out;
}

Outcome negative_euler_sweep() {
    Checker c;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> period(0.2, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const int e = -(1 + i % 5);
        const std::size_t n = 2 + i % 4;
        const bool constant = (i % 10 == 0);
        std::vector<double> K(n), w(n, std::abs(e) / static_cast<double>(n));
        const double base = period(rng);
        for (std::size_t j = 0; j < n; ++j)
            K[j] = constant ? base : base + 0.05 * static_cast<double>(j + 1);
        const NegativeEulerReport rep = negative_euler_check(e, K, w);
        c.require(rep.margin >= 0.0, "set " + std::to_string(i) + ": negative margin");
        if (constant) {
            c.require(rep.margin == 0.0,
                      "set " + std::to_string(i) + ": constant data but margin " +
                          fmt(rep.margin));
            c.require(rep.equality_flag, "set " + std::to_string(i) + ": equality flag not set");
        } else {
            c.require(rep.margin > 0.0,
                      "set " + std::to_string(i) + ": spread data but zero margin");
        }
        if (!c.out.ok && c.out.detail.size() > 400) return c.out;
    }
    return c.out;
}

} // namespace

int main() {
    int failures = 0;
    failures += run_criterion(1, "Zoll profiles reach equality (ratio 1 and 1/2)", 1.0,
                              zoll_equality_pair);
    failures += run_criterion(2, "eta family: fiber systole, ratio strictly below 1/2", 5.0,
                              eta_family_approach);
    failures += run_criterion(3, "Besse quotients: contractible systole and spectra", 2.0,
                              besse_spectra);
    failures += run_criterion(4, "ellipsoid E(1,2) exact data; E(pi,pi) equality", 1.0,
                              ellipsoid_checks);
    failures += run_criterion(5, "800 random profiles: theorem and certificate margins", 120.0,
                              random_sweep);
    failures += run_criterion(6, "chart ODE roundtrip on 5 profiles, 50 levels", 60.0,
                              ode_roundtrip);
    failures += run_criterion(7, "chart 3-D volume integral vs 2 int J on 3 profiles", 60.0,
                              chart_volume_match);
    failures += run_criterion(8, "surface-of-revolution oracle: round and bulged spheres", 120.0,
                              revolution_oracle);
    failures += run_criterion(9, "1000 negative-Euler sample sets: margin >= 0, = 0 iff const",
                              5.0, negative_euler_sweep);
    std::printf("acceptance: %d of 9 criteria failed\n", failures);
    return failures;
}
