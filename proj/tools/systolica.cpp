#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "systolica/chart.hpp"
#include "systolica/constructors.hpp"
#include "systolica/errors.hpp"
#include "systolica/io.hpp"
#include "systolica/measures.hpp"
#include "systolica/orbits.hpp"
#include "systolica/profile.hpp"
#include "systolica/revolution.hpp"

using namespace systolica;

namespace {

constexpr const char* kProfileTag = "systolica-profile/1";
constexpr const char* kMetricTag = "systolica-revmetric/1";

std::string g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// Writes to the given path, or to stdout when no path was requested.
void emit(const std::string& body, const std::string& out_path) {
    if (out_path.empty())
        std::fputs(body.c_str(), stdout);
    else
        write_text_file(out_path, body);
}

int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* s = std::getenv("SYSTOLICA_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (end != s && v > 0) return static_cast<int>(std::min<long>(v, 256));
    }
    return static_cast<int>(hw);
}

std::string orbit_label(const ClosedOrbit& o) {
    std::ostringstream os;
    if (o.kind == OrbitKind::endpoint_fiber)
        os << "fiber at k=" << g(o.k);
    else
        os << "section " << o.p << "/" << o.q << " at k=" << g(o.k);
    return os.str();
}

std::string validation_to_text(const ValidationReport& r) {
    std::ostringstream os;
    for (const auto& c : r.checks)
        os << (c.passed ? "pass" : "FAIL") << "  " << c.name << "  margin=" << g(c.margin)
           << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    os << (r.all_passed() ? "all checks passed" : "validation failed") << "\n";
    return os.str();
}

std::string inequality_to_text(const InequalityReport& r) {
    std::ostringstream os;
    os << "inequality [" << r.branch << "]: ratio=" << g(r.ratio) << " bound=" << g(r.bound)
       << " margin=" << g(r.margin) << " equality=" << (r.equality_flag ? "yes" : "no");
    return os.str();
}

// ---------------------------------------------------------------------------
// make

struct MakeArgs {
    int e = 2;
    double T = 1.0;
    double scale = 1.0;
    double eta = 0.05;
    double a1 = 1.0, a2 = 2.0;
    double A = 0.1;
    int nodes = 1025;
    RandomProfileParams random;
    std::string out;
};

void setup_make(CLI::App& app, MakeArgs& a) {
    auto* make = app.add_subcommand("make", "Construct a profile or metric file");
    make->require_subcommand(1);

    auto* zoll = make->add_subcommand("zoll", "Zoll profile (e = 1 or 2), ratio exactly 1/e");
    zoll->add_option("--e", a.e, "Euler number (1 or 2)")->capture_default_str();
    zoll->add_option("--T", a.T, "endpoint fiber period")->capture_default_str();
    zoll->add_option("--out", a.out, "output file (stdout when omitted)");
    zoll->callback([&a] { emit(profile_to_json(zoll_profile(a.e, a.T)), a.out); });

    auto* besse = make->add_subcommand("besse", "Besse quotient profile, all orbits closed");
    besse->add_option("--e", a.e, "Euler number >= 1")->capture_default_str();
    besse->add_option("--scale", a.scale, "regular orbit scale")->capture_default_str();
    besse->add_option("--out", a.out, "output file (stdout when omitted)");
    besse->callback(
        [&a] { emit(profile_to_json(besse_quotient_profile(a.e, a.scale)), a.out); });

    auto* eta = make->add_subcommand(
        "eta", "Near-maximizer family for e > 2 (ratio -> 1/2 as eta -> 0)");
    eta->add_option("--e", a.e, "Euler number > 2")->capture_default_str();
    eta->add_option("--eta", a.eta, "parameter in (0, 1/(2+e))")->capture_default_str();
    eta->add_option("--out", a.out, "output file (stdout when omitted)");
    eta->callback([&a] { emit(profile_to_json(eta_family_profile(a.e, a.eta)), a.out); });

    auto* ell = make->add_subcommand("ellipsoid", "Toric ellipsoid boundary as an e = 1 profile");
    ell->add_option("--a1", a.a1, "first axis")->capture_default_str();
    ell->add_option("--a2", a.a2, "second axis")->capture_default_str();
    ell->add_option("--out", a.out, "output file (stdout when omitted)");
    ell->callback([&a] { emit(profile_to_json(ellipsoid_profile(a.a1, a.a2)), a.out); });

    auto* rnd = make->add_subcommand("random", "Seeded random admissible profile");
    rnd->add_option("--e", a.random.e, "Euler number (nonzero)")->capture_default_str();
    rnd->add_option("--seed", a.random.seed, "generator seed")->capture_default_str();
    rnd->add_option("--k-minus", a.random.k_minus, "left moment endpoint (< 0)")
        ->capture_default_str();
    rnd->add_option("--k-plus", a.random.k_plus, "right moment endpoint (> 0)")
        ->capture_default_str();
    rnd->add_option("--roughness", a.random.roughness, "relative rotation variation")
        ->capture_default_str();
    rnd->add_option("--nodes", a.random.nodes_per_branch, "spline nodes per branch")
        ->capture_default_str();
    rnd->add_option("--attempts", a.random.max_attempts, "rejection budget")
        ->capture_default_str();
    rnd->add_option("--out", a.out, "output file (stdout when omitted)");
    rnd->callback([&a] { emit(profile_to_json(random_admissible_profile(a.random)), a.out); });

    auto* sph = make->add_subcommand("sphere", "Round sphere metric of revolution");
    sph->add_option("--nodes", a.nodes, "spline nodes")->capture_default_str();
    sph->add_option("--out", a.out, "output file (stdout when omitted)");
    sph->callback([&a] { emit(metric_to_json(round_sphere_metric(a.nodes)), a.out); });

    auto* pert = make->add_subcommand("perturbed-sphere",
                                      "Sphere with rho = sin(x) (1 + A sin^2 x)");
    pert->add_option("--A", a.A, "perturbation amplitude")->capture_default_str();
    pert->add_option("--nodes", a.nodes, "spline nodes")->capture_default_str();
    pert->add_option("--out", a.out, "output file (stdout when omitted)");
    pert->callback([&a] { emit(metric_to_json(perturbed_sphere_metric(a.A, a.nodes)), a.out); });
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
    std::string path;
    std::string format = "text";
    std::string out;
    int grid = 512;
};

void setup_validate(CLI::App& app, ValidateArgs& a, int& exit_code) {
    auto* cmd = app.add_subcommand("validate",
                                   "Check every admissibility invariant of a profile or "
                                   "metric file; exit 1 when any fails");
    cmd->add_option("path", a.path, "input file")->required();
    cmd->add_option("--grid", a.grid, "validation grid density")->capture_default_str();
    cmd->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", a.out, "output file (stdout when omitted)");
    cmd->callback([&a, &exit_code] {
        const std::string text = read_text_file(a.path);
        const std::string tag = format_tag(text);
        ValidationReport rep;
        if (tag == kProfileTag)
            rep = profile_from_json(text).validate(a.grid);
        else if (tag == kMetricTag)
            rep = metric_from_json(text).validate(a.grid);
        else
            throw ParseError("unknown format tag '" + tag + "'");
        emit(a.format == "json" ? validation_to_json(rep) : validation_to_text(rep), a.out);
        exit_code = rep.all_passed() ? 0 : 1;
    });
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
    std::string path;
    std::string format = "text";
    std::string out;
    int q_max = 8;
    int grid = 4096;
};

void setup_analyze(CLI::App& app, AnalyzeArgs& a) {
    auto* cmd = app.add_subcommand("analyze",
                                   "Certified systoles, volume, systolic inequality, "
                                   "classification and the closed-orbit table of a profile");
    cmd->add_option("path", a.path, "profile file")->required();
    cmd->add_option("--q-max", a.q_max, "orbit table denominator cap")->capture_default_str();
    cmd->add_option("--grid", a.grid, "scan grid density")->capture_default_str();
    cmd->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", a.out, "output file (stdout when omitted)");
    cmd->callback([&a] {
        const Profile prof = profile_from_json(read_text_file(a.path));
        const auto orbits = enumerate_closed_orbits(prof, a.q_max, a.grid);
        if (a.format == "csv") {
            emit(orbits_to_csv(orbits), a.out);
            return;
        }
        const SystoleResult sys = systole(prof, a.grid);
        const SystoleResult csys = contractible_systole(prof, a.grid);
        const double vol = contact_volume(prof);
        const InequalityReport ineq = theorem_check(prof, a.grid);
        const ProfileClass cls = classify(prof);
        if (a.format == "json") {
            nlohmann::json j;
            j["euler"] = prof.euler().value();
            j["k_minus"] = prof.k_minus();
            j["k_plus"] = prof.k_plus();
            j["class"] = to_string(cls);
            j["systole"] = nlohmann::json::parse(systole_to_json(sys));
            j["contractible_systole"] = nlohmann::json::parse(systole_to_json(csys));
            j["volume"] = vol;
            j["inequality"] = nlohmann::json::parse(inequality_to_json(ineq));
            j["orbits"] = nlohmann::json::parse(orbits_to_json(orbits));
            emit(j.dump(2) + "\n", a.out);
            return;
        }
        std::ostringstream os;
        os << "profile: e=" << prof.euler().value() << "  k in [" << g(prof.k_minus()) << ", "
           << g(prof.k_plus()) << "]\n";
        os << "class: " << to_string(cls) << "\n";
        os << "systole: " << g(sys.value) << "  (" << orbit_label(sys.witness)
           << ", q_max_used=" << sys.q_max_used
           << ", certification_bound=" << g(sys.certification_bound) << ")\n";
        os << "contractible systole: " << g(csys.value) << "  (" << orbit_label(csys.witness)
           << ", q_max_used=" << csys.q_max_used << ")\n";
        os << "volume: " << g(vol) << "\n";
        os << inequality_to_text(ineq) << "\n";
        os << "orbits (q <= " << a.q_max << "):\n" << orbits_to_csv(orbits);
        emit(os.str(), a.out);
    });
}

// ---------------------------------------------------------------------------
// sweep-eta

struct SweepArgs {
    int e = 3;
    std::vector<double> etas;
    std::string out;
    int grid = 4096;
};

void setup_sweep(CLI::App& app, SweepArgs& a) {
    auto* cmd = app.add_subcommand("sweep-eta",
                                   "Near-maximizer sweep for e > 2: one CSV row per eta with "
                                   "the certified systole and the ratio climbing toward 1/2");
    cmd->add_option("--e", a.e, "Euler number > 2")->capture_default_str();
    cmd->add_option("--etas", a.etas, "eta values (default 0.1/e, 0.05/e, 0.01/e)")
        ->delimiter(',');
    cmd->add_option("--grid", a.grid, "scan grid density")->capture_default_str();
    cmd->add_option("--out", a.out, "output file (stdout when omitted)");
    cmd->callback([&a] {
        std::vector<double> etas = a.etas;
        if (etas.empty()) etas = {0.1 / a.e, 0.05 / a.e, 0.01 / a.e};
        std::ostringstream os;
        os << "eta,a,systole,volume,ratio\n";
        for (double eta : etas) {
            const Profile prof = eta_family_profile(a.e, eta);
            const SystoleResult sys = systole(prof, a.grid);
            const double vol = contact_volume(prof);
            char buf[160];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", eta,
                          0.5 - 0.5 * a.e * eta, sys.value, vol, sys.value * sys.value / vol);
            os << buf;
        }
        emit(os.str(), a.out);
    });
}

// ---------------------------------------------------------------------------
// audit

struct AuditArgs {
    std::vector<int> e_list = {1, 2, 3, 5};
    int count = 50;
    std::uint64_t seed0 = 1;
    int grid = 2048;
    int roundtrip_stride = 25;
    std::string format = "text";
    std::string out;
    std::string rows_out;
};

struct AuditItem {
    int e = 0;
    std::uint64_t seed = 0;
    bool generated = false;
    std::string generation_error;
    bool has_theorem = false;
    InequalityReport theorem;
    bool has_certificate = false;
    double certificate_margin = 0.0;
    bool roundtrip_ran = false;
    double roundtrip_err = 0.0;
    double jump_err = 0.0;
    std::vector<std::string> violations;
};

void run_audit_item(AuditItem& it, int grid, bool with_roundtrip) {
    RandomProfileParams params;
    params.e = it.e;
    params.seed = it.seed;
    Profile prof = [&] {
        try {
            Profile p = random_admissible_profile(params);
            it.generated = true;
            return p;
        } catch (const GenerationError& e) {
            it.generation_error = e.what();
            throw;
        }
    }();
    try {
        it.theorem = theorem_check(prof, grid);
        it.has_theorem = true;
    } catch (const TheoremError& e) {
        it.violations.push_back(std::string("theorem: ") + e.what());
    }
    try {
        const CertificateReport rep = certificate_check(prof, grid);
        it.certificate_margin = rep.worst_pointwise_margin;
        it.has_certificate = true;
    } catch (const CertificateError& e) {
        it.violations.push_back(std::string("certificate: ") + e.what());
    }
    if (with_roundtrip) {
        const RoundtripReport rt = roundtrip_audit(prof, 12);
        it.roundtrip_ran = true;
        it.roundtrip_err = std::max({rt.max_return_time_rel_err, rt.max_rotation_rel_err,
                                     rt.reconstruction_sup_error});
        it.jump_err = rt.jump_error;
        if (!rt.passed) {
            std::ostringstream os;
            os << "roundtrip: rel err " << g(it.roundtrip_err) << ", jump err "
               << g(rt.jump_error);
            it.violations.push_back(os.str());
        }
    }
}

void setup_audit(CLI::App& app, AuditArgs& a, int& exit_code) {
    auto* cmd = app.add_subcommand(
        "audit",
        "Generate seeded random admissible profiles per Euler number and check the "
        "systolic inequality, its certificate, and (subsampled) the chart oracle; "
        "exit 1 on any violation");
    cmd->add_option("--e-list", a.e_list, "Euler numbers to audit")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--count", a.count, "profiles per Euler number")->capture_default_str();
    cmd->add_option("--seed0", a.seed0, "base seed (item i uses seed0 + i)")
        ->capture_default_str();
    cmd->add_option("--grid", a.grid, "scan grid density")->capture_default_str();
    cmd->add_option("--roundtrip-stride", a.roundtrip_stride,
                    "run the ODE roundtrip audit on every Nth profile")
        ->capture_default_str();
    cmd->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", a.out, "output file (stdout when omitted)");
    cmd->add_option("--rows", a.rows_out, "also write per-profile inequality CSV rows here");
    cmd->callback([&a, &exit_code] {
        if (a.count < 0) throw DomainError("audit: count must be >= 0");
        if (a.roundtrip_stride < 1) throw DomainError("audit: roundtrip stride must be >= 1");
        std::vector<AuditItem> items;
        for (int e : a.e_list)
            for (int i = 0; i < a.count; ++i) {
                AuditItem it;
                it.e = e;
                it.seed = a.seed0 + static_cast<std::uint64_t>(i);
                items.push_back(it);
            }

        const int workers =
            std::max(1, std::min<int>(thread_budget(), static_cast<int>(items.size())));
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
                try {
                    run_audit_item(items[i], a.grid,
                                   i % static_cast<std::size_t>(a.roundtrip_stride) == 0);
                } catch (const GenerationError&) {
                    // recorded on the item; the seed is reported in the summary
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
        for (auto& t : pool) t.join();

        // Deterministic aggregation in item order, then by Euler number.
        std::ostringstream text;
        nlohmann::json jbranches = nlohmann::json::array();
        int violations = 0, generation_failures = 0;
        std::ostringstream detail;
        for (int e : a.e_list) {
            double th_min = 0.0, cert_min = 0.0, rt_max = 0.0, jump_max = 0.0;
            bool th_any = false, cert_any = false, rt_any = false;
            int generated = 0, viol = 0, genfail = 0;
            for (const auto& it : items) {
                if (it.e != e) continue;
                if (!it.generated) {
                    ++genfail;
                    detail << "generation failure e=" << e << " seed=" << it.seed << ": "
                           << it.generation_error << "\n";
                    continue;
                }
                ++generated;
                if (it.has_theorem) {
                    th_min = th_any ? std::min(th_min, it.theorem.margin) : it.theorem.margin;
                    th_any = true;
                }
                if (it.has_certificate) {
                    cert_min = cert_any ? std::min(cert_min, it.certificate_margin)
                                        : it.certificate_margin;
                    cert_any = true;
                }
                if (it.roundtrip_ran) {
                    rt_max = rt_any ? std::max(rt_max, it.roundtrip_err) : it.roundtrip_err;
                    jump_max = rt_any ? std::max(jump_max, it.jump_err) : it.jump_err;
                    rt_any = true;
                }
                for (const auto& v : it.violations) {
                    ++viol;
                    detail << "violation e=" << e << " seed=" << it.seed << ": " << v << "\n";
                }
            }
            violations += viol;
            generation_failures += genfail;
            text << "e=" << e << ": generated=" << generated
                 << " theorem_min_margin=" << (th_any ? g(th_min) : "n/a")
                 << " certificate_min_margin=" << (cert_any ? g(cert_min) : "n/a")
                 << " roundtrip_max_err=" << (rt_any ? g(rt_max) : "n/a")
                 << " jump_max_err=" << (rt_any ? g(jump_max) : "n/a")
                 << " violations=" << viol << " generation_failures=" << genfail << "\n";
            nlohmann::json jb;
            jb["e"] = e;
            jb["generated"] = generated;
            if (th_any) jb["theorem_min_margin"] = th_min;
            if (cert_any) jb["certificate_min_margin"] = cert_min;
            if (rt_any) {
                jb["roundtrip_max_err"] = rt_max;
                jb["jump_max_err"] = jump_max;
            }
            jb["violations"] = viol;
            jb["generation_failures"] = genfail;
            jbranches.push_back(jb);
        }
        text << detail.str();
        text << "audit: items=" << items.size() << " violations=" << violations
             << " generation_failures=" << generation_failures << "\n";

        if (!a.rows_out.empty()) {
            std::ostringstream rows;
            rows << "seed," << inequality_csv_header() << "\n";
            for (const auto& it : items)
                if (it.has_theorem)
                    rows << it.seed << ',' << inequality_to_csv_row(it.theorem) << "\n";
            write_text_file(a.rows_out, rows.str());
        }

        if (a.format == "json") {
            nlohmann::json j;
            j["e_list"] = a.e_list;
            j["count"] = a.count;
            j["seed0"] = a.seed0;
            j["branches"] = jbranches;
            j["violations"] = violations;
            j["generation_failures"] = generation_failures;
            emit(j.dump(2) + "\n", a.out);
        } else {
            emit(text.str(), a.out);
        }
        exit_code = violations > 0 ? 1 : 0;
    });
}

// ---------------------------------------------------------------------------
// revolution

struct RevolutionArgs {
    std::string path;
    int q_max = 8;
    int grid = 512;
    int crosscheck_levels = 12;
    std::string format = "text";
    std::string out;
};

void setup_revolution(CLI::App& app, RevolutionArgs& a, int& exit_code) {
    auto* cmd = app.add_subcommand("revolution",
                                   "Geodesic analysis of a metric of revolution: certified "
                                   "systole, area, the systolic bound, the closed-geodesic "
                                   "table and the quadrature/ODE cross-check");
    cmd->add_option("path", a.path, "metric file")->required();
    cmd->add_option("--q-max", a.q_max, "geodesic table oscillation cap")->capture_default_str();
    cmd->add_option("--grid", a.grid, "band table density")->capture_default_str();
    cmd->add_option("--crosscheck-levels", a.crosscheck_levels, "ODE cross-check sample count")
        ->capture_default_str();
    cmd->add_option("--format", a.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", a.out, "output file (stdout when omitted)");
    cmd->callback([&a, &exit_code] {
        const RevolutionMetric metric = metric_from_json(read_text_file(a.path));
        const ValidationReport val = metric.validate();
        if (!val.all_passed()) {
            emit(a.format == "json" ? validation_to_json(val) : validation_to_text(val), a.out);
            exit_code = 1;
            return;
        }
        const auto geos = closed_geodesics(metric, a.q_max, a.grid);
        if (a.format == "csv") {
            emit(geodesics_to_csv(geos), a.out);
            return;
        }
        const GeodesicSystoleResult sys = geodesic_systole(metric, a.grid);
        const double area = surface_area(metric);
        const InequalityReport ineq = finsler_corollary_check(metric, a.grid);
        const GeodesicCrosscheckReport xc =
            quadrature_ode_crosscheck(metric, a.crosscheck_levels);
        if (a.format == "json") {
            nlohmann::json j;
            j["length"] = metric.length();
            j["area"] = area;
            j["systole"] = nlohmann::json::parse(geodesic_systole_to_json(sys));
            j["inequality"] = nlohmann::json::parse(inequality_to_json(ineq));
            j["geodesics"] = nlohmann::json::parse(geodesics_to_json(geos));
            j["crosscheck"] = nlohmann::json::parse(crosscheck_to_json(xc));
            emit(j.dump(2) + "\n", a.out);
            return;
        }
        std::ostringstream os;
        os << "metric: L=" << g(metric.length()) << "  rho_max=" << g(metric.rho_max())
           << "\n";
        os << "geodesic systole: " << g(sys.value) << "  (" << to_string(sys.witness.kind)
           << " c=" << g(sys.witness.c) << ", q_max_used=" << sys.q_max_used
           << ", certification_bound=" << g(sys.certification_bound) << ")\n";
        os << "area: " << g(area) << "\n";
        os << inequality_to_text(ineq) << "\n";
        os << "crosscheck: max_delta_theta_err=" << g(xc.max_delta_theta_err)
           << " max_arc_err=" << g(xc.max_arc_err) << " passed=" << (xc.passed ? "yes" : "no")
           << "\n";
        os << "geodesics (q <= " << a.q_max << "):\n" << geodesics_to_csv(geos);
        emit(os.str(), a.out);
        if (!xc.passed) exit_code = 1;
    });
}

// ---------------------------------------------------------------------------
// trace

struct TraceArgs {
    std::string path;
    double k = 0.0;
    double duration = 0.0;
    double x0 = 0.0;
    double phi0 = 0.0;
    double length = 0.0;
    int samples = 256;
    std::string out;
};

void setup_trace(CLI::App& app, TraceArgs& a) {
    auto* cmd = app.add_subcommand("trace",
                                   "Numerically integrated trajectory as CSV: a Reeb orbit "
                                   "in chart coordinates (profiles) or a geodesic (metrics)");
    cmd->add_option("path", a.path, "profile or metric file")->required();
    cmd->add_option("--k", a.k, "moment level of the Reeb orbit (profiles; nonzero)");
    cmd->add_option("--duration", a.duration,
                    "flow time (profiles; default three section returns)");
    cmd->add_option("--x0", a.x0, "meridian coordinate of the start point (metrics)");
    cmd->add_option("--phi0", a.phi0, "initial angle against the meridian (metrics)");
    cmd->add_option("--length", a.length, "arclength to integrate (metrics; default 4 L)");
    cmd->add_option("--samples", a.samples, "rows in the table")->capture_default_str();
    cmd->add_option("--out", a.out, "output file (stdout when omitted)");
    cmd->callback([&a] {
        const std::string text = read_text_file(a.path);
        const std::string tag = format_tag(text);
        if (tag == kProfileTag) {
            const Profile prof = profile_from_json(text);
            double duration = a.duration;
            if (duration <= 0.0) duration = 3.0 * prof.return_time(a.k);
            emit(trajectory_to_csv(trace_orbit(prof, a.k, duration, a.samples)), a.out);
        } else if (tag == kMetricTag) {
            const RevolutionMetric metric = metric_from_json(text);
            double length = a.length;
            if (length <= 0.0) length = 4.0 * metric.length();
            emit(geodesic_trace_to_csv(
                     integrate_geodesic(metric, a.x0, a.phi0, length, a.samples)),
                 a.out);
        } else {
            throw ParseError("unknown format tag '" + tag + "'");
        }
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "systolica: sharp systolic inequalities for invariant contact forms on circle "
        "bundles over the two-sphere.\n"
        "Profiles (moment-map potentials) and metrics of revolution are JSON files made "
        "by 'make'; exit codes: 0 ok, 1 invariant or inequality violation, 2 input error."};
    app.require_subcommand(1);

    int exit_code = 0;
    MakeArgs make_args;
    ValidateArgs validate_args;
    AnalyzeArgs analyze_args;
    SweepArgs sweep_args;
    AuditArgs audit_args;
    RevolutionArgs revolution_args;
    TraceArgs trace_args;

    setup_make(app, make_args);
    setup_validate(app, validate_args, exit_code);
    setup_analyze(app, analyze_args);
    setup_sweep(app, sweep_args);
    setup_audit(app, audit_args, exit_code);
    setup_revolution(app, revolution_args, exit_code);
    setup_trace(app, trace_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const TheoremError& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    } catch (const CertificateError& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    } catch (const AdmissibilityError& e) {
        std::cerr << "inadmissible input: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
