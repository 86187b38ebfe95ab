#include "systolica/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "systolica/errors.hpp"

namespace systolica {

namespace {

using nlohmann::json;

constexpr const char* kProfileTag = "systolica-profile/1";
constexpr const char* kMetricTag = "systolica-revmetric/1";

/// Full-precision decimal for CSV cells (JSON output round-trips on its own).
std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
    return *it;
}

void expect_tag(const json& j, const char* want) {
    const std::string got = field(j, "format").get<std::string>();
    if (got != want)
        throw ParseError("format tag is '" + got + "', expected '" + want + "'");
}

json branch_to_json(const BranchFunction& b) {
    json j;
    j["breakpoints"] = b.breakpoints();
    if (b.kind() == BranchKind::cubic_hermite_spline) {
        j["kind"] = "cubic-hermite";
        j["values"] = b.node_values();
        j["derivatives"] = b.node_derivatives();
    } else {
        j["kind"] = "piecewise-polynomial";
        j["coefficients"] = b.coefficients();
    }
    return j;
}

BranchFunction branch_from_json(const json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    auto bps = field(j, "breakpoints").get<std::vector<double>>();
    if (kind == "cubic-hermite")
        return BranchFunction::cubic_hermite(std::move(bps),
                                             field(j, "values").get<std::vector<double>>(),
                                             field(j, "derivatives").get<std::vector<double>>());
    if (kind == "piecewise-polynomial")
        return BranchFunction::piecewise_polynomial(
            std::move(bps), field(j, "coefficients").get<std::vector<std::vector<double>>>());
    throw ParseError("unknown branch kind '" + kind + "'");
}

const char* to_string(OrbitKind k) {
    return k == OrbitKind::endpoint_fiber ? "endpoint-fiber" : "section";
}

const char* to_string(ChartId c) { return c == ChartId::plus ? "plus" : "minus"; }

json orbit_to_json_obj(const ClosedOrbit& o) {
    json j;
    j["k"] = o.k;
    j["p"] = o.p;
    j["q"] = o.q;
    j["period"] = o.period;
    j["contractible_period"] = o.contractible_period;
    j["kind"] = to_string(o.kind);
    if (o.is_plateau()) j["plateau"] = {{"lo", o.plateau_lo}, {"hi", o.plateau_hi}};
    return j;
}

json geodesic_to_json_obj(const ClosedGeodesic& g) {
    json j;
    j["kind"] = to_string(g.kind);
    j["c"] = g.c;
    j["p"] = g.p;
    j["q"] = g.q;
    j["length"] = g.length;
    j["delta_theta"] = g.delta_theta;
    j["arc"] = g.arc;
    return j;
}

std::string rows4_to_csv(const char* header, const std::vector<std::array<double, 4>>& rows) {
    std::ostringstream os;
    os << header << '\n';
    for (const auto& r : rows)
        os << num(r[0]) << ',' << num(r[1]) << ',' << num(r[2]) << ',' << num(r[3]) << '\n';
    return os.str();
}

} // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw Error("short write to '" + path + "'");
}

std::string profile_to_json(const Profile& profile) {
    json j;
    j["format"] = kProfileTag;
    j["euler"] = profile.euler().value();
    j["k_minus"] = profile.k_minus();
    j["k_plus"] = profile.k_plus();
    j["negative_branch"] = branch_to_json(profile.negative_branch());
    j["positive_branch"] = branch_to_json(profile.positive_branch());
    return j.dump(2) + "\n";
}

Profile profile_from_json(const std::string& text) {
    const json j = parse(text);
    expect_tag(j, kProfileTag);
    try {
        EulerNumber e(field(j, "euler").get<int>());
        BranchFunction neg = branch_from_json(field(j, "negative_branch"));
        BranchFunction pos = branch_from_json(field(j, "positive_branch"));
        const double k_minus = field(j, "k_minus").get<double>();
        const double k_plus = field(j, "k_plus").get<double>();
        Profile profile(e, std::move(neg), std::move(pos));
        if (profile.k_minus() != k_minus || profile.k_plus() != k_plus)
            throw ParseError("k_minus/k_plus fields disagree with the branch domains");
        return profile;
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& e) {
        throw ParseError(std::string("profile file: ") + e.what());
    } catch (const Error& e) {
        // Anything rejected at construction never became a valid object, so it
        // is an input error, not an invariant violation of a built profile.
        throw ParseError(std::string("profile file: ") + e.what());
    }
}

std::string metric_to_json(const RevolutionMetric& metric) {
    json j;
    j["format"] = kMetricTag;
    j["length"] = metric.length();
    j["rho"] = branch_to_json(metric.profile_curve());
    return j.dump(2) + "\n";
}

RevolutionMetric metric_from_json(const std::string& text) {
    const json j = parse(text);
    expect_tag(j, kMetricTag);
    try {
        const double length = field(j, "length").get<double>();
        return RevolutionMetric(length, branch_from_json(field(j, "rho")));
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& e) {
        throw ParseError(std::string("metric file: ") + e.what());
    } catch (const Error& e) {
        throw ParseError(std::string("metric file: ") + e.what());
    }
}

std::string format_tag(const std::string& text) {
    return field(parse(text), "format").get<std::string>();
}

std::string validation_to_json(const ValidationReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"margin", c.margin},
                          {"detail", c.detail}});
    return json{{"all_passed", report.all_passed()}, {"checks", checks}}.dump(2) + "\n";
}

std::string inequality_to_json(const InequalityReport& report) {
    json j;
    j["e"] = report.e;
    j["branch"] = report.branch;
    j["systole"] = report.systole;
    j["volume"] = report.volume;
    j["ratio"] = report.ratio;
    j["bound"] = report.bound;
    j["margin"] = report.margin;
    j["equality"] = report.equality_flag;
    return j.dump(2) + "\n";
}

std::string inequality_csv_header() {
    return "e,branch,systole,volume,ratio,bound,margin,equality";
}

std::string inequality_to_csv_row(const InequalityReport& report) {
    std::ostringstream os;
    os << report.e << ',' << report.branch << ',' << num(report.systole) << ','
       << num(report.volume) << ',' << num(report.ratio) << ',' << num(report.bound) << ','
       << num(report.margin) << ',' << (report.equality_flag ? 1 : 0);
    return os.str();
}

std::string certificate_to_json(const CertificateReport& report) {
    json j;
    j["e"] = report.e;
    j["systole"] = report.systole;
    j["worst_pointwise_margin"] = report.worst_pointwise_margin;
    j["argmin_k"] = report.argmin_k;
    j["integral_bound"] = report.integral_bound;
    j["volume"] = report.volume;
    j["passed"] = report.passed;
    return j.dump(2) + "\n";
}

std::string negative_euler_to_json(const NegativeEulerReport& report) {
    json j;
    j["e"] = report.e;
    j["volume"] = report.volume;
    j["systole_bound"] = report.systole_bound;
    j["ratio"] = report.ratio;
    j["bound"] = report.bound;
    j["margin"] = report.margin;
    j["equality"] = report.equality_flag;
    return j.dump(2) + "\n";
}

std::string systole_to_json(const SystoleResult& result) {
    json j;
    j["value"] = result.value;
    j["q_max_used"] = result.q_max_used;
    j["certification_bound"] = result.certification_bound;
    j["witness"] = orbit_to_json_obj(result.witness);
    return j.dump(2) + "\n";
}

std::string spectrum_to_json(const std::vector<SpectrumEntry>& spectrum) {
    json arr = json::array();
    for (const auto& entry : spectrum)
        arr.push_back({{"period", entry.period}, {"members", entry.members}});
    return arr.dump(2) + "\n";
}

std::string roundtrip_to_json(const RoundtripReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"chart", to_string(r.chart)},
                        {"k", r.k},
                        {"r", r.r},
                        {"return_time", r.return_time},
                        {"rotation", r.rotation}});
    json j;
    j["max_return_time_rel_err"] = report.max_return_time_rel_err;
    j["max_rotation_rel_err"] = report.max_rotation_rel_err;
    j["jump_estimate"] = report.jump_estimate;
    j["jump_error"] = report.jump_error;
    j["reconstruction_sup_error"] = report.reconstruction_sup_error;
    j["passed"] = report.passed;
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string crosscheck_to_json(const GeodesicCrosscheckReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"c", r.c},
                        {"delta_theta_quad", r.delta_theta_quad},
                        {"delta_theta_ode", r.delta_theta_ode},
                        {"arc_quad", r.arc_quad},
                        {"arc_ode", r.arc_ode}});
    json j;
    j["max_delta_theta_err"] = report.max_delta_theta_err;
    j["max_arc_err"] = report.max_arc_err;
    j["passed"] = report.passed;
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string geodesic_systole_to_json(const GeodesicSystoleResult& result) {
    json j;
    j["value"] = result.value;
    j["q_max_used"] = result.q_max_used;
    j["certification_bound"] = result.certification_bound;
    j["witness"] = geodesic_to_json_obj(result.witness);
    return j.dump(2) + "\n";
}

std::string orbits_to_csv(const std::vector<ClosedOrbit>& orbits) {
    std::ostringstream os;
    os << "k,p,q,period,contractible_period,kind\n";
    for (const auto& o : orbits)
        os << num(o.k) << ',' << o.p << ',' << o.q << ',' << num(o.period) << ','
           << num(o.contractible_period) << ',' << to_string(o.kind) << '\n';
    return os.str();
}

std::string orbits_to_json(const std::vector<ClosedOrbit>& orbits) {
    json arr = json::array();
    for (const auto& o : orbits) arr.push_back(orbit_to_json_obj(o));
    return arr.dump(2) + "\n";
}

std::string geodesics_to_csv(const std::vector<ClosedGeodesic>& geodesics) {
    std::ostringstream os;
    os << "kind,c,p,q,length,delta_theta,arc\n";
    for (const auto& g : geodesics)
        os << to_string(g.kind) << ',' << num(g.c) << ',' << g.p << ',' << g.q << ','
           << num(g.length) << ',' << num(g.delta_theta) << ',' << num(g.arc) << '\n';
    return os.str();
}

std::string geodesics_to_json(const std::vector<ClosedGeodesic>& geodesics) {
    json arr = json::array();
    for (const auto& g : geodesics) arr.push_back(geodesic_to_json_obj(g));
    return arr.dump(2) + "\n";
}

std::string trajectory_to_csv(const std::vector<std::array<double, 4>>& rows) {
    return rows4_to_csv("lambda,r,s,t", rows);
}

std::string geodesic_trace_to_csv(const std::vector<std::array<double, 4>>& rows) {
    return rows4_to_csv("lambda,x,theta,phi", rows);
}

} // namespace systolica
