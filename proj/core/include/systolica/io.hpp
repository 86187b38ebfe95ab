#pragma once

#include <array>
#include <string>
#include <vector>

#include "systolica/chart.hpp"
#include "systolica/errors.hpp"
#include "systolica/measures.hpp"
#include "systolica/orbits.hpp"
#include "systolica/profile.hpp"
#include "systolica/revolution.hpp"

namespace systolica {

/// Reads a whole file into a string; throws ParseError when it cannot be opened.
std::string read_text_file(const std::string& path);

/// Writes (replaces) a whole file; throws Error when it cannot be written.
void write_text_file(const std::string& path, const std::string& body);

// --- profile and metric containers ------------------------------------------
//
// One JSON document per object.  Profiles carry the format tag
// "systolica-profile/1" and the fields euler, k_minus, k_plus plus one object
// per branch (breakpoints and coefficient arrays); revolution metrics use the
// same container shape under the tag "systolica-revmetric/1" with fields
// length and rho.  Doubles are emitted with enough digits to reparse to the
// identical value, so write/read round-trips are exact.  All loaders throw
// ParseError on malformed input, unknown tags, or structurally invalid data.

std::string profile_to_json(const Profile& profile);
Profile profile_from_json(const std::string& text);

std::string metric_to_json(const RevolutionMetric& metric);
RevolutionMetric metric_from_json(const std::string& text);

/// The "format" tag of a serialized container, used to dispatch loaders.
std::string format_tag(const std::string& text);

// --- report serialization -----------------------------------------------------

std::string validation_to_json(const ValidationReport& report);
std::string inequality_to_json(const InequalityReport& report);
/// Frozen CSV columns: e,branch,systole,volume,ratio,bound,margin,equality.
std::string inequality_csv_header();
std::string inequality_to_csv_row(const InequalityReport& report);
std::string certificate_to_json(const CertificateReport& report);
std::string negative_euler_to_json(const NegativeEulerReport& report);
std::string systole_to_json(const SystoleResult& result);
std::string spectrum_to_json(const std::vector<SpectrumEntry>& spectrum);
std::string roundtrip_to_json(const RoundtripReport& report);
std::string crosscheck_to_json(const GeodesicCrosscheckReport& report);
std::string geodesic_systole_to_json(const GeodesicSystoleResult& result);

// --- tables --------------------------------------------------------------------

/// Frozen CSV columns: k,p,q,period,contractible_period,kind.
std::string orbits_to_csv(const std::vector<ClosedOrbit>& orbits);
/// The same table as JSON, with plateau interval annotations.
std::string orbits_to_json(const std::vector<ClosedOrbit>& orbits);
/// Frozen CSV columns: kind,c,p,q,length,delta_theta,arc.
std::string geodesics_to_csv(const std::vector<ClosedGeodesic>& geodesics);
std::string geodesics_to_json(const std::vector<ClosedGeodesic>& geodesics);
/// Chart trajectory rows as CSV with columns lambda,r,s,t.
std::string trajectory_to_csv(const std::vector<std::array<double, 4>>& rows);
/// Geodesic trajectory rows as CSV with columns lambda,x,theta,phi.
std::string geodesic_trace_to_csv(const std::vector<std::array<double, 4>>& rows);

} // namespace systolica
