#pragma once

#include <string>
#include <vector>

#include "systolica/profile.hpp"

namespace systolica {

enum class OrbitKind { section, endpoint_fiber };

/// One closed Reeb orbit (or one plateau family represented by its midpoint).
struct ClosedOrbit {
    double k = 0.0;    ///< moment level
    long long p = 0;   ///< reduced rotation numerator (section orbits only)
    long long q = 1;   ///< reduced rotation denominator, >= 1
    double period = 0.0;              ///< minimal period; q*tau(k) for sections
    double contractible_period = 0.0; ///< minimal period among contractible iterates
    OrbitKind kind = OrbitKind::section;
    /// For a plateau of levels all carrying the same rotation the orbit is one
    /// representative at the interval midpoint; otherwise lo == hi == k.
    double plateau_lo = 0.0;
    double plateau_hi = 0.0;

    bool is_plateau() const { return plateau_hi > plateau_lo; }
};

struct SystoleResult {
    double value = 0.0;
    ClosedOrbit witness;
    int q_max_used = 0;
    /// q_max_used * (0.99 * grid-minimum of tau): any orbit the search did not
    /// visit has period above this, so value <= certification_bound certifies
    /// global minimality.
    double certification_bound = 0.0;
};

struct SpectrumEntry {
    double period = 0.0;
    std::vector<std::string> members;  ///< orbit descriptors merged into this period
};

enum class ProfileClass { Zoll, BesseTwoSingularEqual, BesseOther, NonBesse };
const char* to_string(ProfileClass c);

/// Both endpoint fibers plus every section orbit with reduced rotation p/q,
/// q <= q_max: grid-bracketed roots of w(k) = p/q per branch refined by
/// bisection to 1e-12 in k, with rational plateaus reported once.
std::vector<ClosedOrbit> enumerate_closed_orbits(const Profile& profile, int q_max,
                                                 int grid_density = 4096);

/// Certified shortest closed orbit: the q-scan stops once the incumbent
/// minimum is below q * tau_min, which bounds every unseen orbit's period.
SystoleResult systole(const Profile& profile, int grid_density = 4096);

/// Certified shortest contractible orbit. A section orbit with rotation p/q
/// lifts to the degree-|e| fiberwise cover with denominator
/// q' = q|e|/gcd(p, e), so its contractible period is (q'/q) * period;
/// endpoint fibers contribute |e| * |K±|.
SystoleResult contractible_systole(const Profile& profile, int grid_density = 4096);

/// Sorted prime periods with 1e-9 relative merging; each entry lists the
/// orbits realizing it.
std::vector<SpectrumEntry> action_spectrum(const Profile& profile, int q_max,
                                           int grid_density = 4096);

/// Zoll/Besse detection: all orbits are closed iff the rotation is constant
/// rational on each branch; the variants are separated by the period pattern.
/// Rationality is decided by continued fractions at representation accuracy
/// (denominators up to 1e4), so a constant irrational rotation reports
/// NonBesse.
ProfileClass classify(const Profile& profile, int grid_density = 2048);

} // namespace systolica
