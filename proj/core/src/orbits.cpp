#include "systolica/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "systolica/errors.hpp"
#include "systolica/numerics/rootscan.hpp"

namespace systolica {

const char* to_string(ProfileClass c) {
    switch (c) {
        case ProfileClass::Zoll: return "Zoll";
        case ProfileClass::BesseTwoSingularEqual: return "Besse-two-singular-equal";
        case ProfileClass::BesseOther: return "Besse-other";
        case ProfileClass::NonBesse: return "non-Besse";
    }
    return "?";
}

namespace {

constexpr int kQCap = 1000000;

struct BranchScan {
    Side zero_side = Side::right;  ///< side to use when a knot sits at k = 0
    double lo = 0.0, hi = 0.0;
    std::vector<double> knots;
    std::vector<double> w;
    double w_min = 0.0, w_max = 0.0;
};

double rotation_on(const Profile& p, double k, Side zero_side) {
    return p.rotation(k, k == 0.0 ? zero_side : Side::two_sided);
}

double tau_on(const Profile& p, double k, Side zero_side) {
    return p.return_time(k, k == 0.0 ? zero_side : Side::two_sided);
}

BranchScan make_scan(const Profile& p, bool negative, int grid_density) {
    BranchScan b;
    const BranchFunction& br = negative ? p.negative_branch() : p.positive_branch();
    b.zero_side = negative ? Side::left : Side::right;
    b.lo = br.domain_lo();
    b.hi = br.domain_hi();
    const int g = std::max(grid_density, 16);
    b.knots.reserve(static_cast<std::size_t>(g) + br.breakpoints().size());
    for (int i = 0; i <= g; ++i)
        b.knots.push_back(b.lo + (b.hi - b.lo) * i / g);
    for (double bp : br.breakpoints())
        if (bp > b.lo && bp < b.hi) b.knots.push_back(bp);
    std::sort(b.knots.begin(), b.knots.end());
    b.knots.erase(std::unique(b.knots.begin(), b.knots.end()), b.knots.end());
    b.w.reserve(b.knots.size());
    b.w_min = std::numeric_limits<double>::infinity();
    b.w_max = -b.w_min;
    for (double k : b.knots) {
        const double w = rotation_on(p, k, b.zero_side);
        b.w.push_back(w);
        b.w_min = std::min(b.w_min, w);
        b.w_max = std::max(b.w_max, w);
    }
    return b;
}

/// One-sided tau limits at the closed ends of the moment interval.
double tau_at_endpoint(const Profile& p, double k) {
    return p.evaluate(k) - k * p.derivative(k);
}

double profile_scale(const Profile& p) {
    return std::max({1.0, p.evaluate(0.0), -p.k_minus(), p.k_plus()});
}

long long contractible_factor(long long p_num, int e) {
    const long long ae = std::abs(static_cast<long long>(e));
    return ae / std::gcd(std::llabs(p_num), ae);
}

ClosedOrbit make_fiber(const Profile& p, double k) {
    ClosedOrbit o;
    o.k = k;
    o.p = 0;
    o.q = 1;
    o.period = std::abs(k);
    o.contractible_period = std::abs(static_cast<double>(p.euler().value())) * o.period;
    o.kind = OrbitKind::endpoint_fiber;
    o.plateau_lo = o.plateau_hi = k;
    return o;
}

/// All section orbits with reduced rotation m/q on one branch.
void scan_branch_for_q(const Profile& p, const BranchScan& b, long long q,
                       std::vector<ClosedOrbit>& out) {
    const double scale = profile_scale(p);
    const double x_tol = 1e-12 * scale;
    const double w_scale = std::max({1.0, std::abs(b.w_min), std::abs(b.w_max)});
    const double zero_tol = 1e-9 * w_scale;
    const auto f = [&](double k) { return rotation_on(p, k, b.zero_side); };

    const long long m_lo = static_cast<long long>(std::ceil(q * b.w_min - 1e-7));
    const long long m_hi = static_cast<long long>(std::floor(q * b.w_max + 1e-7));
    for (long long m = m_lo; m <= m_hi; ++m) {
        if (std::gcd(std::llabs(m), q) != 1) continue;
        const double target = static_cast<double>(m) / static_cast<double>(q);
        const num::LevelSetResult hits =
            num::scan_level_set(f, b.knots, b.w, target, zero_tol, x_tol);
        for (double k : hits.roots) {
            // A root at a closed end is the |m|-fold cover of that endpoint
            // fiber, which is already listed as the fiber itself.
            if (k - p.k_minus() <= 2.0 * x_tol || p.k_plus() - k <= 2.0 * x_tol) continue;
            ClosedOrbit o;
            o.k = k;
            o.p = m;
            o.q = q;
            o.period = q * tau_on(p, k, b.zero_side);
            o.contractible_period = o.period * contractible_factor(m, p.euler().value());
            o.kind = OrbitKind::section;
            o.plateau_lo = o.plateau_hi = k;
            out.push_back(o);
        }
        for (const num::PlateauInterval& pl : hits.plateaus) {
            ClosedOrbit o;
            o.k = 0.5 * (pl.lo + pl.hi);
            o.p = m;
            o.q = q;
            o.period = q * tau_on(p, o.k, b.zero_side);
            o.contractible_period = o.period * contractible_factor(m, p.euler().value());
            o.kind = OrbitKind::section;
            o.plateau_lo = pl.lo;
            o.plateau_hi = pl.hi;
            out.push_back(o);
        }
    }
}

/// A root at k ~ 0 appears on both branches with rotations differing by the
/// framing change e; keep the positive-branch representative.
void dedupe_cross_branch(const Profile& p, std::vector<ClosedOrbit>& orbits) {
    const double tol = 1e-9 * profile_scale(p);
    const long long e = p.euler().value();
    for (auto it = orbits.begin(); it != orbits.end();) {
        bool drop = false;
        if (it->kind == OrbitKind::section && !it->is_plateau() && it->k <= 0.0 &&
            std::abs(it->k) <= tol) {
            for (const ClosedOrbit& other : orbits) {
                if (&other == &*it || other.kind != OrbitKind::section) continue;
                if (other.k < 0.0 || std::abs(other.k) > tol) continue;
                if (other.q == it->q && other.p == it->p + e * it->q) {
                    drop = true;
                    break;
                }
            }
        }
        it = drop ? orbits.erase(it) : ++it;
    }
}

void sort_section_orbits(std::vector<ClosedOrbit>& orbits) {
    std::sort(orbits.begin(), orbits.end(), [](const ClosedOrbit& a, const ClosedOrbit& b) {
        if (a.q != b.q) return a.q < b.q;
        if (a.k != b.k) return a.k < b.k;
        return a.p < b.p;
    });
}

struct CertifiedSearch {
    ClosedOrbit best;
    int q_max_used = 0;
    double certification_bound = 0.0;
};

/// Shared certified minimum search over (fiber + section) periods; `key`
/// selects which period field is being minimized.
template <typename Key>
CertifiedSearch certified_min(const Profile& p, int grid_density, Key key) {
    const BranchScan neg = make_scan(p, true, grid_density);
    const BranchScan pos = make_scan(p, false, grid_density);

    double tau_min = std::min(tau_at_endpoint(p, p.k_minus()), tau_at_endpoint(p, p.k_plus()));
    for (const BranchScan* b : {&neg, &pos})
        for (double k : b->knots) {
            if (k <= p.k_minus() || k >= p.k_plus()) continue;
            tau_min = std::min(tau_min, tau_on(p, k, b->zero_side));
        }
    if (!(tau_min > 0.0))
        throw AdmissibilityError("orbit search: nonpositive return time on the grid");
    const double cert = 0.99 * tau_min;
    const double tie = 1e-12 * profile_scale(p);

    const ClosedOrbit fiber_minus = make_fiber(p, p.k_minus());
    const ClosedOrbit fiber_plus = make_fiber(p, p.k_plus());
    // Endpoint fibers seed the search; ties prefer them as witnesses.
    ClosedOrbit best = key(fiber_minus) < key(fiber_plus) ? fiber_minus : fiber_plus;

    for (int q = 1; q <= kQCap; ++q) {
        std::vector<ClosedOrbit> found;
        scan_branch_for_q(p, neg, q, found);
        scan_branch_for_q(p, pos, q, found);
        dedupe_cross_branch(p, found);
        sort_section_orbits(found);
        for (const ClosedOrbit& o : found)
            if (key(o) < key(best) - tie) best = o;
        if (key(best) <= q * cert) return {best, q, q * cert};
    }
    throw SearchError("orbit search: certification did not terminate before the q cap");
}

} // namespace

std::vector<ClosedOrbit> enumerate_closed_orbits(const Profile& profile, int q_max,
                                                 int grid_density) {
    if (q_max < 1) throw DomainError("enumerate_closed_orbits: q_max must be >= 1");
    {
        const ValidationReport rep = profile.validate(std::min(grid_density, 512));
        if (!rep.all_passed()) {
            for (const CheckResult& c : rep.checks)
                if (!c.passed)
                    throw AdmissibilityError("enumerate_closed_orbits: profile failed '" +
                                             c.name + "' (" + c.detail + ")");
        }
    }
    std::vector<ClosedOrbit> orbits;
    orbits.push_back(make_fiber(profile, profile.k_minus()));
    orbits.push_back(make_fiber(profile, profile.k_plus()));

    const BranchScan neg = make_scan(profile, true, grid_density);
    const BranchScan pos = make_scan(profile, false, grid_density);
    std::vector<ClosedOrbit> sections;
    for (long long q = 1; q <= q_max; ++q) {
        scan_branch_for_q(profile, neg, q, sections);
        scan_branch_for_q(profile, pos, q, sections);
    }
    dedupe_cross_branch(profile, sections);
    sort_section_orbits(sections);
    orbits.insert(orbits.end(), sections.begin(), sections.end());
    return orbits;
}

SystoleResult systole(const Profile& profile, int grid_density) {
    const CertifiedSearch s = certified_min(profile, grid_density,
                                            [](const ClosedOrbit& o) { return o.period; });
    return {s.best.period, s.best, s.q_max_used, s.certification_bound};
}

SystoleResult contractible_systole(const Profile& profile, int grid_density) {
    const CertifiedSearch s = certified_min(
        profile, grid_density, [](const ClosedOrbit& o) { return o.contractible_period; });
    return {s.best.contractible_period, s.best, s.q_max_used, s.certification_bound};
}

std::vector<SpectrumEntry> action_spectrum(const Profile& profile, int q_max,
                                           int grid_density) {
    const std::vector<ClosedOrbit> orbits = enumerate_closed_orbits(profile, q_max, grid_density);
    std::vector<std::pair<double, std::string>> items;
    items.reserve(orbits.size());
    for (const ClosedOrbit& o : orbits) {
        std::ostringstream os;
        os.precision(12);
        if (o.kind == OrbitKind::endpoint_fiber) {
            os << "fiber k=" << o.k;
        } else {
            os << "section " << o.p << "/" << o.q;
            if (o.is_plateau())
                os << " on [" << o.plateau_lo << ", " << o.plateau_hi << "]";
            else
                os << " at k=" << o.k;
        }
        items.emplace_back(o.period, os.str());
    }
    std::sort(items.begin(), items.end());
    std::vector<SpectrumEntry> spectrum;
    for (auto& [period, label] : items) {
        if (!spectrum.empty() &&
            period - spectrum.back().period <= 1e-9 * std::max(1.0, period)) {
            spectrum.back().members.push_back(std::move(label));
        } else {
            spectrum.push_back({period, {std::move(label)}});
        }
    }
    return spectrum;
}

namespace {

/// Best rational approximation by continued-fraction convergents.
bool to_rational(double x, long long q_cap, double tol, long long& p_out, long long& q_out) {
    long long h_prev = 1, k_prev = 0;
    long long h = static_cast<long long>(std::floor(x)), k = 1;
    double xi = x;
    for (int it = 0; it < 64; ++it) {
        if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
            p_out = h;
            q_out = k;
            return true;
        }
        const double frac = xi - std::floor(xi);
        if (frac < 1e-15) break;
        xi = 1.0 / frac;
        const double a_real = std::floor(xi);
        if (a_real > 1e15) break;
        const long long a = static_cast<long long>(a_real);
        const long long h_next = a * h + h_prev;
        const long long k_next = a * k + k_prev;
        if (k_next > q_cap) break;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    return false;
}

} // namespace

ProfileClass classify(const Profile& profile, int grid_density) {
    double w_const[2] = {0.0, 0.0};
    for (bool negative : {true, false}) {
        const BranchScan b = make_scan(profile, negative, grid_density);
        const double w_scale = std::max({1.0, std::abs(b.w_min), std::abs(b.w_max)});
        if (b.w_max - b.w_min > 1e-9 * w_scale) return ProfileClass::NonBesse;
        w_const[negative ? 0 : 1] = b.w[b.w.size() / 2];
    }
    long long p_num[2], q_den[2];
    for (int i = 0; i < 2; ++i) {
        const double tol = 1e-12 * std::max(1.0, std::abs(w_const[i]));
        if (!to_rational(w_const[i], 10000, tol, p_num[i], q_den[i]))
            return ProfileClass::NonBesse;
    }

    const double tau0 = profile.evaluate(0.0);  // w constant => J linear => tau == J(0)
    const double periods[4] = {
        static_cast<double>(q_den[0]) * tau0,
        static_cast<double>(q_den[1]) * tau0,
        -profile.k_minus(),
        profile.k_plus(),
    };
    const double pmax = *std::max_element(periods, periods + 4);
    const double pmin = *std::min_element(periods, periods + 4);
    if (pmax - pmin <= 1e-12 * std::max(1.0, pmax)) return ProfileClass::Zoll;
    if (std::abs(profile.k_plus() + profile.k_minus()) <=
        1e-12 * std::max(1.0, profile.k_plus()))
        return ProfileClass::BesseTwoSingularEqual;
    return ProfileClass::BesseOther;
}

} // namespace systolica
