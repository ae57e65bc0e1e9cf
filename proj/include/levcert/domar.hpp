#pragma once

// Domar's explicit estimate for subharmonic functions dominated on a strip:
// the dyadic distribution sum, the minimal certified constant, the resulting
// sup bound exp(C), and a grid simulator of the escape iteration.
//
// The core inequality: if (8/pi) * sum_{i=-1}^inf F(2^i C) < d, where F is the
// distribution of log+ M over the strip halfwidth, then every subharmonic v
// with v <= log M on the strip satisfies v <= C at distance >= d from the
// strip boundary. Certificates must bound the true infinite sum, so the
// truncated direct sum always carries a closed-form tail envelope on top.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levcert/grid.hpp"
#include "levcert/majorant.hpp"
#include "levcert/numerics.hpp"

namespace levcert {

class no_certificate : public std::runtime_error {
public:
    explicit no_certificate(const std::string& what) : std::runtime_error(what) {}
};

struct TruncationPolicy {
    double term_tolerance = 1e-12;  // stop once the envelope term drops below this
    int max_direct_terms = 200;     // hard cap; the analytic tail covers the rest
};

struct DomarSumResult {
    double value;               // (8/pi) * (direct sum + analytic tail)
    int i_max;                  // last direct index, counted from i = -1
    double tail_bound;          // (8/pi) * analytic tail, included in value
    std::vector<double> terms;  // raw F(2^i C) for i = -1 .. i_max
};

// Direct summation from i = -1 until the tail envelope certifies the rest.
// The stop rule waits for the envelope's validity floor, so the closed-form
// tail is always applied in its proven range.
inline DomarSumResult domar_sum(const Majorant& m, double C, double b,
                                const TruncationPolicy& policy = {}) {
    if (!(C > 0.0)) throw std::domain_error("domar_sum: C must be > 0");
    if (!(b > 0.0) || b > m.height())
        throw std::domain_error("domar_sum: halfwidth must lie in (0, height]");
    const double floor = tail_floor(m);
    DomarSumResult r{};
    double direct = 0.0;
    double t = 0.5 * C;  // threshold at i = -1
    int i = -1;
    // The r.terms cap only engages once t has cleared the envelope's validity
    // floor, so the loop may run past it; t doubles each step, so any finite
    // floor is reached long before the emergency cap.
    const int hard_cap = policy.max_direct_terms + 1200;
    double t_last = t;
    while (true) {
        const double term = distribution_impl(m, t, b);
        r.terms.push_back(term);
        direct += term;
        if (t >= floor && (tail_envelope(m, 2.0 * t, b) < policy.term_tolerance ||
                           static_cast<int>(r.terms.size()) >= policy.max_direct_terms)) {
            r.i_max = i;
            t_last = t;
            break;
        }
        if (static_cast<int>(r.terms.size()) >= hard_cap)
            throw no_certificate("domar_sum: tail validity floor unreachable");
        t *= 2.0;
        ++i;
    }
    const double tail = std::isinf(t_last) ? 0.0 : dyadic_tail_bound(m, t_last, b);
    r.tail_bound = (8.0 / kPi) * tail;
    r.value = (8.0 / kPi) * (direct + tail);
    return r;
}

struct DomarCertificate {
    double C = 0.0;
    double sum_value = 0.0;  // domar_sum at C, strictly below distance
    int i_max = 0;
    double tail_bound = 0.0;
    double distance = 0.0;
    double bound = 0.0;          // exp(C); +inf when C exceeds the exp cap
    bool bound_overflow = false;  // set when exp(C) leaves binary64
};

namespace detail {

inline DomarCertificate certificate_at(const Majorant& m, double C, double d, double b,
                                       const TruncationPolicy& policy) {
    const DomarSumResult s = domar_sum(m, C, b, policy);
    DomarCertificate cert;
    cert.C = C;
    cert.sum_value = s.value;
    cert.i_max = s.i_max;
    cert.tail_bound = s.tail_bound;
    cert.distance = d;
    cert.bound_overflow = C > kExpOverflowCap;
    cert.bound = cert.bound_overflow ? std::numeric_limits<double>::infinity() : std::exp(C);
    return cert;
}

}  // namespace detail

// Smallest C (relative 1e-6) with domar_sum(m, C, b) < d, returned at the
// verified holding end of the final bracket. The sum is non-increasing in C
// because every distribution term is, which is what justifies bisection.
inline DomarCertificate minimal_constant(const Majorant& m, double d, double b,
                                         const TruncationPolicy& policy = {}) {
    if (!(d > 0.0)) throw std::domain_error("minimal_constant: distance must be > 0");
    constexpr double kFloorC = 1e-9;
    constexpr double kCapC = 8.9e307;  // 2^1023 scale; beyond this exp(C) is meaningless even in logs
    auto holds = [&](double C) { return domar_sum(m, C, b, policy).value < d; };
    if (holds(kFloorC)) return detail::certificate_at(m, kFloorC, d, b, policy);
    double lo = kFloorC;
    double hi = std::max(d, 1.0);
    while (!holds(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > kCapC)
            throw no_certificate(
                "no certificate: Domar condition unsatisfiable below the representable cap");
    }
    while (hi - lo > 1e-6 * hi) {
        const double mid = std::sqrt(lo * hi);
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    return detail::certificate_at(m, hi, d, b, policy);
}

// Sup bound exp(C) for holomorphic functions on the strip dominated by M:
// |f(x+iy)| <= M(|y|) on (-a,a) x (-b,b) forces |f| <= exp(C) on any compact
// at distance >= d from the strip boundary.
inline double certify_bound_2d(const Majorant& m, double d, double b,
                               const TruncationPolicy& policy = {}) {
    return minimal_constant(m, d, b, policy).bound;
}

inline std::string certificate_json(const DomarCertificate& c) {
    std::string s = "{";
    s += "\"C\": " + format_sig(c.C, 17);
    s += ", \"bound\": " + (c.bound_overflow ? std::string("null") : format_sig(c.bound, 17));
    s += ", \"sum_value\": " + format_sig(c.sum_value, 17);
    s += ", \"tail_bound\": " + format_sig(c.tail_bound, 17);
    s += ", \"i_max\": " + std::to_string(c.i_max);
    s += ", \"distance\": " + format_sig(c.distance, 17);
    s += "}";
    return s;
}

// ---------------------------------------------------------------------------
// Sub-mean-value check on a sampled field.

struct MeanCheckResult {
    double lhs = 0.0;  // v(center)
    double rhs = 0.0;  // area average over the ball
    bool ok = false;
};

// Quadrature: cell-sum over grid nodes inside the ball. The tolerance covers
// the boundary-cell error (perimeter * spacing / area) scaled by the observed
// oscillation, plus a curvature term.
inline MeanCheckResult subharmonic_mean_check(const Grid2D& v, double cx, double cy,
                                              double radius) {
    if (!(radius > 0.0)) throw std::domain_error("mean check: radius must be > 0");
    if (cx - radius < v.x_lo || cx + radius > v.x_hi || cy - radius < v.y_lo ||
        cy + radius > v.y_hi)
        throw std::domain_error("mean check: ball not contained in the sampled rectangle");
    MeanCheckResult r;
    r.lhs = v.interpolate(cx, cy);
    const double g = std::max(v.dx(), v.dy());
    double sum = 0.0;
    size_t count = 0;
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    const int i_lo = std::max(0, static_cast<int>((cx - radius - v.x_lo) / v.dx()));
    const int i_hi = std::min(v.nx - 1, static_cast<int>((cx + radius - v.x_lo) / v.dx()) + 1);
    const int j_lo = std::max(0, static_cast<int>((cy - radius - v.y_lo) / v.dy()));
    const int j_hi = std::min(v.ny - 1, static_cast<int>((cy + radius - v.y_lo) / v.dy()) + 1);
    for (int j = j_lo; j <= j_hi; ++j) {
        for (int i = i_lo; i <= i_hi; ++i) {
            const double ddx = v.x(i) - cx;
            const double ddy = v.y(j) - cy;
            if (ddx * ddx + ddy * ddy > radius * radius) continue;
            const double val = v.at(i, j);
            sum += val;
            ++count;
            vmin = std::min(vmin, val);
            vmax = std::max(vmax, val);
        }
    }
    if (count == 0) throw std::domain_error("mean check: grid too coarse for the ball");
    r.rhs = sum / static_cast<double>(count);
    const double osc = vmax - vmin;
    const double tol = 2.0 * (g / radius) * osc + 10.0 * g * g + 1e-12;
    r.ok = r.lhs <= r.rhs + tol;
    return r;
}

// ---------------------------------------------------------------------------
// Escape-iteration simulator.

struct EscapeTrace {
    std::vector<std::pair<double, double>> points;
    std::vector<double> levels;  // certified level at each point: C, 2C, 4C, ...
    std::vector<double> radii;   // search radius that produced each point; radii[0] = 0
    bool terminated = false;     // doubling point certifiably absent (ball fully sampled)
    bool escaped_domain = false;  // ball left the sampled rectangle with no point found
};

// From a start with v(z0) >= C, repeatedly search the closed ball of radius
// (8/pi) F(level/2) for a grid point with doubled value. The search is an
// exhaustive row-major scan, so results are deterministic; the first
// qualifying node wins.
inline EscapeTrace domar_escape_trace(const Grid2D& v, double x0, double y0, double C,
                                      const Majorant& m, double halfwidth, int max_steps = 60) {
    if (!(C > 0.0)) throw std::domain_error("escape trace: C must be > 0");
    const auto [i0, j0] = v.nearest(x0, y0);
    double cx = v.x(i0);
    double cy = v.y(j0);
    double level = v.at(i0, j0);
    if (level < C)
        throw std::domain_error("escape trace: start point is below level C");
    EscapeTrace tr;
    tr.points.emplace_back(cx, cy);
    tr.levels.push_back(C);
    tr.radii.push_back(0.0);
    double threshold = C;
    for (int step = 0; step < max_steps; ++step) {
        // Search radius guaranteed by the dyadic estimate at the current level.
        const double radius = (8.0 / kPi) * distribution(m, {0.5 * threshold, halfwidth});
        const double target = 2.0 * threshold;
        bool found = false;
        const int i_lo = std::max(0, static_cast<int>(std::ceil((cx - radius - v.x_lo) / v.dx() - 1e-12)));
        const int i_hi = std::min(v.nx - 1, static_cast<int>(std::floor((cx + radius - v.x_lo) / v.dx() + 1e-12)));
        const int j_lo = std::max(0, static_cast<int>(std::ceil((cy - radius - v.y_lo) / v.dy() - 1e-12)));
        const int j_hi = std::min(v.ny - 1, static_cast<int>(std::floor((cy + radius - v.y_lo) / v.dy() + 1e-12)));
        for (int j = j_lo; j <= j_hi && !found; ++j) {
            for (int i = i_lo; i <= i_hi; ++i) {
                const double ddx = v.x(i) - cx;
                const double ddy = v.y(j) - cy;
                if (ddx * ddx + ddy * ddy > radius * radius) continue;
                if (v.at(i, j) >= target) {
                    cx = v.x(i);
                    cy = v.y(j);
                    tr.points.emplace_back(cx, cy);
                    tr.levels.push_back(target);
                    tr.radii.push_back(radius);
                    threshold = target;
                    found = true;
                    break;
                }
            }
        }
        if (found) continue;
        const bool ball_inside = cx - radius >= v.x_lo && cx + radius <= v.x_hi &&
                                 cy - radius >= v.y_lo && cy + radius <= v.y_hi;
        if (ball_inside)
            tr.terminated = true;  // absence certified: the whole ball was scanned
        else
            tr.escaped_domain = true;  // inconclusive: the ball extends past the samples
        return tr;
    }
    return tr;  // step cap; neither flag set
}

inline std::string trace_csv(const EscapeTrace& tr) {
    std::string s = "step,x,y,level,radius\n";
    for (size_t i = 0; i < tr.points.size(); ++i) {
        s += std::to_string(i) + "," + format_sig(tr.points[i].first, 12) + "," +
             format_sig(tr.points[i].second, 12) + "," + format_sig(tr.levels[i], 12) + "," +
             format_sig(tr.radii[i], 12) + "\n";
    }
    return s;
}

}  // namespace levcert
