#pragma once

// Structural transforms between dimensions: spherical symmetrization around a
// chosen axis, the axial lifts rho*u (4-D to planar) and rho^k e^{ik phi} u
// (odd-n to 3-D), the holomorphic gradient of a planar harmonic, and the
// explicit constant for iterated interior derivative estimates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "levcert/majorant.hpp"
#include "levcert/numerics.hpp"

namespace levcert {

// Axially symmetric profile u(rho, h) of a field in n dimensions; rho is the
// radius in the first n-1 coordinates. Solutions of the axial reduction obey
// u_rr + u_hh + ((n-2)/rho) u_r = 0 away from the axis and are even at rho=0.
struct AxialField {
    std::function<double(double rho, double h)> eval;
    int n = 4;
    double rho_max = 0.0;
    double h_max = 0.0;
};

// Planar profile on a rho-symmetric rectangle. Fields produced by lift_4_to_2
// are odd in rho; closed-form partials travel along when known so the
// holomorphic gradient does not need finite differences.
struct PlanarField {
    std::function<double(double rho, double h)> eval;
    std::function<double(double rho, double h)> d_rho;  // optional
    std::function<double(double rho, double h)> d_h;    // optional
    double rho_max = 0.0;
    double h_max = 0.0;
    bool odd = false;
};

// Complex field on the 3-D cylinder in cylindrical coordinates.
struct SpatialField {
    std::function<std::complex<double>(double phi, double rho, double h)> eval;
    int k = 1;
    double rho_max = 0.0;
    double h_max = 0.0;
};

struct SphereQuadrature {
    int polar_order = 12;    // Gauss-Legendre nodes in cos(theta)
    int azimuth_points = 24; // uniform nodes in the azimuth
};

// Average of u over the sphere of radius rho in the first n-1 coordinates
// around x0, as a function of (rho, h). This is the O(n-1) Haar average: for
// a fixed rotation group the average over the orbit of a point reduces to the
// sphere average. Exact at rho=0 (every node collapses to x0) and exact for
// polynomial integrands of degree <= 2*polar_order - 1 in the polar direction
// and < azimuth_points in the azimuthal frequency.
inline AxialField symmetrize(
    const std::function<double(const std::vector<double>&, double)>& u,
    const std::vector<double>& x0, int n, double rho_max, double h_max,
    const SphereQuadrature& q = {}) {
    if (n != 3 && n != 4)
        throw std::invalid_argument("symmetrize: sphere rule implemented for n in {3, 4}");
    if (static_cast<int>(x0.size()) != n - 1)
        throw std::invalid_argument("symmetrize: x0 must have n-1 coordinates");
    if (q.polar_order < 2 || q.azimuth_points < 4)
        throw std::invalid_argument("symmetrize: quadrature order too low for any tolerance");
    AxialField out;
    out.n = n;
    out.rho_max = rho_max;
    out.h_max = h_max;
    if (n == 3) {
        // Circle average in the first two coordinates.
        const int na = q.azimuth_points;
        out.eval = [u, x0, na](double rho, double h) {
            double acc = 0.0;
            std::vector<double> x(2);
            for (int a = 0; a < na; ++a) {
                const double phi = 2.0 * kPi * a / na;
                x[0] = x0[0] + rho * std::cos(phi);
                x[1] = x0[1] + rho * std::sin(phi);
                acc += u(x, h);
            }
            return acc / na;
        };
        return out;
    }
    // n = 4: product rule on S^2, Gauss-Legendre in cos(theta) x uniform
    // azimuth; weights of the polar rule sum to 2, the sphere measure is 4 pi.
    const auto rule = std::make_shared<GaussLegendre>(gauss_legendre(q.polar_order));
    const int na = q.azimuth_points;
    out.eval = [u, x0, rule, na](double rho, double h) {
        double acc = 0.0;
        std::vector<double> x(3);
        for (size_t p = 0; p < rule->nodes.size(); ++p) {
            const double ct = rule->nodes[p];
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            double ring = 0.0;
            for (int a = 0; a < na; ++a) {
                const double phi = 2.0 * kPi * a / na;
                x[0] = x0[0] + rho * st * std::cos(phi);
                x[1] = x0[1] + rho * st * std::sin(phi);
                x[2] = x0[2] + rho * ct;
                ring += u(x, h);
            }
            acc += rule->weights[p] * (ring / na);
        }
        return acc / 2.0;  // polar weights sum to 2
    };
    return out;
}

// Planar lift of a 4-D axial profile: v(rho, h) = rho * u(|rho|, h), odd in
// rho and harmonic on the reflected rectangle whenever u solves the n=4
// axial equation.
inline PlanarField lift_4_to_2(const AxialField& u) {
    if (u.n != 4) throw std::invalid_argument("lift_4_to_2: requires an n=4 axial field");
    PlanarField out;
    out.rho_max = u.rho_max;
    out.h_max = u.h_max;
    out.odd = true;
    auto eval = u.eval;
    out.eval = [eval](double rho, double h) {
        return rho == 0.0 ? 0.0 : rho * eval(std::fabs(rho), h);
    };
    return out;
}

// 3-D lift of a (2k+3)-dimensional axial profile: v = rho^k e^{ik phi} u.
// The angular factor absorbs the extra (2k)/rho drift of the high-dimensional
// axial operator, leaving a genuine 3-D harmonic; v is continuous across the
// axis because k >= 1.
inline SpatialField lift_odd_to_3(const AxialField& u, int k) {
    if (k < 1) throw std::invalid_argument("lift_odd_to_3: k must be >= 1");
    if (u.n != 2 * k + 3)
        throw std::invalid_argument("lift_odd_to_3: axial field dimension must equal 2k+3");
    SpatialField out;
    out.k = k;
    out.rho_max = u.rho_max;
    out.h_max = u.h_max;
    auto eval = u.eval;
    out.eval = [eval, k](double phi, double rho, double h) -> std::complex<double> {
        if (rho == 0.0) return {0.0, 0.0};
        const double amp = std::pow(rho, k) * eval(rho, h);
        return std::polar(amp, k * phi);
    };
    return out;
}

// f = v_rho - i v_h with zeta = rho + i h; holomorphic when v is harmonic,
// and |f| = |grad v| pointwise. Closed-form partials are used when the field
// carries them; otherwise centered differences with the given step.
inline std::function<std::complex<double>(double, double)> gradient_to_holomorphic(
    const PlanarField& v, double fd_step = 1e-6) {
    if (v.d_rho && v.d_h) {
        auto dr = v.d_rho;
        auto dh = v.d_h;
        return [dr, dh](double rho, double h) {
            return std::complex<double>(dr(rho, h), -dh(rho, h));
        };
    }
    auto eval = v.eval;
    const double g = fd_step;
    return [eval, g](double rho, double h) {
        const double vr = (eval(rho + g, h) - eval(rho - g, h)) / (2.0 * g);
        const double vh = (eval(rho, h + g) - eval(rho, h - g)) / (2.0 * g);
        return std::complex<double>(vr, -vh);
    };
}

// Cauchy-Riemann residual |d f / d conj(zeta)| of a planar complex field,
// via centered differences; vanishes to O(g^2) for holomorphic f.
inline double cauchy_riemann_residual(
    const std::function<std::complex<double>(double, double)>& f, double rho, double h,
    double g) {
    const std::complex<double> fr = (f(rho + g, h) - f(rho - g, h)) / (2.0 * g);
    const std::complex<double> fh = (f(rho, h + g) - f(rho, h - g)) / (2.0 * g);
    return std::abs(0.5 * (fr + std::complex<double>(0.0, 1.0) * fh));
}

// Admissible constant for the k-th interior derivative of a harmonic
// function: iterating the gradient estimate |grad v|(x) <= (n/s) sup_{B_s}|v|
// on k nested balls of radius r/k gives |D^k v(x)| <= (n k / r)^k sup_{B_r}|v|.
inline double derivative_bound_constant(int k, double r, int n = 3) {
    if (k < 1) throw std::invalid_argument("derivative_bound_constant: k must be >= 1");
    if (!(r > 0.0)) throw std::invalid_argument("derivative_bound_constant: r must be > 0");
    return std::pow(static_cast<double>(n) * k / r, k);
}

// Log form of the same constant, for certificates whose bounds only exist in
// logs: k * (log(n k) - log r).
inline double log_derivative_bound_constant(int k, double r, int n = 3) {
    if (k < 1) throw std::invalid_argument("derivative_bound_constant: k must be >= 1");
    if (!(r > 0.0)) throw std::invalid_argument("derivative_bound_constant: r must be > 0");
    return k * (std::log(static_cast<double>(n) * k) - std::log(r));
}

// Which Cauchy branch fixes the estimation radius at height h: below the
// margin the ball radius h/2 governs (prefactor 100/h), above it the margin
// radius governs (prefactor 100/eps). The two agree at h = eps.
struct CauchyBranchReport {
    double h = 0.0;
    std::string branch;      // "h<=eps" or "h>=eps"
    double prefactor = 0.0;  // max(100/eps, 100/h)
};

inline CauchyBranchReport cauchy_branch_at(double h, double eps) {
    if (!(h > 0.0) || !(eps > 0.0))
        throw std::domain_error("cauchy_branch_at: h and eps must be > 0");
    CauchyBranchReport r;
    r.h = h;
    r.branch = h <= eps ? "h<=eps" : "h>=eps";
    r.prefactor = std::max(100.0 / eps, 100.0 / h);
    return r;
}

// Named composition point where the gradient estimates become a majorant for
// the holomorphic gradient: identical to derived_majorant, kept separate so
// certificate stages can reference the branch structure.
inline Majorant cauchy_gradient_majorant(const Majorant& m, double eps) {
    return derived_majorant(m, eps);
}

}  // namespace levcert
