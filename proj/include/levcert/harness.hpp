#pragma once

// Harmonic test fields with declared majorants and computable sups. Each
// sample carries a 2-D section through its cylinder chosen so that the
// section sup equals the full sup (by rotational symmetry or explicit
// structure), which keeps verification at desk scale in every dimension.
//
// Two domination frames appear:
//   Axis     |u(x, y)| <= M(|y|)        the certified class
//   TopEdge  |u(x, y)| <= M(H - y)      blowup samples, singular at y = +H
// The certificate machinery measures distributions symmetrically, which
// dominates the one-sided edge distribution, so certificates remain valid
// for both frames; the frame tag only directs the membership check.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levcert/domar.hpp"
#include "levcert/grid.hpp"
#include "levcert/majorant.hpp"
#include "levcert/pipeline.hpp"

namespace levcert {

enum class MajorantFrame { Axis, TopEdge };

struct SectionBox {
    double s_lo = 0.0, s_hi = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
};

struct HarnessSample {
    std::string name;
    std::string family;
    CylinderSpec spec;
    Majorant majorant;
    MajorantFrame frame = MajorantFrame::Axis;
    bool strip_core = false;  // certificate from the 2-D strip estimate directly

    // Field at a full cylinder point, x in R^{n-1}. Real fields return a zero
    // imaginary part.
    std::function<std::complex<double>(const std::vector<double>&, double)> eval;
    // Section chart (s, t) -> (x, y).
    std::function<std::pair<std::vector<double>, double>(double, double)> to_point;
    // Restricts section grids to the cylinder where the chart overshoots it.
    std::function<bool(double, double)> in_domain;

    SectionBox sup_box;  // section of the compact target K
    SectionBox dom_box;  // domain minus a thin edge ring, for domination
    SectionBox res_box;  // interior box where the residual stencil is reliable
    double fd_step = 1e-3;
    double residual_tol = 1e-9;  // on |Delta u| / (|u| + 1)
};

// ---------------------------------------------------------------------------
// Field probes.

inline std::complex<double> laplacian_nd_c(
    const std::function<std::complex<double>(const std::vector<double>&, double)>& f,
    std::vector<double> x, double y, double g) {
    const std::complex<double> c = f(x, y);
    std::complex<double> acc = -2.0 * static_cast<double>(x.size() + 1) * c;
    for (std::size_t a = 0; a < x.size(); ++a) {
        const double saved = x[a];
        x[a] = saved + g;
        acc += f(x, y);
        x[a] = saved - g;
        acc += f(x, y);
        x[a] = saved;
    }
    acc += f(x, y + g) + f(x, y - g);
    return acc / (g * g);
}

struct MembershipConfig {
    int residual_probes = 41;
    int domination_nodes = 201;
};

struct MembershipReport {
    double residual_max = 0.0;      // max normalized Laplacian residual
    double domination_ratio = 0.0;  // max |u| / M(frame distance)
    bool residual_ok = false;
    bool domination_ok = false;
    bool ok = false;
};

namespace detail {

inline double frame_distance(const HarnessSample& s, double y, double y_floor) {
    if (s.frame == MajorantFrame::TopEdge) return s.spec.H - y;
    return std::max(std::fabs(y), y_floor);
}

template <class Fn>
void for_section_grid(const HarnessSample& s, const SectionBox& box, int n_s, int n_t, Fn&& fn) {
    for (int j = 0; j < n_t; ++j) {
        const double t = box.t_lo + (box.t_hi - box.t_lo) * j / (n_t - 1);
        for (int i = 0; i < n_s; ++i) {
            const double sv = box.s_lo + (box.s_hi - box.s_lo) * i / (n_s - 1);
            if (s.in_domain && !s.in_domain(sv, t)) continue;
            fn(sv, t);
        }
    }
}

}  // namespace detail

inline double residual_max_at(const HarnessSample& s, double fd_step,
                              int probes_per_axis = 41) {
    double worst = 0.0;
    detail::for_section_grid(s, s.res_box, probes_per_axis, probes_per_axis,
                             [&](double sv, double t) {
                                 auto [x, y] = s.to_point(sv, t);
                                 const std::complex<double> r =
                                     laplacian_nd_c(s.eval, x, y, fd_step);
                                 const double scale = std::abs(s.eval(x, y)) + 1.0;
                                 worst = std::max(worst, std::abs(r) / scale);
                             });
    return worst;
}

inline MembershipReport verify_membership(const HarnessSample& s,
                                          const MembershipConfig& cfg = {}) {
    MembershipReport rep;
    rep.residual_max = residual_max_at(s, s.fd_step, cfg.residual_probes);
    rep.residual_ok = rep.residual_max <= s.residual_tol;

    const int n = cfg.domination_nodes;
    const double t_spacing = (s.dom_box.t_hi - s.dom_box.t_lo) / (n - 1);
    const double y_floor = 0.5 * t_spacing;
    double worst_log_ratio = -std::numeric_limits<double>::infinity();
    detail::for_section_grid(s, s.dom_box, n, n, [&](double sv, double t) {
        auto [x, y] = s.to_point(sv, t);
        const double mag = std::abs(s.eval(x, y));
        if (mag == 0.0) return;
        const double dist = detail::frame_distance(s, y, y_floor);
        const double log_m = s.majorant.log_evaluate(dist);
        worst_log_ratio = std::max(worst_log_ratio, std::log(mag) - log_m);
    });
    rep.domination_ratio = std::exp(worst_log_ratio);
    rep.domination_ok = worst_log_ratio <= 1e-9;
    rep.ok = rep.residual_ok && rep.domination_ok;
    return rep;
}

struct SupEstimate {
    double grid_value = 0.0;  // max over the fine grid
    double estimate = 0.0;    // fine value plus the observed refinement gain
};

inline SupEstimate measured_sup(const HarnessSample& s, int coarse_nodes = 501) {
    auto sweep = [&](int n) {
        double worst = 0.0;
        detail::for_section_grid(s, s.sup_box, n, n, [&](double sv, double t) {
            auto [x, y] = s.to_point(sv, t);
            worst = std::max(worst, std::abs(s.eval(x, y)));
        });
        return worst;
    };
    const double coarse = sweep(coarse_nodes);
    const double fine = sweep(2 * coarse_nodes - 1);
    return {fine, richardson_sup(coarse, fine)};
}

// Certified log bound for the sample's declared majorant: the strip estimate
// for 2-D edge-frame samples, the full pipeline otherwise.
struct SampleCertificate {
    double log_bound = 0.0;
    bool overflow = false;
    double bound = 0.0;  // +inf when overflow
};

inline SampleCertificate certificate_for(const HarnessSample& s,
                                         const TruncationPolicy& policy = {}) {
    SampleCertificate out;
    if (s.strip_core) {
        const DomarCertificate c =
            minimal_constant(s.majorant, s.spec.eps, s.spec.H, policy);
        out.log_bound = c.C;
        out.overflow = c.bound_overflow;
        out.bound = c.bound;
        return out;
    }
    const BoundCertificate c = certify_bound(s.spec, s.majorant, policy);
    out.log_bound = c.log_bound;
    out.overflow = c.overflow;
    out.bound = c.final_bound;
    return out;
}

// ---------------------------------------------------------------------------
// Sample constructors.

namespace detail {

inline std::complex<double> blowup_value(double c, double b, double x, double y) {
    // f(z) = exp(-i c / (z - i b)); |f| = exp(c (b - y) / |z - i b|^2).
    const std::complex<double> z(x, y);
    const std::complex<double> ib(0.0, b);
    return std::exp(std::complex<double>(0.0, -c) / (z - ib));
}

struct AxialBlowupProfile {
    double c = 1.0;
    double b = 1.0;

    // Im G(rho + ih) / rho for G(zeta) = exp(-i c / (zeta - i b)). Im G is the
    // odd-in-rho part of G, so the quotient is the even axial profile solving
    // the n=4 axial equation; in closed form with s = b - h, D = rho^2 + s^2,
    //   u = -(c / D) exp(c s / D) sinc(c rho / D),
    // which stays exact across the axis (sinc -> 1, u(0, h) = -(c/s^2) e^{c/s}).
    double operator()(double rho, double h) const {
        const double s = b - h;
        const double D = rho * rho + s * s;
        const double arg = c * rho / D;
        const double sinc = std::fabs(arg) < 1e-8 ? 1.0 : std::sin(arg) / arg;
        return -(c / D) * std::exp(c * s / D) * sinc;
    }
};

inline std::function<bool(double, double)> always_inside() {
    return [](double, double) { return true; };
}

}  // namespace detail

// Holomorphic boundary blowup on the plane strip: f(z) = exp(-i c / (z - iH)),
// dominated with equality on the axis by M(t) = exp(c / t) at t = H - y.
inline HarnessSample make_boundary_blowup(double c, const CylinderSpec& spec) {
    if (c < 0.0) throw std::invalid_argument("boundary blowup: c must be >= 0");
    spec.validate();
    if (spec.n != 2) throw std::invalid_argument("boundary blowup: sample lives in n=2");
    const double H = spec.H;
    HarnessSample s{
        "boundary_blowup_c" + format_sig(c, 6),
        "boundary_blowup_2d",
        spec,
        c > 0.0 ? Majorant::exp_blowup(1.0, 2.0 * H, c) : Majorant::constant(1.0, 2.0 * H),
        MajorantFrame::TopEdge,
        true,
        {},
        {},
        detail::always_inside(),
        {},
        {},
        {},
        1e-4,
        1e-3};
    s.eval = [c, H](const std::vector<double>& x, double y) {
        return detail::blowup_value(c, H, x[0], y);
    };
    s.to_point = [](double sv, double t) {
        return std::make_pair(std::vector<double>{sv}, t);
    };
    const double kx = spec.R - spec.eps;
    const double ky = spec.H - spec.eps;
    s.sup_box = {-kx, kx, -ky, ky};
    // The edge margin keeps c / distance below the exp overflow cap so the
    // field stays representable on every domination node.
    const double edge = std::max(1e-3 * H, c / 500.0);
    s.dom_box = {-spec.R, spec.R, -(H - edge), H - edge};
    s.res_box = {-0.9 * spec.R, 0.9 * spec.R, -0.9 * H, 0.5 * H};
    return s;
}

// Planar harmonic polynomial Re z^3 with a constant majorant.
inline HarnessSample make_planar_cubic(const CylinderSpec& spec) {
    spec.validate();
    if (spec.n != 2) throw std::invalid_argument("planar cubic: sample lives in n=2");
    const double level = std::pow(spec.R * spec.R + spec.H * spec.H, 1.5);
    HarnessSample s{"planar_cubic",
                    "planar_cubic",
                    spec,
                    Majorant::constant(level, spec.H),
                    MajorantFrame::Axis,
                    false,
                    {},
                    {},
                    detail::always_inside(),
                    {},
                    {},
                    {},
                    1e-2,
                    1e-9};
    s.eval = [](const std::vector<double>& x, double y) {
        return std::complex<double>(x[0] * x[0] * x[0] - 3.0 * x[0] * y * y, 0.0);
    };
    s.to_point = [](double sv, double t) {
        return std::make_pair(std::vector<double>{sv}, t);
    };
    const double kx = spec.R - spec.eps;
    const double ky = spec.H - spec.eps;
    s.sup_box = {-kx, kx, -ky, ky};
    s.dom_box = {-spec.R, spec.R, -spec.H * (1.0 - 1e-3), spec.H * (1.0 - 1e-3)};
    s.res_box = {-0.9 * spec.R, 0.9 * spec.R, -0.9 * spec.H, 0.9 * spec.H};
    return s;
}

// Newtonian point source at (0, 0, pole_y) outside the closed cylinder.
inline HarnessSample make_point_source_shell(double pole_y, const CylinderSpec& spec) {
    spec.validate();
    if (spec.n != 3) throw std::invalid_argument("point source shell: sample lives in n=3");
    if (!(pole_y > spec.H))
        throw std::invalid_argument("point source shell: pole must sit above the cylinder");
    const double level = 1.0 / (pole_y - spec.H);
    HarnessSample s{"point_source_shell",
                    "point_source_shell",
                    spec,
                    Majorant::constant(level, spec.H),
                    MajorantFrame::Axis,
                    false,
                    {},
                    {},
                    detail::always_inside(),
                    {},
                    {},
                    {},
                    1e-3,
                    1e-4};
    s.eval = [pole_y](const std::vector<double>& x, double y) {
        const double d2 = x[0] * x[0] + x[1] * x[1] + (y - pole_y) * (y - pole_y);
        return std::complex<double>(1.0 / std::sqrt(d2), 0.0);
    };
    s.to_point = [](double sv, double t) {
        return std::make_pair(std::vector<double>{sv, 0.0}, t);
    };
    s.sup_box = {0.0, spec.R - spec.eps, -(spec.H - spec.eps), spec.H - spec.eps};
    s.dom_box = {0.0, spec.R, -spec.H * (1.0 - 1e-3), spec.H * (1.0 - 1e-3)};
    s.res_box = {0.0, 0.9 * spec.R, -0.9 * spec.H, 0.9 * spec.H};
    return s;
}

// Axially symmetric 4-D harmonic generated from the planar blowup: Im G is
// odd in rho, so Im G / rho is an even axial profile. |u| peaks on the axis
// at (c/s^2) e^{c/s}, s = b - h, and exp((c + A)/s) with A = 2 sqrt(2c)/e
// dominates it for every s: max_s s (log c - 2 log s) = 2 sqrt(c)/e, and the
// chosen A carries a sqrt(2) margin above that.
inline HarnessSample make_axial_blowup_4d(double c, const CylinderSpec& spec) {
    if (!(c > 0.0)) throw std::invalid_argument("axial blowup: c must be > 0");
    spec.validate();
    if (spec.n != 4) throw std::invalid_argument("axial blowup: sample lives in n=4");
    const double H = spec.H;
    const double amplitude = c + 2.0 * std::sqrt(2.0 * c) / std::exp(1.0);
    detail::AxialBlowupProfile profile{c, H};
    HarnessSample s{"axial_blowup_4d",
                    "axial_blowup_4d",
                    spec,
                    Majorant::exp_blowup(1.0, 2.0 * H, amplitude),
                    MajorantFrame::TopEdge,
                    false,
                    {},
                    {},
                    detail::always_inside(),
                    {},
                    {},
                    {},
                    1e-4,
                    1e-3};
    s.eval = [profile](const std::vector<double>& x, double y) {
        const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        return std::complex<double>(profile(rho, y), 0.0);
    };
    s.to_point = [](double sv, double t) {
        return std::make_pair(std::vector<double>{sv, 0.0, 0.0}, t);
    };
    s.sup_box = {0.0, spec.R - spec.eps, -(spec.H - spec.eps), spec.H - spec.eps};
    // Same overflow-driven edge margin as the planar blowup: on the axis the
    // field reaches (c/s^2) exp(c/s) at s = H - y.
    const double edge = std::max(1e-3 * H, c / 500.0);
    s.dom_box = {0.0, spec.R, -(H - edge), H - edge};
    s.res_box = {0.0, 0.9 * spec.R, -0.9 * H, 0.5 * H};
    return s;
}

// Axially symmetric harmonic polynomial 3h^2 - rho^2 in 4-D with a stepped
// majorant, exercising the tabulated family end to end.
inline HarnessSample make_axial_poly_4d(const CylinderSpec& spec) {
    spec.validate();
    if (spec.n != 4) throw std::invalid_argument("axial poly: sample lives in n=4");
    HarnessSample s{"axial_poly_4d",
                    "axial_poly_4d",
                    spec,
                    Majorant::tabulated({{0.0, 4.5}, {0.8 * spec.H, 4.2}}, spec.H),
                    MajorantFrame::Axis,
                    false,
                    {},
                    {},
                    detail::always_inside(),
                    {},
                    {},
                    {},
                    1e-2,
                    1e-9};
    s.eval = [](const std::vector<double>& x, double y) {
        const double rho2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return std::complex<double>(3.0 * y * y - rho2, 0.0);
    };
    s.to_point = [](double sv, double t) {
        return std::make_pair(std::vector<double>{sv, 0.0, 0.0}, t);
    };
    s.sup_box = {0.0, spec.R - spec.eps, -(spec.H - spec.eps), spec.H - spec.eps};
    s.dom_box = {0.0, spec.R, -spec.H * (1.0 - 1e-3), spec.H * (1.0 - 1e-3)};
    s.res_box = {0.0, 0.9 * spec.R, -0.9 * spec.H, 0.9 * spec.H};
    return s;
}

// |x|^2 - 4 y^2 in 5-D (x in R^4).
inline HarnessSample make_radial_poly_5d(const CylinderSpec& spec) {
    spec.validate();
    if (spec.n != 5) throw std::invalid_argument("radial poly: sample lives in n=5");
    const double level = std::max(spec.R * spec.R, 4.0 * spec.H * spec.H);
    HarnessSample s{"radial_poly_5d",
                    "radial_poly_5d",
                    spec,
                    Majorant::constant(level, spec.H),
                    MajorantFrame::Axis,
                    false,
                    {},
                    {},
                    detail::always_inside(),
                    {},
                    {},
                    {},
                    1e-2,
                    1e-9};
    s.eval = [](const std::vector<double>& x, double y) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return std::complex<double>(r2 - 4.0 * y * y, 0.0);
    };
    s.to_point = [](double sv, double t) {
        return std::make_pair(std::vector<double>{sv, 0.0, 0.0, 0.0}, t);
    };
    s.sup_box = {0.0, spec.R - spec.eps, -(spec.H - spec.eps), spec.H - spec.eps};
    s.dom_box = {0.0, spec.R, -spec.H * (1.0 - 1e-3), spec.H * (1.0 - 1e-3)};
    s.res_box = {0.0, 0.9 * spec.R, -0.9 * spec.H, 0.9 * spec.H};
    return s;
}

// x1^2 - x2^2 in 6-D; the section runs through the (x1, x2) plane, where the
// sup over K is attained, clipped to the cylinder radius.
inline HarnessSample make_saddle_poly_6d(const CylinderSpec& spec) {
    spec.validate();
    if (spec.n != 6) throw std::invalid_argument("saddle poly: sample lives in n=6");
    HarnessSample s{"saddle_poly_6d",
                    "saddle_poly_6d",
                    spec,
                    Majorant::constant(spec.R * spec.R, spec.H),
                    MajorantFrame::Axis,
                    false,
                    {},
                    {},
                    {},
                    {},
                    {},
                    {},
                    1e-2,
                    1e-9};
    s.eval = [](const std::vector<double>& x, double y) {
        (void)y;
        return std::complex<double>(x[0] * x[0] - x[1] * x[1], 0.0);
    };
    s.to_point = [](double sv, double t) {
        return std::make_pair(std::vector<double>{sv, t, 0.0, 0.0, 0.0}, 0.0);
    };
    const double r_in = spec.R * (1.0 - 1e-9);
    s.in_domain = [r_in](double sv, double t) { return sv * sv + t * t <= r_in * r_in; };
    const double kx = spec.R - spec.eps;
    s.sup_box = {-kx, kx, -kx, kx};
    s.dom_box = {-spec.R, spec.R, -spec.R, spec.R};
    s.res_box = {-0.7 * spec.R, 0.7 * spec.R, -0.7 * spec.R, 0.7 * spec.R};
    return s;
}

// |x|^2 - 6 y^2 in 7-D (x in R^6).
inline HarnessSample make_radial_poly_7d(const CylinderSpec& spec) {
    spec.validate();
    if (spec.n != 7) throw std::invalid_argument("radial poly: sample lives in n=7");
    const double level = std::max(spec.R * spec.R, 6.0 * spec.H * spec.H);
    HarnessSample s{"radial_poly_7d",
                    "radial_poly_7d",
                    spec,
                    Majorant::constant(level, spec.H),
                    MajorantFrame::Axis,
                    false,
                    {},
                    {},
                    detail::always_inside(),
                    {},
                    {},
                    {},
                    1e-2,
                    1e-9};
    s.eval = [](const std::vector<double>& x, double y) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return std::complex<double>(r2 - 6.0 * y * y, 0.0);
    };
    s.to_point = [](double sv, double t) {
        return std::make_pair(std::vector<double>{sv, 0.0, 0.0, 0.0, 0.0, 0.0}, t);
    };
    s.sup_box = {0.0, spec.R - spec.eps, -(spec.H - spec.eps), spec.H - spec.eps};
    s.dom_box = {0.0, spec.R, -spec.H * (1.0 - 1e-3), spec.H * (1.0 - 1e-3)};
    s.res_box = {0.0, 0.9 * spec.R, -0.9 * spec.H, 0.9 * spec.H};
    return s;
}

// ---------------------------------------------------------------------------
// Registry.

inline HarnessSample make_sample(const std::string& family, const CylinderSpec& spec,
                                 const std::map<std::string, double>& params) {
    auto param = [&](const std::string& key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (family == "boundary_blowup_2d") return make_boundary_blowup(param("c", 1.0), spec);
    if (family == "planar_cubic") return make_planar_cubic(spec);
    if (family == "point_source_shell")
        return make_point_source_shell(param("pole_y", 2.0), spec);
    if (family == "axial_blowup_4d") return make_axial_blowup_4d(param("c", 1.0), spec);
    if (family == "axial_poly_4d") return make_axial_poly_4d(spec);
    if (family == "radial_poly_5d") return make_radial_poly_5d(spec);
    if (family == "saddle_poly_6d") return make_saddle_poly_6d(spec);
    if (family == "radial_poly_7d") return make_radial_poly_7d(spec);
    throw std::invalid_argument("registry: unknown sample family '" + family + "'");
}

inline std::vector<HarnessSample> default_registry() {
    std::vector<HarnessSample> reg;
    reg.push_back(make_boundary_blowup(1.0, {2, 1.0, 1.0, 0.25}));
    reg.push_back(make_planar_cubic({2, 1.0, 1.0, 0.5}));
    reg.push_back(make_point_source_shell(2.0, {3, 1.0, 1.0, 0.25}));
    reg.push_back(make_axial_blowup_4d(1.0, {4, 1.0, 1.0, 0.5}));
    reg.push_back(make_axial_poly_4d({4, 1.0, 1.0, 0.5}));
    reg.push_back(make_radial_poly_5d({5, 1.0, 1.0, 0.5}));
    reg.push_back(make_saddle_poly_6d({6, 1.0, 1.0, 0.5}));
    reg.push_back(make_radial_poly_7d({7, 1.0, 1.0, 0.5}));
    return reg;
}

}  // namespace levcert
