#pragma once

// Decreasing majorant families on (0, H) and the measure-theoretic queries the
// certificate machinery needs.
//
// Conventions used throughout:
//  * A majorant is a non-increasing function M : (0, H) -> [0, inf). Its
//    argument is the distance to the singular line of the dominated field;
//    callers decide what that line is (axis or edge of the domain).
//  * All threshold work happens on log M. log_evaluate may return -inf
//    (zero majorant) or +inf (value beyond binary64); both compare correctly.
//  * distribution() measures over the symmetric interval (-b, b), i.e.
//    F(t) = |{y in (-b,b) : log+ M(|y|) >= t}| = 2*min(b, y*(t)). The factor 2
//    is explicit everywhere. This symmetric form dominates the one-sided
//    measure of an edge-singular majorant, so certificates built from it stay
//    sound for either reading.
//  * Tabulated majorants are right-continuous in y; at an exact level the
//    inversion extends to the next breakpoint (largest admissible extent).
//    Consequently F is left-continuous in t at exact levels and continuous
//    elsewhere.
//  * tail_radius/tail_envelope/dyadic_tail_bound form the analytic envelope
//    contract: tail_envelope(m,t,b) >= distribution(m,{t,b}) for t >= 1, is
//    non-increasing in t, and dyadic_tail_bound(m,t0,b) bounds
//    sum_{j>=1} distribution(m, {2^j t0, b}) in closed form once
//    t0 >= tail_floor(m). Families whose dyadic sums diverge (double
//    exponential blowup with alpha >= 1) raise non_summable_tail.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "levcert/numerics.hpp"

namespace levcert {

class non_summable_tail : public std::runtime_error {
public:
    explicit non_summable_tail(const std::string& what) : std::runtime_error(what) {}
};

inline double log_plus(double x) { return x > 0.0 ? x : 0.0; }

class Majorant;

struct ConstantFamily {
    double level;  // >= 0
};
struct ExpBlowupFamily {
    double beta;       // > 0
    double amplitude;  // > 0; M(y) = exp(amplitude * y^-beta)
};
struct DoubleExpFamily {
    double alpha;  // > 0; M(y) = exp(exp(y^-alpha))
};
struct TabulatedFamily {
    // (y_i, v_i), y strictly increasing in [0, H), v non-increasing, v >= 0.
    // M(y) = v_i on [y_i, y_{i+1}), extended left by v_0 below y_0.
    std::vector<std::pair<double, double>> steps;
};
struct ScaledFamily {
    std::shared_ptr<const Majorant> inner;
    double factor;  // > 0
};
struct DerivedFamily {
    // M~(y) = soundness * max(100/eps, 100/y) * inner(y/2).
    std::shared_ptr<const Majorant> inner;
    double eps;        // > 0
    double soundness;  // max(1, eps)
};

class Majorant {
public:
    using Family = std::variant<ConstantFamily, ExpBlowupFamily, DoubleExpFamily, TabulatedFamily,
                                ScaledFamily, DerivedFamily>;

    Majorant(Family family, double height) : family_(std::move(family)), height_(height) {
        if (!(height_ > 0.0) || !std::isfinite(height_))
            throw std::invalid_argument("majorant: height must be positive and finite");
        validate();
    }

    double height() const { return height_; }
    const Family& family() const { return family_; }

    // M(y). Domain is the open interval (0, H).
    double evaluate(double y) const {
        check_domain(y);
        return std::visit(
            [&](const auto& fam) -> double { return eval_family(fam, y); }, family_);
    }

    // log M(y); -inf for a zero level, +inf once the value leaves binary64.
    double log_evaluate(double y) const {
        check_domain(y);
        return std::visit(
            [&](const auto& fam) -> double { return log_eval_family(fam, y); }, family_);
    }

    // log+ log+ M(y), computed without forming M (stable for blowup families).
    double loglog_value(double y) const {
        check_domain(y);
        return std::visit(
            [&](const auto& fam) -> double { return loglog_family(fam, y); }, family_);
    }

    static Majorant constant(double level, double height) {
        return Majorant(ConstantFamily{level}, height);
    }
    static Majorant exp_blowup(double beta, double height, double amplitude = 1.0) {
        return Majorant(ExpBlowupFamily{beta, amplitude}, height);
    }
    static Majorant double_exp_blowup(double alpha, double height) {
        return Majorant(DoubleExpFamily{alpha}, height);
    }
    static Majorant tabulated(std::vector<std::pair<double, double>> steps, double height) {
        return Majorant(TabulatedFamily{std::move(steps)}, height);
    }
    static Majorant scaled(Majorant inner, double factor) {
        const double h = inner.height();
        return Majorant(ScaledFamily{std::make_shared<const Majorant>(std::move(inner)), factor},
                        h);
    }

private:
    Family family_;
    double height_;

    void check_domain(double y) const {
        if (!(y > 0.0) || !(y < height_))
            throw std::domain_error("majorant: argument outside (0, height)");
    }

    void validate() const {
        if (const auto* c = std::get_if<ConstantFamily>(&family_)) {
            if (c->level < 0.0 || !std::isfinite(c->level))
                throw std::invalid_argument("majorant: constant level must be finite and >= 0");
        } else if (const auto* e = std::get_if<ExpBlowupFamily>(&family_)) {
            if (!(e->beta > 0.0) || !(e->amplitude > 0.0))
                throw std::invalid_argument("majorant: exp blowup needs beta > 0, amplitude > 0");
        } else if (const auto* d = std::get_if<DoubleExpFamily>(&family_)) {
            if (!(d->alpha > 0.0))
                throw std::invalid_argument("majorant: double exp blowup needs alpha > 0");
        } else if (const auto* t = std::get_if<TabulatedFamily>(&family_)) {
            const auto& s = t->steps;
            if (s.empty()) throw std::invalid_argument("majorant: tabulated needs breakpoints");
            for (size_t i = 0; i < s.size(); ++i) {
                if (!(s[i].first >= 0.0) || !(s[i].first < height_))
                    throw std::invalid_argument("majorant: tabulated breakpoints must lie in [0, height)");
                if (s[i].second < 0.0 || !std::isfinite(s[i].second))
                    throw std::invalid_argument("majorant: tabulated values must be finite and >= 0");
                if (i > 0) {
                    if (!(s[i].first > s[i - 1].first))
                        throw std::invalid_argument("majorant: tabulated breakpoints must increase");
                    if (s[i].second > s[i - 1].second)
                        throw std::invalid_argument("majorant: tabulated values must not increase");
                }
            }
        } else if (const auto* sc = std::get_if<ScaledFamily>(&family_)) {
            if (!sc->inner) throw std::invalid_argument("majorant: scaled needs an inner majorant");
            if (!(sc->factor > 0.0) || !std::isfinite(sc->factor))
                throw std::invalid_argument("majorant: scale factor must be positive and finite");
        } else if (const auto* de = std::get_if<DerivedFamily>(&family_)) {
            if (!de->inner) throw std::invalid_argument("majorant: derived needs an inner majorant");
            if (!(de->eps > 0.0)) throw std::invalid_argument("majorant: derived needs eps > 0");
        }
    }

    static double eval_family(const ConstantFamily& f, double) { return f.level; }
    static double eval_family(const ExpBlowupFamily& f, double y) {
        return std::exp(f.amplitude * std::pow(y, -f.beta));
    }
    static double eval_family(const DoubleExpFamily& f, double y) {
        return std::exp(std::exp(std::pow(y, -f.alpha)));
    }
    static double eval_family(const TabulatedFamily& f, double y) {
        return tab_value(f, y);
    }
    static double eval_family(const ScaledFamily& f, double y) {
        return f.factor * f.inner->evaluate(y);
    }
    static double eval_family(const DerivedFamily& f, double y) {
        return f.soundness * std::max(100.0 / f.eps, 100.0 / y) * f.inner->evaluate(0.5 * y);
    }

    static double log_eval_family(const ConstantFamily& f, double) { return std::log(f.level); }
    static double log_eval_family(const ExpBlowupFamily& f, double y) {
        return f.amplitude * std::pow(y, -f.beta);
    }
    static double log_eval_family(const DoubleExpFamily& f, double y) {
        return std::exp(std::pow(y, -f.alpha));
    }
    static double log_eval_family(const TabulatedFamily& f, double y) {
        return std::log(tab_value(f, y));
    }
    static double log_eval_family(const ScaledFamily& f, double y) {
        return std::log(f.factor) + f.inner->log_evaluate(y);
    }
    static double log_eval_family(const DerivedFamily& f, double y) {
        return std::log(f.soundness * std::max(100.0 / f.eps, 100.0 / y)) +
               f.inner->log_evaluate(0.5 * y);
    }

    static double loglog_family(const ConstantFamily& f, double) {
        if (f.level <= 1.0) return 0.0;
        const double l = std::log(f.level);
        return l > 1.0 ? std::log(l) : 0.0;
    }
    static double loglog_family(const ExpBlowupFamily& f, double y) {
        // log M = a y^-beta > 0, so log+log+ M = log+(a y^-beta).
        return log_plus(std::log(f.amplitude) - f.beta * std::log(y));
    }
    static double loglog_family(const DoubleExpFamily& f, double y) {
        // log M = exp(y^-alpha) >= 1, so log+log+ M = y^-alpha exactly.
        return std::pow(y, -f.alpha);
    }
    static double loglog_family(const TabulatedFamily& f, double y) {
        const double v = tab_value(f, y);
        if (v <= 1.0) return 0.0;
        return log_plus(std::log(std::log(v)));
    }
    static double loglog_family(const ScaledFamily& f, double y) {
        const double inner_log = f.inner->log_evaluate(y);
        if (std::isinf(inner_log) && inner_log > 0.0) return f.inner->loglog_value(y);
        const double z = std::log(f.factor) + inner_log;
        return z > 1.0 ? std::log(z) : 0.0;
    }
    static double loglog_family(const DerivedFamily& f, double y) {
        const double inner_log = f.inner->log_evaluate(0.5 * y);
        if (std::isinf(inner_log) && inner_log > 0.0) return f.inner->loglog_value(0.5 * y);
        const double z =
            std::log(f.soundness * std::max(100.0 / f.eps, 100.0 / y)) + inner_log;
        return z > 1.0 ? std::log(z) : 0.0;
    }

    static double tab_value(const TabulatedFamily& f, double y) {
        // Last breakpoint with y_i <= y; left of the first breakpoint the first
        // value extends (keeps the function non-increasing on all of (0, H)).
        const auto& s = f.steps;
        size_t lo = 0;
        size_t hi = s.size();
        while (hi - lo > 1) {
            const size_t mid = lo + (hi - lo) / 2;
            if (s[mid].first <= y)
                lo = mid;
            else
                hi = mid;
        }
        return s[lo].second;
    }

    friend double distribution_impl(const Majorant& m, double t, double b);
    friend double tail_radius(const Majorant& m, double t);
    friend double tail_floor(const Majorant& m);
    friend double dyadic_tail_bound(const Majorant& m, double t0, double b);
    friend double loglog_head_bound(const Majorant& m, double d);
    friend bool loglog_is_finite(const Majorant& m);
    friend std::string to_text(const Majorant& m);
};

// ---------------------------------------------------------------------------
// Distribution F(t) = 2 * min(b, y*(t)) with y*(t) = sup{y : log+ M(y) >= t}.

struct DistributionQuery {
    double threshold;  // t > 0
    double halfwidth;  // 0 < b <= height
};

namespace detail {

// Monotone bisection for families without a closed inversion. The predicate
// log M(y) >= t is true on a left interval; returns the sound (upper) end of
// the final bracket.
inline double invert_by_bisection(const Majorant& m, double t, double b) {
    const double y_hi = std::min(b, m.height() * (1.0 - 1e-15));
    auto pred = [&](double y) { return m.log_evaluate(y) >= t; };
    if (pred(y_hi)) return b;  // predicate holds across the whole interval
    double lo = y_hi;
    bool found = false;
    for (int i = 0; i < 1200; ++i) {
        lo *= 0.5;
        if (lo < m.height() * 1e-300) break;
        if (pred(lo)) {
            found = true;
            break;
        }
    }
    if (!found) return 0.0;
    double hi = 2.0 * lo;
    for (int i = 0; i < 200; ++i) {
        if (hi - lo <= 1e-13 * hi) break;
        const double mid = 0.5 * (lo + hi);
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return std::min(b, hi);
}

}  // namespace detail

inline double distribution_impl(const Majorant& m, double t, double b) {
    struct Visitor {
        const Majorant& m;
        double t;
        double b;
        double operator()(const ConstantFamily& f) const {
            return (f.level > 1.0 && std::log(f.level) >= t) ? 2.0 * b : 0.0;
        }
        double operator()(const ExpBlowupFamily& f) const {
            // log M = a y^-beta >= t iff y <= (a/t)^(1/beta)
            const double ystar = std::pow(f.amplitude / t, 1.0 / f.beta);
            return 2.0 * std::min(b, ystar);
        }
        double operator()(const DoubleExpFamily& f) const {
            // log M = exp(y^-alpha) >= 1 everywhere, so F = 2b for t <= 1.
            if (t <= 1.0) return 2.0 * b;
            const double ystar = std::pow(std::log(t), -1.0 / f.alpha);
            return 2.0 * std::min(b, ystar);
        }
        double operator()(const TabulatedFamily& f) const {
            const auto& s = f.steps;
            if (!(s[0].second > 1.0) || std::log(s[0].second) < t) return 0.0;
            // Largest index whose level clears the threshold; extent runs to
            // the next breakpoint (right-continuous step convention).
            size_t idx = 0;
            for (size_t i = 1; i < s.size(); ++i) {
                if (s[i].second > 1.0 && std::log(s[i].second) >= t)
                    idx = i;
                else
                    break;
            }
            const double ystar = (idx + 1 < s.size()) ? s[idx + 1].first : m.height();
            return 2.0 * std::min(b, ystar);
        }
        double operator()(const ScaledFamily&) const {
            return 2.0 * std::min(b, detail::invert_by_bisection(m, t, b));
        }
        double operator()(const DerivedFamily&) const {
            return 2.0 * std::min(b, detail::invert_by_bisection(m, t, b));
        }
    };
    return std::visit(Visitor{m, t, b}, m.family());
}

inline double distribution(const Majorant& m, const DistributionQuery& q) {
    if (!(q.threshold > 0.0)) throw std::domain_error("distribution: threshold must be > 0");
    if (!(q.halfwidth > 0.0) || q.halfwidth > m.height())
        throw std::domain_error("distribution: halfwidth must lie in (0, height]");
    return distribution_impl(m, q.threshold, q.halfwidth);
}

// ---------------------------------------------------------------------------
// Derived majorant: the gradient-of-lift bound max(100/eps, 100/y) * M(y/2),
// inflated by s(eps) = max(1, eps) so the |rho| <= eps factor picked up inside
// the Cauchy ball never exceeds the recorded majorant.

inline Majorant derived_majorant(const Majorant& m, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("derived_majorant: eps must be > 0");
    const double soundness = std::max(1.0, eps);
    return Majorant(DerivedFamily{std::make_shared<const Majorant>(m), eps, soundness},
                    m.height());
}

// ---------------------------------------------------------------------------
// Analytic tail envelopes.

// Upper bound for the inversion radius y*(t); may exceed the height (callers
// cap with min(b, .)). Throws non_summable_tail where no summable envelope
// exists.
inline double tail_radius(const Majorant& m, double t) {
    struct Visitor {
        const Majorant& m;
        double t;
        double operator()(const ConstantFamily& f) const {
            return (f.level > 1.0 && std::log(f.level) >= t) ? m.height() : 0.0;
        }
        double operator()(const ExpBlowupFamily& f) const {
            return std::pow(f.amplitude / t, 1.0 / f.beta);
        }
        double operator()(const DoubleExpFamily& f) const {
            if (f.alpha >= 1.0)
                throw non_summable_tail("non-summable tail: double exp blowup with alpha >= 1");
            if (t <= 1.0) return m.height();
            return std::pow(std::log(t), -1.0 / f.alpha);
        }
        double operator()(const TabulatedFamily& f) const {
            // Exact inversion (the distribution itself is the tightest envelope).
            if (!(f.steps[0].second > 1.0) || std::log(f.steps[0].second) < t) return 0.0;
            size_t idx = 0;
            for (size_t i = 1; i < f.steps.size(); ++i) {
                if (f.steps[i].second > 1.0 && std::log(f.steps[i].second) >= t)
                    idx = i;
                else
                    break;
            }
            return (idx + 1 < f.steps.size()) ? f.steps[idx + 1].first : m.height();
        }
        double operator()(const ScaledFamily& f) const {
            const double shifted = t - std::log(f.factor);
            if (shifted <= 0.0) return m.height();
            return tail_radius(*f.inner, shifted);
        }
        double operator()(const DerivedFamily& f) const {
            // log+ M~ <= A + log+(100 s / y) + log+ M_in(y/2), A = log+(100 s / eps):
            // threshold t forces one of the two y-dependent terms above (t-A)/2.
            const double a = log_plus(std::log(100.0 * f.soundness / f.eps));
            const double tau = 0.5 * (t - a);
            if (tau <= 0.0) return m.height();
            const double from_prefactor = 100.0 * f.soundness * std::exp(-tau);
            const double from_inner = 2.0 * tail_radius(*f.inner, tau);
            return std::min(m.height(), std::max(from_prefactor, from_inner));
        }
    };
    if (!(t > 0.0)) throw std::domain_error("tail_radius: threshold must be > 0");
    return std::visit(Visitor{m, t}, m.family());
}

inline double tail_envelope(const Majorant& m, double t, double b) {
    if (!(b > 0.0) || b > m.height())
        throw std::domain_error("tail_envelope: halfwidth must lie in (0, height]");
    return 2.0 * std::min(b, tail_radius(m, t));
}

// Smallest t0 at which dyadic_tail_bound's closed forms are valid.
inline double tail_floor(const Majorant& m) {
    struct Visitor {
        const Majorant& m;
        double operator()(const ConstantFamily&) const { return 1.0; }
        double operator()(const ExpBlowupFamily&) const { return 1.0; }
        double operator()(const DoubleExpFamily&) const { return std::exp(1.0); }
        double operator()(const TabulatedFamily&) const { return 1.0; }
        double operator()(const ScaledFamily& f) const {
            return std::max({log_plus(std::log(f.factor)), tail_floor(*f.inner), 1.0});
        }
        double operator()(const DerivedFamily& f) const {
            const double a = log_plus(std::log(100.0 * f.soundness / f.eps));
            return std::max({2.0 * a, 2.0 * tail_floor(*f.inner), 4.0});
        }
    };
    return std::visit(Visitor{m}, m.family());
}

// Closed-form upper bound for sum_{j>=1} distribution(m, {2^j * t0, b}).
// Pre: t0 >= tail_floor(m).
inline double dyadic_tail_bound(const Majorant& m, double t0, double b) {
    struct Visitor {
        const Majorant& m;
        double t0;
        double b;
        double level_count_bound(double top_log) const {
            // Terms vanish once 2^j t0 exceeds top_log; each remaining term <= 2b.
            if (!(top_log > 0.0)) return 0.0;
            double acc = 0.0;
            double t = 2.0 * t0;
            for (int j = 0; j < 1100 && t <= top_log; ++j) {
                acc += 2.0 * b;
                t *= 2.0;
            }
            return acc;
        }
        double operator()(const ConstantFamily& f) const {
            return level_count_bound(f.level > 1.0 ? std::log(f.level) : 0.0);
        }
        double operator()(const ExpBlowupFamily& f) const {
            const double q = std::pow(2.0, -1.0 / f.beta);
            return 2.0 * std::pow(f.amplitude / t0, 1.0 / f.beta) * q / (1.0 - q);
        }
        double operator()(const DoubleExpFamily& f) const {
            if (f.alpha >= 1.0)
                throw non_summable_tail("non-summable tail: double exp blowup with alpha >= 1");
            // sum_{j>=1} 2 (log(2^j t0))^(-1/a) <= (2/log 2) * a/(1-a) * (log t0)^(1-1/a)
            const double l = std::log(t0);
            return (2.0 / std::log(2.0)) * (f.alpha / (1.0 - f.alpha)) *
                   std::pow(l, 1.0 - 1.0 / f.alpha);
        }
        double operator()(const TabulatedFamily& f) const {
            return level_count_bound(f.steps[0].second > 1.0 ? std::log(f.steps[0].second) : 0.0);
        }
        double operator()(const ScaledFamily& f) const {
            // 2^j t0 - log factor >= 2^{j-1} t0 once log factor <= t0.
            return tail_envelope(*f.inner, t0, b) + dyadic_tail_bound(*f.inner, t0, b);
        }
        double operator()(const DerivedFamily& f) const {
            // Split per tail_radius; prefactor part is dominated geometrically,
            // inner part re-indexes onto the inner dyadic sum.
            const double w = std::exp(-0.25 * t0);
            const double exp_part = 200.0 * f.soundness * w / (1.0 - w);
            const double inner_part =
                2.0 * (tail_envelope(*f.inner, 0.5 * t0, b) + tail_envelope(*f.inner, t0, b) +
                       dyadic_tail_bound(*f.inner, t0, b));
            return exp_part + inner_part;
        }
    };
    if (!(t0 >= tail_floor(m)))
        throw std::domain_error("dyadic_tail_bound: t0 below the family's validity floor");
    if (std::isinf(t0)) return 0.0;
    return std::visit(Visitor{m, t0, b}, m.family());
}

// ---------------------------------------------------------------------------
// Log-log integral over (0, H): the admissibility condition of the whole
// certificate chain. Divergence is reported through the flag, not an error.

struct LogLogIntegral {
    double value;  // +inf when not finite
    bool finite;
};

struct QuadratureConfig {
    double head_delta_factor = 1e-3;  // singular head cutoff = factor * H
    double rel_tol = 1e-9;
    int panel_order = 24;
    int max_shells = 2400;
};

// Whether the integral of log+ log+ M converges at 0; structural per family.
inline bool loglog_is_finite(const Majorant& m) {
    struct Visitor {
        bool operator()(const ConstantFamily&) const { return true; }
        bool operator()(const ExpBlowupFamily&) const { return true; }
        bool operator()(const DoubleExpFamily& f) const { return f.alpha < 1.0; }
        bool operator()(const TabulatedFamily&) const { return true; }
        bool operator()(const ScaledFamily& f) const { return loglog_is_finite(*f.inner); }
        bool operator()(const DerivedFamily& f) const { return loglog_is_finite(*f.inner); }
    };
    return std::visit(Visitor{}, m.family());
}

// Closed-form upper bound for the head integral of log+ log+ M over (0, d).
// Exact integrands for the analytic families; for composites, log+ products
// split via log+(xy) <= log+ x + log+ y + log 2 and the prefactor term is
// coarsened with log+log+ z <= log+ z. The slack vanishes with d.
inline double loglog_head_bound(const Majorant& m, double d) {
    struct Visitor {
        const Majorant& m;
        double d;
        static double exp_style_head(double amplitude, double beta, double d) {
            // integral over (0,e) of max(0, log a - b log y), e = min(d, (a)^(1/b))
            const double cross = std::pow(amplitude, 1.0 / beta);
            const double e = std::min(d, cross);
            if (!(e > 0.0)) return 0.0;
            return e * std::log(amplitude) + beta * e * (1.0 - std::log(e));
        }
        double operator()(const ConstantFamily& f) const {
            const double ll =
                (f.level > 1.0 && std::log(f.level) > 1.0) ? std::log(std::log(f.level)) : 0.0;
            return d * ll;
        }
        double operator()(const ExpBlowupFamily& f) const {
            return exp_style_head(f.amplitude, f.beta, d);
        }
        double operator()(const DoubleExpFamily& f) const {
            if (f.alpha >= 1.0) return std::numeric_limits<double>::infinity();
            return std::pow(d, 1.0 - f.alpha) / (1.0 - f.alpha);
        }
        double operator()(const TabulatedFamily& f) const {
            const double v = f.steps[0].second;
            const double ll = (v > 1.0 && std::log(v) > 1.0) ? std::log(std::log(v)) : 0.0;
            return d * ll;
        }
        double operator()(const ScaledFamily& f) const {
            const double lf = log_plus(std::log(f.factor));
            const double llf = lf > 1.0 ? std::log(lf) : 0.0;
            return d * (std::log(2.0) + llf) + loglog_head_bound(*f.inner, d);
        }
        double operator()(const DerivedFamily& f) const {
            const double a = log_plus(std::log(100.0 * f.soundness / f.eps));
            const double lla = a > 1.0 ? std::log(a) : 0.0;
            const double const_part = d * (2.0 * std::log(2.0) + lla);
            const double prefactor_part = exp_style_head(100.0 * f.soundness, 1.0, d);
            return const_part + prefactor_part + 2.0 * loglog_head_bound(*f.inner, 0.5 * d);
        }
    };
    return std::visit(Visitor{m, d}, m.family());
}

inline LogLogIntegral loglog_integral(const Majorant& m, const QuadratureConfig& cfg = {}) {
    if (!loglog_is_finite(m))
        return LogLogIntegral{std::numeric_limits<double>::infinity(), false};
    const double h = m.height();
    const double delta = cfg.head_delta_factor * h;
    auto f = [&](double y) { return m.loglog_value(y); };
    const GaussLegendre rule = gauss_legendre(cfg.panel_order);
    // Body on (delta, H): adaptive; the integrand is smooth away from 0.
    const double body =
        detail::integrate_adaptive_impl(f, delta, h * (1.0 - 1e-12), cfg.rel_tol, rule, 0);
    // Head on (0, delta): geometric shells toward 0 until the analytic
    // remainder bound is negligible, then add that bound.
    double head = 0.0;
    double hi = delta;
    double remainder = loglog_head_bound(m, hi);
    const double target = cfg.rel_tol * std::max(1.0, body) * 0.1;
    for (int shell = 0; shell < cfg.max_shells && remainder > target; ++shell) {
        const double lo = 0.5 * hi;
        head += integrate_panel(f, lo, hi, rule);
        hi = lo;
        remainder = loglog_head_bound(m, hi);
    }
    return LogLogIntegral{body + head + remainder, true};
}

// ---------------------------------------------------------------------------
// Text forms. User-facing grammar:
//   constant:c=<v> | expblowup:beta=<v>[,a=<v>] | doubleexp:alpha=<v>
//   | tabulated:@<file.csv>          (columns y,value per line)
// Library-generated composite forms (certificate audit records):
//   scaled:factor=<v>;inner=(<form>) | derived:eps=<v>;inner=(<form>)

inline std::string to_text(const Majorant& m) {
    struct Visitor {
        const Majorant& m;
        std::string operator()(const ConstantFamily& f) const {
            return "constant:c=" + format_sig(f.level, 17);
        }
        std::string operator()(const ExpBlowupFamily& f) const {
            std::string s = "expblowup:beta=" + format_sig(f.beta, 17);
            if (f.amplitude != 1.0) s += ",a=" + format_sig(f.amplitude, 17);
            return s;
        }
        std::string operator()(const DoubleExpFamily& f) const {
            return "doubleexp:alpha=" + format_sig(f.alpha, 17);
        }
        std::string operator()(const TabulatedFamily& f) const {
            std::string s = "tabulated:steps=";
            for (size_t i = 0; i < f.steps.size(); ++i) {
                if (i) s += "|";
                s += format_sig(f.steps[i].first, 17) + ";" + format_sig(f.steps[i].second, 17);
            }
            return s;
        }
        std::string operator()(const ScaledFamily& f) const {
            return "scaled:factor=" + format_sig(f.factor, 17) + ";inner=(" + to_text(*f.inner) +
                   ")";
        }
        std::string operator()(const DerivedFamily& f) const {
            return "derived:eps=" + format_sig(f.eps, 17) + ";inner=(" + to_text(*f.inner) + ")";
        }
    };
    return std::visit(Visitor{m}, m.family());
}

namespace detail {

inline double parse_number(const std::string& s, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument(std::string("majorant parse: bad number for ") + what);
    return v;
}

inline std::vector<std::pair<double, double>> parse_tabulated_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("majorant parse: cannot open " + path);
    std::vector<std::pair<double, double>> steps;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("majorant parse: tabulated rows need y,value");
        steps.emplace_back(parse_number(line.substr(0, comma), "tabulated y"),
                           parse_number(line.substr(comma + 1), "tabulated value"));
    }
    if (steps.empty()) throw std::invalid_argument("majorant parse: empty tabulated file");
    return steps;
}

inline std::vector<std::pair<double, double>> parse_tabulated_inline(const std::string& body) {
    std::vector<std::pair<double, double>> steps;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, '|')) {
        const auto semi = item.find(';');
        if (semi == std::string::npos)
            throw std::invalid_argument("majorant parse: tabulated steps need y;value");
        steps.emplace_back(parse_number(item.substr(0, semi), "tabulated y"),
                           parse_number(item.substr(semi + 1), "tabulated value"));
    }
    return steps;
}

}  // namespace detail

inline Majorant parse_majorant(const std::string& text, double height) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("majorant parse: expected family:params in '" + text + "'");
    const std::string family = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    if (family == "constant") {
        if (body.rfind("c=", 0) != 0)
            throw std::invalid_argument("majorant parse: constant needs c=<value>");
        return Majorant::constant(detail::parse_number(body.substr(2), "c"), height);
    }
    if (family == "expblowup") {
        double beta = 0.0;
        double amplitude = 1.0;
        bool have_beta = false;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.rfind("beta=", 0) == 0) {
                beta = detail::parse_number(item.substr(5), "beta");
                have_beta = true;
            } else if (item.rfind("a=", 0) == 0) {
                amplitude = detail::parse_number(item.substr(2), "a");
            } else {
                throw std::invalid_argument("majorant parse: unknown expblowup param '" + item +
                                            "'");
            }
        }
        if (!have_beta) throw std::invalid_argument("majorant parse: expblowup needs beta=<value>");
        return Majorant::exp_blowup(beta, height, amplitude);
    }
    if (family == "doubleexp") {
        if (body.rfind("alpha=", 0) != 0)
            throw std::invalid_argument("majorant parse: doubleexp needs alpha=<value>");
        return Majorant::double_exp_blowup(detail::parse_number(body.substr(6), "alpha"), height);
    }
    if (family == "tabulated") {
        if (body.rfind("@", 0) == 0)
            return Majorant::tabulated(detail::parse_tabulated_csv(body.substr(1)), height);
        if (body.rfind("steps=", 0) == 0)
            return Majorant::tabulated(detail::parse_tabulated_inline(body.substr(6)), height);
        throw std::invalid_argument("majorant parse: tabulated needs @file or steps=...");
    }
    auto parse_inner = [&](const std::string& rest) -> std::pair<double, Majorant> {
        // rest = "<key>=<num>;inner=(<form>)"
        const auto semi = rest.find(';');
        if (semi == std::string::npos || rest.compare(semi, 8, ";inner=(") != 0 ||
            rest.back() != ')')
            throw std::invalid_argument("majorant parse: composite needs ;inner=(...)");
        const auto eq = rest.find('=');
        const double v = detail::parse_number(rest.substr(eq + 1, semi - eq - 1), "composite");
        const std::string inner_text = rest.substr(semi + 8, rest.size() - semi - 9);
        return {v, parse_majorant(inner_text, height)};
    };
    if (family == "scaled") {
        if (body.rfind("factor=", 0) != 0)
            throw std::invalid_argument("majorant parse: scaled needs factor=<value>");
        auto [factor, inner] = parse_inner(body);
        return Majorant::scaled(std::move(inner), factor);
    }
    if (family == "derived") {
        if (body.rfind("eps=", 0) != 0)
            throw std::invalid_argument("majorant parse: derived needs eps=<value>");
        auto [eps, inner] = parse_inner(body);
        return derived_majorant(inner, eps);
    }
    throw std::invalid_argument("majorant parse: unknown family '" + family + "'");
}

}  // namespace levcert
