#pragma once

// Shared numeric helpers: Gauss-Legendre rules, adaptive panel integration,
// and deterministic float formatting for the serialization layer.

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace levcert {

inline constexpr double kPi = 3.14159265358979323846;

// exp(x) stays inside binary64 for x <= kExpOverflowCap; constants above the
// cap are carried in log form by the certificate layer.
inline constexpr double kExpOverflowCap = 700.0;

struct GaussLegendre {
    std::vector<double> nodes;    // on (-1, 1), ascending
    std::vector<double> weights;  // positive, sum to 2
};

// Nodes via Newton iteration on the Legendre recurrence. Order n <= 64 is
// plenty here; accuracy is ~1e-15 on the nodes.
inline GaussLegendre gauss_legendre(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: order out of range");
    GaussLegendre rule;
    rule.nodes.assign(static_cast<size_t>(n), 0.0);
    rule.weights.assign(static_cast<size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (t * p0 - p1) / (t * t - 1.0);
            const double step = p0 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        rule.nodes[static_cast<size_t>(i)] = -t;
        rule.nodes[static_cast<size_t>(n - 1 - i)] = t;
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        rule.weights[static_cast<size_t>(i)] = w;
        rule.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    return rule;
}

inline double integrate_panel(const std::function<double(double)>& f, double a, double b,
                              const GaussLegendre& rule) {
    const double mid = 0.5 * (a + b);
    const double rad = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        acc += rule.weights[i] * f(mid + rad * rule.nodes[i]);
    }
    return acc * rad;
}

namespace detail {
inline double integrate_adaptive_impl(const std::function<double(double)>& f, double a, double b,
                                      double abs_tol, const GaussLegendre& rule, int depth) {
    const double whole = integrate_panel(f, a, b, rule);
    const double mid = 0.5 * (a + b);
    const double split = integrate_panel(f, a, mid, rule) + integrate_panel(f, mid, b, rule);
    if (std::abs(split - whole) <= abs_tol || depth >= 48) return split;
    return integrate_adaptive_impl(f, a, mid, 0.5 * abs_tol, rule, depth + 1) +
           integrate_adaptive_impl(f, mid, b, 0.5 * abs_tol, rule, depth + 1);
}
}  // namespace detail

// Adaptive bisection with a fixed Gauss-Legendre panel; abs_tol is the target
// absolute error for the whole interval.
inline double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                 double abs_tol, int panel_order = 16) {
    const GaussLegendre rule = gauss_legendre(panel_order);
    return detail::integrate_adaptive_impl(f, a, b, abs_tol, rule, 0);
}

// Fixed-format float for serialized output. %.17g round-trips binary64;
// %.12g is the CSV convention. Output is locale-independent.
inline std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return std::string(buf);
}

}  // namespace levcert
