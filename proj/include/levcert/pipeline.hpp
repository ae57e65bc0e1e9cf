#pragma once

// End-to-end certified sup bounds on cylinders. Every dimension reduces to
// the 2-D strip estimate:
//   n in {2,3}  pad with fake coordinates to n=4
//   n = 4       symmetrize, lift to an odd planar harmonic, bound its
//               holomorphic gradient by the derived majorant, run the strip
//               estimate with halfwidth H - eps/2 and distance eps/2
//   odd n >= 5  lift to 3-D with the scaled majorant eps^k M, certify n=3
//               recursively, then divide the k-th derivative bound by k!
//   even n >= 6 pad to n+1 and use the odd route
// The certificate records each transform with its constants so the final
// number can be audited and replayed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levcert/domar.hpp"
#include "levcert/majorant.hpp"
#include "levcert/reduction.hpp"

namespace levcert {

class levinson_condition_error : public std::runtime_error {
public:
    explicit levinson_condition_error(const std::string& what) : std::runtime_error(what) {}
};

struct CylinderSpec {
    int n = 4;
    double R = 1.0;
    double H = 1.0;
    double eps = 0.5;

    void validate() const {
        if (n < 2) throw std::invalid_argument("cylinder spec: dimension must be >= 2");
        if (!(R > 0.0) || !(H > 0.0))
            throw std::invalid_argument("cylinder spec: R and H must be > 0");
        if (!(eps > 0.0) || !(eps < std::min(R, H)))
            throw std::invalid_argument("cylinder spec: eps must lie in (0, min(R, H))");
    }
};

struct StageRecord {
    std::string name;
    std::string input_majorant;
    std::string output_majorant;  // empty for the terminal stage
    double majorant_height = 0.0;  // domain height of the input majorant
    std::vector<std::pair<std::string, double>> constants;
    std::string note;
};

struct BoundCertificate {
    CylinderSpec spec;
    std::vector<StageRecord> stages;
    DomarCertificate domar;
    double log_bound = 0.0;
    double final_bound = 0.0;  // +inf when overflow
    bool overflow = false;
};

namespace detail {

// Strip estimate for an n=4-equivalent problem. Appends its stages and fills
// the Domar core; returns the log bound (= the certified constant C).
inline double route_strip(const CylinderSpec& spec, const Majorant& m,
                          std::vector<StageRecord>& stages, DomarCertificate& domar,
                          const TruncationPolicy& policy) {
    const double eps = spec.eps;
    const Majorant mt = cauchy_gradient_majorant(m, eps);
    StageRecord cauchy;
    cauchy.name = "cauchy_gradient_majorant";
    cauchy.input_majorant = to_text(m);
    cauchy.output_majorant = to_text(mt);
    cauchy.majorant_height = m.height();
    cauchy.constants = {{"eps", eps},
                        {"soundness", std::max(1.0, eps)},
                        {"crossover_h", eps},
                        {"prefactor_at_crossover", 100.0 / eps}};
    cauchy.note =
        "gradient of the odd lift bounded via interior estimates; ball radius h/2 below the "
        "crossover height, eps/4 above it";
    stages.push_back(std::move(cauchy));

    const double halfwidth = spec.H - 0.5 * eps;
    const double distance = 0.5 * eps;
    domar = minimal_constant(mt, distance, halfwidth, policy);
    StageRecord strip;
    strip.name = "strip_domar";
    strip.input_majorant = to_text(mt);
    strip.majorant_height = mt.height();
    strip.constants = {{"halfwidth", halfwidth}, {"distance", distance}};
    strip.note =
        "holomorphic gradient on the strip; axis values of the gradient recover the field";
    stages.push_back(std::move(strip));
    return domar.C;
}

inline double route_dispatch(const CylinderSpec& spec, const Majorant& m,
                             std::vector<StageRecord>& stages, DomarCertificate& domar,
                             const TruncationPolicy& policy, int depth) {
    if (depth > 2) throw std::logic_error("certify_bound: route recursion exceeded depth 2");
    const int n = spec.n;
    if (n <= 3) {
        StageRecord pad;
        pad.name = "pad_to_4";
        pad.input_majorant = to_text(m);
        pad.output_majorant = to_text(m);
        pad.majorant_height = m.height();
        pad.constants = {{"n_from", static_cast<double>(n)}, {"n_to", 4.0}};
        pad.note = "fake coordinates extend the field constantly; geometry and majorant unchanged";
        stages.push_back(std::move(pad));
        CylinderSpec padded = spec;
        padded.n = 4;
        return route_dispatch(padded, m, stages, domar, policy, depth);
    }
    if (n == 4) return route_strip(spec, m, stages, domar, policy);
    if (n % 2 == 0) {
        StageRecord pad;
        pad.name = "pad_to_odd";
        pad.input_majorant = to_text(m);
        pad.output_majorant = to_text(m);
        pad.majorant_height = m.height();
        pad.constants = {{"n_from", static_cast<double>(n)},
                         {"n_to", static_cast<double>(n + 1)}};
        pad.note = "fake coordinate in the x-block raises the dimension to odd";
        stages.push_back(std::move(pad));
        CylinderSpec padded = spec;
        padded.n = n + 1;
        return route_dispatch(padded, m, stages, domar, policy, depth);
    }
    // Odd n = 2k+3 >= 5.
    const int k = (n - 3) / 2;
    const double eps = spec.eps;
    const double scale = std::pow(eps, k);

    StageRecord sym;
    sym.name = "symmetrize_axis";
    sym.input_majorant = to_text(m);
    sym.output_majorant = to_text(m);
    sym.majorant_height = m.height();
    sym.constants = {{"axis_radius", eps}};
    sym.note =
        "translate so the target point sits on the axis, then average over rotations of the "
        "x-block; domination survives the average";
    stages.push_back(std::move(sym));

    const Majorant scaled = Majorant::scaled(m, scale);
    StageRecord lift;
    lift.name = "lift_odd_to_3";
    lift.input_majorant = to_text(m);
    lift.output_majorant = to_text(scaled);
    lift.majorant_height = m.height();
    lift.constants = {{"k", static_cast<double>(k)}, {"majorant_scale", scale}};
    lift.note = "lifted field rho^k e^{ik phi} u obeys the scaled majorant on the 3-D cylinder "
                "of radius eps";
    stages.push_back(std::move(lift));

    CylinderSpec inner_spec;
    inner_spec.n = 3;
    inner_spec.R = eps;
    inner_spec.H = spec.H;
    inner_spec.eps = 0.5 * eps;
    inner_spec.validate();
    const double inner_log = route_dispatch(inner_spec, scaled, stages, domar, policy, depth + 1);

    const double r = 0.5 * eps;
    const double log_const = log_derivative_bound_constant(k, r);
    const double log_fact = std::lgamma(static_cast<double>(k) + 1.0);
    StageRecord deriv;
    deriv.name = "derivative_bound";
    deriv.input_majorant = to_text(scaled);
    deriv.majorant_height = scaled.height();
    deriv.constants = {{"k", static_cast<double>(k)},
                       {"radius", r},
                       {"log_derivative_constant", log_const},
                       {"log_factorial", log_fact}};
    deriv.note = "k-th radial derivative of the lift at the axis equals k! times the field; "
                 "interior estimates on the radius eps/2 ball give the constant";
    stages.push_back(std::move(deriv));
    return log_const - log_fact + inner_log;
}

}  // namespace detail

inline BoundCertificate certify_bound(const CylinderSpec& spec, const Majorant& m,
                                      const TruncationPolicy& policy = {}) {
    spec.validate();
    if (m.height() < spec.H)
        throw std::invalid_argument("certify_bound: majorant domain must cover (0, H)");
    if (!loglog_integral(m).finite)
        throw levinson_condition_error("no certificate: Levinson condition fails");
    BoundCertificate cert;
    cert.spec = spec;
    cert.log_bound = detail::route_dispatch(spec, m, cert.stages, cert.domar, policy, 0);
    cert.overflow = cert.log_bound > kExpOverflowCap;
    cert.final_bound =
        cert.overflow ? std::numeric_limits<double>::infinity() : std::exp(cert.log_bound);
    return cert;
}

// The cylinder bound is pointwise: translation plus symmetrization turns the
// bound at one axis point into the bound at every |x0| < R - eps, so the
// axis value is already the uniform value.
inline double bound_on_axis(const CylinderSpec& spec, const Majorant& m,
                            const TruncationPolicy& policy = {}) {
    return certify_bound(spec, m, policy).final_bound;
}

inline std::string certificate_json(const BoundCertificate& c) {
    std::string s = "{\"spec\": {";
    s += "\"n\": " + std::to_string(c.spec.n);
    s += ", \"R\": " + format_sig(c.spec.R, 17);
    s += ", \"H\": " + format_sig(c.spec.H, 17);
    s += ", \"eps\": " + format_sig(c.spec.eps, 17);
    s += "}, \"stages\": [";
    for (size_t i = 0; i < c.stages.size(); ++i) {
        const StageRecord& st = c.stages[i];
        if (i) s += ", ";
        s += "{\"name\": \"" + st.name + "\"";
        s += ", \"input_majorant\": \"" + st.input_majorant + "\"";
        s += ", \"output_majorant\": \"" + st.output_majorant + "\"";
        s += ", \"majorant_height\": " + format_sig(st.majorant_height, 17);
        s += ", \"constants\": {";
        for (size_t j = 0; j < st.constants.size(); ++j) {
            if (j) s += ", ";
            s += "\"" + st.constants[j].first + "\": " + format_sig(st.constants[j].second, 17);
        }
        s += "}, \"note\": \"" + st.note + "\"}";
    }
    s += "], \"domar\": " + certificate_json(c.domar);
    s += ", \"final_bound\": " + (c.overflow ? std::string("null") : format_sig(c.final_bound, 17));
    s += ", \"log_bound\": " + format_sig(c.log_bound, 17);
    s += "}";
    return s;
}

// Re-runs the recorded chain from the first stage's input majorant; audit
// passes when the reproduced bound is bit-identical.
inline BoundCertificate replay(const BoundCertificate& cert,
                               const TruncationPolicy& policy = {}) {
    if (cert.stages.empty()) throw std::invalid_argument("replay: certificate has no stages");
    const Majorant m =
        parse_majorant(cert.stages.front().input_majorant, cert.stages.front().majorant_height);
    return certify_bound(cert.spec, m, policy);
}

}  // namespace levcert
