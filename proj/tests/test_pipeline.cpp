#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "levcert/pipeline.hpp"

using namespace levcert;
using Catch::Approx;

namespace {

const double kE = std::exp(1.0);

// Independent strip oracle for the constant majorant M = e on R = H = 1,
// eps = 1/2. The derived gradient majorant is max(200, 100/h) * e, so its
// log-distribution over the halfwidth 3/4 strip is piecewise explicit:
// full width below the crossover threshold, exponential above it.
double hat_distribution(double t) {
    const double crossover = 1.0 + std::log(200.0);
    if (t <= crossover) return 1.5;
    return 200.0 * std::exp(1.0 - t);
}

double hat_sum(double C) {
    double acc = 0.0;
    double t = 0.5 * C;
    for (int i = 0; i < 200; ++i) {
        const double term = hat_distribution(t);
        acc += term;
        if (t > 1.0 + std::log(200.0) && term < 1e-300) break;
        t *= 2.0;
    }
    return (8.0 / kPi) * acc;
}

double hat_minimal_constant(double d) {
    double lo = 1.0;
    double hi = 64.0;
    REQUIRE(hat_sum(lo) >= d);
    REQUIRE(hat_sum(hi) < d);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (hat_sum(mid) < d ? hi : lo) = mid;
    }
    return hi;
}

std::vector<std::string> stage_names(const BoundCertificate& c) {
    std::vector<std::string> names;
    for (const StageRecord& st : c.stages) names.push_back(st.name);
    return names;
}

}  // namespace

TEST_CASE("zero majorant certifies the floor constant") {
    const BoundCertificate c =
        certify_bound({4, 1.0, 1.0, 0.5}, Majorant::constant(0.0, 1.0));
    CHECK(c.log_bound == Approx(1e-9).epsilon(1e-12));
    CHECK(c.final_bound == Approx(1.0).epsilon(1e-8));
    CHECK_FALSE(c.overflow);
}

TEST_CASE("constant majorant matches the independent strip oracle") {
    const CylinderSpec spec{4, 1.0, 1.0, 0.5};
    const BoundCertificate c = certify_bound(spec, Majorant::constant(kE, 1.0));
    const double oracle = hat_minimal_constant(0.25);
    CHECK(c.log_bound > 17.0);
    CHECK(c.log_bound < 17.5);
    CHECK(c.log_bound == Approx(oracle).epsilon(1e-5));
    CHECK(c.final_bound == Approx(std::exp(c.log_bound)));
    CHECK(stage_names(c) ==
          std::vector<std::string>{"cauchy_gradient_majorant", "strip_domar"});
    CHECK(c.domar.distance == Approx(0.25));
    CHECK(c.domar.sum_value < 0.25);
}

TEST_CASE("low dimensions pad to the strip route exactly") {
    const Majorant m = Majorant::exp_blowup(1.0, 1.0);
    const BoundCertificate base = certify_bound({4, 1.0, 1.0, 0.5}, m);
    for (int n : {2, 3}) {
        const BoundCertificate c = certify_bound({n, 1.0, 1.0, 0.5}, m);
        CHECK(c.stages.front().name == "pad_to_4");
        CHECK(c.log_bound == base.log_bound);
        CHECK(c.final_bound == base.final_bound);
        CHECK(c.domar.C == base.domar.C);
        CHECK(c.domar.sum_value == base.domar.sum_value);
    }
}

TEST_CASE("even dimensions above four pad to the next odd dimension exactly") {
    const Majorant m = Majorant::constant(kE, 1.0);
    const BoundCertificate odd = certify_bound({7, 1.0, 1.0, 0.5}, m);
    const BoundCertificate even = certify_bound({6, 1.0, 1.0, 0.5}, m);
    CHECK(even.stages.front().name == "pad_to_odd");
    CHECK(even.log_bound == odd.log_bound);
    CHECK(even.domar.C == odd.domar.C);
    CHECK(even.stages.size() == odd.stages.size() + 1);
}

TEST_CASE("odd route composes the inner certificate with the derivative constant") {
    const Majorant m = Majorant::constant(kE, 1.0);
    const BoundCertificate outer = certify_bound({5, 1.0, 1.0, 0.5}, m);
    const BoundCertificate inner =
        certify_bound({3, 0.5, 1.0, 0.25}, Majorant::scaled(m, 0.5));
    const double expected =
        log_derivative_bound_constant(1, 0.25) - std::lgamma(2.0) + inner.log_bound;
    CHECK(outer.log_bound == Approx(expected).epsilon(1e-15));
    CHECK(stage_names(outer) ==
          std::vector<std::string>{"symmetrize_axis", "lift_odd_to_3", "pad_to_4",
                                   "cauchy_gradient_majorant", "strip_domar",
                                   "derivative_bound"});
    CHECK(outer.domar.C == inner.domar.C);
}

TEST_CASE("replay reproduces certificates bit for bit") {
    for (int n : {4, 5}) {
        const BoundCertificate c =
            certify_bound({n, 1.0, 1.0, 0.5}, Majorant::constant(kE, 1.0));
        const BoundCertificate r = replay(c);
        CHECK(r.log_bound == c.log_bound);
        CHECK(r.final_bound == c.final_bound);
        CHECK(certificate_json(r) == certificate_json(c));
    }
}

TEST_CASE("bounds tighten with margin and loosen with the majorant") {
    const Majorant m = Majorant::constant(kE, 1.0);
    const double b1 = certify_bound({4, 1.0, 1.0, 0.2}, m).log_bound;
    const double b2 = certify_bound({4, 1.0, 1.0, 0.4}, m).log_bound;
    const double b3 = certify_bound({4, 1.0, 1.0, 0.6}, m).log_bound;
    CHECK(b1 >= b2);
    CHECK(b2 >= b3);

    const double small = certify_bound({4, 1.0, 1.0, 0.5}, m).log_bound;
    const double big =
        certify_bound({4, 1.0, 1.0, 0.5}, Majorant::constant(kE * kE, 1.0)).log_bound;
    CHECK(small <= big);
}

TEST_CASE("steep blowups certify in log form only") {
    const BoundCertificate c =
        certify_bound({4, 1.0, 1.0, 0.1}, Majorant::exp_blowup(1.0, 1.0, 100.0));
    CHECK(c.overflow);
    CHECK(std::isinf(c.final_bound));
    CHECK(c.log_bound > kExpOverflowCap);
    CHECK(c.log_bound < 1e7);
}

TEST_CASE("certification rejects inadmissible inputs") {
    CHECK_THROWS_AS(certify_bound({4, 1.0, 1.0, 0.5}, Majorant::double_exp_blowup(1.0, 1.0)),
                    levinson_condition_error);
    CHECK_THROWS_AS(certify_bound({4, 1.0, 1.0, 0.5}, Majorant::double_exp_blowup(1.5, 1.0)),
                    levinson_condition_error);
    CHECK_THROWS_AS(certify_bound({4, 1.0, 1.0, 0.5}, Majorant::constant(kE, 0.8)),
                    std::invalid_argument);
    CHECK_THROWS_AS(certify_bound({4, 1.0, 1.0, 1.5}, Majorant::constant(kE, 2.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(certify_bound({1, 1.0, 1.0, 0.5}, Majorant::constant(kE, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("every stage's input majorant re-parses at its recorded height") {
    for (int n : {2, 4, 5, 6}) {
        const BoundCertificate c =
            certify_bound({n, 1.0, 1.0, 0.5}, Majorant::exp_blowup(1.0, 1.0, 0.7));
        for (const StageRecord& st : c.stages) {
            REQUIRE(st.majorant_height > 0.0);
            const Majorant parsed = parse_majorant(st.input_majorant, st.majorant_height);
            CHECK(to_text(parsed) == st.input_majorant);
        }
    }
}
