#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "levcert/domar.hpp"
#include "levcert/grid.hpp"
#include "levcert/majorant.hpp"

using namespace levcert;
using Catch::Approx;

TEST_CASE("dyadic sum on a constant majorant") {
    const Majorant m = Majorant::constant(std::exp(1.0), 1.0);
    const DomarSumResult r = domar_sum(m, 1.0, 1.0);
    REQUIRE(r.terms.size() == 2);
    CHECK(r.terms[0] == Approx(2.0));
    CHECK(r.terms[1] == Approx(2.0));
    CHECK(r.i_max == 0);
    CHECK(r.value == Approx(32.0 / kPi).epsilon(1e-13));
    CHECK(r.tail_bound == Approx(0.0).margin(0.0));

    // Above the level the very first term dies and the sum is empty.
    const DomarSumResult hi = domar_sum(m, 4.0, 1.0);
    CHECK(hi.i_max == -1);
    CHECK(hi.value == Approx(0.0).margin(0.0));
    CHECK(hi.tail_bound == Approx(0.0).margin(0.0));
}

TEST_CASE("doubling the constant re-indexes the term sequence") {
    const Majorant m = Majorant::exp_blowup(1.0, 1.0);
    const DomarSumResult a = domar_sum(m, 0.5, 1.0);
    const DomarSumResult b = domar_sum(m, 1.0, 1.0);
    REQUIRE(a.terms.size() >= b.terms.size() + 1);
    for (size_t i = 0; i + 1 < a.terms.size() && i < b.terms.size(); ++i)
        CHECK(b.terms[i] == a.terms[i + 1]);
}

TEST_CASE("minimal constant on the constant majorant hits the closed-form threshold") {
    const Majorant m = Majorant::constant(std::exp(1.0), 1.0);
    const DomarCertificate c = minimal_constant(m, 0.5, 1.0);
    // Sum vanishes exactly once C/2 > 1; minimal admissible C is 2.
    CHECK(c.C == Approx(2.0).epsilon(1e-5));
    CHECK(c.C >= 2.0);
    CHECK(c.sum_value < 0.5);
    CHECK(c.bound == Approx(std::exp(c.C)).epsilon(1e-12));
    CHECK_FALSE(c.bound_overflow);
    CHECK(c.distance == Approx(0.5));
}

TEST_CASE("zero majorant certifies the unit bound at the floor constant") {
    const Majorant zero = Majorant::constant(0.0, 1.0);
    const DomarCertificate c = minimal_constant(zero, 0.25, 1.0);
    CHECK(c.C == Approx(1e-9));
    CHECK(c.sum_value == Approx(0.0).margin(0.0));
    CHECK(c.bound == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("no certificate below the representable cap for a barely integrable majorant") {
    // alpha = 0.9 passes the log-log gate yet its dyadic tail decays like
    // (log t)^{-1/9}, still about 12 at the largest representable thresholds.
    const Majorant m = Majorant::double_exp_blowup(0.9, 1.0);
    CHECK(loglog_is_finite(m));
    CHECK_THROWS_AS(minimal_constant(m, 0.5, 1.0), no_certificate);
}

TEST_CASE("certificate JSON carries the full record") {
    const Majorant m = Majorant::constant(std::exp(1.0), 1.0);
    const DomarCertificate c = minimal_constant(m, 0.5, 1.0);
    const std::string j = certificate_json(c);
    CHECK(j.find("\"C\"") != std::string::npos);
    CHECK(j.find("\"sum_value\"") != std::string::npos);
    CHECK(j.find("\"tail_bound\"") != std::string::npos);
    CHECK(j.find("\"i_max\"") != std::string::npos);
    CHECK(j.find("\"distance\"") != std::string::npos);
    CHECK(j.find("\"bound\"") != std::string::npos);
}

TEST_CASE("mean comparison separates harmonic from superharmonic fields") {
    const Grid2D harmonic = Grid2D::sample(
        [](double x, double y) { return x * x - y * y; }, -1.0, 1.0, -1.0, 1.0, 201, 201);
    const MeanCheckResult h = subharmonic_mean_check(harmonic, 0.2, 0.1, 0.3);
    CHECK(h.ok);
    CHECK(h.lhs == Approx(0.03).margin(1e-6));

    const Grid2D bowl = Grid2D::sample(
        [](double x, double y) { return x * x + y * y; }, -1.0, 1.0, -1.0, 1.0, 201, 201);
    const MeanCheckResult s = subharmonic_mean_check(bowl, 0.0, 0.0, 0.1);
    CHECK(s.ok);
    CHECK(s.rhs == Approx(0.005).margin(5e-4));

    const Grid2D cap = Grid2D::sample(
        [](double x, double y) { return -(x * x + y * y); }, -1.0, 1.0, -1.0, 1.0, 201, 201);
    const MeanCheckResult f = subharmonic_mean_check(cap, 0.3, 0.2, 0.25);
    CHECK_FALSE(f.ok);

    CHECK_THROWS_AS(subharmonic_mean_check(harmonic, 0.95, 0.0, 0.2), std::domain_error);
}

TEST_CASE("escape trace on a flat field stops immediately with certainty") {
    const Grid2D flat = Grid2D::sample([](double, double) { return 5.0; }, -1.0, 1.0, -1.0,
                                       1.0, 101, 101);
    // Majorant at level 1 has empty superlevel sets, so the search ball is the
    // start point alone and absence of the doubled level is conclusive.
    const Majorant one = Majorant::constant(1.0, 2.0);
    const EscapeTrace tr = domar_escape_trace(flat, 0.0, 0.0, 4.0, one, 1.0);
    REQUIRE(tr.points.size() == 1);
    CHECK(tr.levels[0] == Approx(4.0));
    CHECK(tr.radii[0] == Approx(0.0));
    CHECK(tr.terminated);
    CHECK_FALSE(tr.escaped_domain);
}

TEST_CASE("escape trace follows the doubling ladder of a blowup field") {
    const double c = 1.0, b = 1.0;
    const Grid2D v = Grid2D::sample(
        [c, b](double x, double y) {
            const double s = b - y;
            return c * s / (x * x + s * s);
        },
        -1.0, 1.0, -0.999, 0.999, 1001, 1001, "log_modulus");
    const Majorant m = Majorant::exp_blowup(1.0, 2.0 * b, c);
    const EscapeTrace tr = domar_escape_trace(v, 0.0, 0.84, 6.0, m, b);
    REQUIRE(tr.points.size() == 8);
    CHECK(tr.levels.front() == Approx(6.0));
    CHECK(tr.levels.back() == Approx(768.0));
    CHECK(tr.escaped_domain);
    CHECK_FALSE(tr.terminated);
    for (size_t k = 0; k < tr.points.size(); ++k) {
        const auto [i, j] = v.nearest(tr.points[k].first, tr.points[k].second);
        CHECK(v.at(i, j) >= tr.levels[k] - 1e-12);
    }
    // The ladder walks monotonically toward the singular edge.
    for (size_t k = 1; k < tr.points.size(); ++k)
        CHECK(tr.points[k].second >= tr.points[k - 1].second - 1e-12);

    CHECK_THROWS_AS(domar_escape_trace(v, 0.0, 0.0, 6.0, m, b), std::domain_error);
}

TEST_CASE("trace CSV layout") {
    const Grid2D flat = Grid2D::sample([](double, double) { return 5.0; }, -1.0, 1.0, -1.0,
                                       1.0, 51, 51);
    const Majorant one = Majorant::constant(1.0, 2.0);
    const EscapeTrace tr = domar_escape_trace(flat, 0.0, 0.0, 4.0, one, 1.0);
    std::istringstream is(trace_csv(tr));
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "step,x,y,level,radius");
    REQUIRE(std::getline(is, line));
    CHECK(line.rfind("0,", 0) == 0);
}
