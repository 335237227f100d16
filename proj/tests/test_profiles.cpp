#include <doctest.h>

#include <cmath>
#include <vector>

#include "qgauge/profiles.hpp"

using namespace qgauge;

namespace {

// centered-difference cross-check of the analytic derivatives
void check_derivatives(const TimeProfile& p, double t, double tol = 2e-6) {
    const double h = 1e-4;
    double fd1 = (p.value(t + h) - p.value(t - h)) / (2.0 * h);
    double fd2 = (p.value(t + h) - 2.0 * p.value(t) + p.value(t - h)) / (h * h);
    CHECK(p.d1(t) == doctest::Approx(fd1).epsilon(tol).scale(1.0));
    CHECK(p.d2(t) == doctest::Approx(fd2).epsilon(5e-4).scale(1.0));
}

} // namespace

TEST_CASE("time profiles differentiate analytically") {
    std::vector<TimeProfile> profiles = {
        TimeProfile::make_constant(1.3),
        TimeProfile::make_linear(0.2, -0.7),
        TimeProfile::make_sinusoid(0.8, 1.7, 0.3),
        TimeProfile::make_gaussian(1.1, 2.0, 1.4),
        TimeProfile::make_gaussian_pulse(0.6, 2.3, 0.4, 3.0, 1.8),
        TimeProfile::make_sin2_pulse(0.5, 1.9, 0.0, 0.5, 7.0),
    };
    for (const auto& p : profiles)
        for (double t : {0.9, 1.7, 2.6, 4.4}) check_derivatives(p, t);
}

TEST_CASE("sin2 pulse vanishes outside its support") {
    auto p = TimeProfile::make_sin2_pulse(1.0, 2.0, 0.0, 1.0, 5.0);
    CHECK(p.value(0.5) == 0.0);
    CHECK(p.value(6.5) == 0.0);
    CHECK(p.d1(0.5) == 0.0);
    CHECK(p.value(1.0) == doctest::Approx(0.0));
    CHECK(p.value(6.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("table profile interpolates and differentiates to O(h^2)") {
    std::vector<double> ts, vs;
    for (int i = 0; i <= 200; ++i) {
        double t = i * 0.05;
        ts.push_back(t);
        vs.push_back(std::sin(1.3 * t));
    }
    auto p = TimeProfile::make_table(ts, vs);
    CHECK(p.value(3.025) == doctest::Approx(std::sin(1.3 * 3.025)).epsilon(1e-3));
    CHECK(p.d1(4.0) == doctest::Approx(1.3 * std::cos(1.3 * 4.0)).epsilon(1e-3));
}

TEST_CASE("table profiles reject ragged input") {
    CHECK_THROWS(TimeProfile::make_table({0.0, 1.0, 2.5}, {1.0, 2.0, 3.0}));
    CHECK_THROWS(TimeProfile::make_table({0.0}, {1.0}));
    CHECK_THROWS(TimeProfile::make_table({0.0, 1.0}, {1.0}));
}

TEST_CASE("polynomial space profiles evaluate exactly") {
    auto p = SpaceProfile::make_polynomial({1.0, -2.0, 0.5, 0.25});
    double x = 1.7;
    CHECK(p.value(x) == doctest::Approx(1.0 - 2.0 * x + 0.5 * x * x + 0.25 * x * x * x));
    CHECK(p.d1(x) == doctest::Approx(-2.0 + x + 0.75 * x * x));
    auto d = p.derivative();
    CHECK(d.value(x) == doctest::Approx(p.d1(x)));
    CHECK(d.derivative().value(x) == doctest::Approx(1.0 + 1.5 * x));
}

TEST_CASE("sinusoid space profile differentiates to the shifted sinusoid") {
    auto p = SpaceProfile::make_sinusoid(0.7, 2.1, 0.4);
    auto d = p.derivative();
    for (double x : {-1.0, 0.3, 2.2})
        CHECK(d.value(x) == doctest::Approx(0.7 * 2.1 * std::cos(2.1 * x + 0.4)));
}

TEST_CASE("is_constant recognizes uniform profiles") {
    CHECK(SpaceProfile::make_constant(3.0).is_constant());
    CHECK(SpaceProfile::make_polynomial({3.0, 0.0}).is_constant());
    CHECK(!SpaceProfile::make_polynomial({0.0, 1.0}).is_constant());
    CHECK(!SpaceProfile::make_sinusoid(1.0, 2.0).is_constant());
    CHECK(SpaceProfile::make_sinusoid(0.0, 2.0).is_constant());
}

TEST_CASE("space-time fields combine separable terms with derivatives") {
    SpaceTimeField f;
    f.terms.push_back(FieldTerm{2.0, SpaceProfile::make_polynomial({0.0, 0.0, 1.0}),
                                TimeProfile::make_sinusoid(1.0, 1.5, 0.0), 0});
    f.terms.push_back(FieldTerm{-1.0, SpaceProfile::make_polynomial({0.0, 1.0}),
                                TimeProfile::make_gaussian(1.0, 0.0, 2.0), 1});
    double x = 0.8, t = 1.1;
    double g = std::exp(-t * t / 4.0);
    double gp = -t / 2.0 * g;
    double gpp = (t * t / 4.0 - 0.5) * g;
    CHECK(f.value(x, t) ==
          doctest::Approx(2.0 * x * x * std::sin(1.5 * t) - x * gp).epsilon(1e-12));
    CHECK(f.dx(x, t) == doctest::Approx(4.0 * x * std::sin(1.5 * t) - gp).epsilon(1e-12));
    CHECK(f.dt(x, t) ==
          doctest::Approx(3.0 * x * x * std::cos(1.5 * t) - x * gpp).epsilon(1e-12));
    CHECK(!f.spatially_uniform());
}

TEST_CASE("drives evaluate derivative terms analytically") {
    Drive d;
    d.terms.push_back(DriveTerm{-1.0, TimeProfile::make_sin2_pulse(0.01, 0.148, 0.0, 0.0, 40.0), 1});
    auto p = d.terms[0].time;
    for (double t : {3.0, 11.0, 25.0}) {
        CHECK(d.value(t) == doctest::Approx(-p.d1(t)));
        CHECK(d.d1(t) == doctest::Approx(-p.d2(t)));
    }
    Drive dd = d.derivative();
    CHECK(dd.terms[0].t_deriv == 2);
}

TEST_CASE("static terms are recognized") {
    CHECK(is_static_time_term(TimeProfile::make_constant(2.0), 0));
    CHECK(is_static_time_term(TimeProfile::make_linear(0.0, 1.0), 1));
    CHECK(!is_static_time_term(TimeProfile::make_linear(0.0, 1.0), 0));
    CHECK(!is_static_time_term(TimeProfile::make_sinusoid(1.0, 1.0), 0));
}
