#include <doctest.h>

#include <cmath>

#include "tscalc/catalog.hpp"
#include "tscalc/derivative.hpp"
#include "tscalc/special.hpp"

using namespace tscalc;

namespace {

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("on the real line the lattice trig functions are the classical ones") {
    auto r = TimeScale::reals();
    CHECK(ts_sin(r, M_PI_2) == std::sin(M_PI_2));
    CHECK(ts_cos(r, 0.0) == 1.0);
    CHECK(ts_sinh(r, 0.0) == 0.0);
    CHECK(ts_cosh(r, 0.0) == 1.0);
    for (double t : {-2.0, 0.3, 1.7}) {
        CHECK(ts_sin(r, t) == std::sin(t));
        CHECK(ts_cos(r, t) == std::cos(t));
        CHECK(ts_sinh(r, t) == std::sinh(t));
        CHECK(ts_cosh(r, t) == std::cosh(t));
    }
}

TEST_CASE("unit-lattice values match high-precision references") {
    auto z = TimeScale::parse_spec("Z");
    CHECK(ts_sin(z, 0.0) == doctest::Approx(0.45969769413186028).epsilon(1e-15));
    CHECK(ts_cos(z, 0.0) == doctest::Approx(0.84147098480789651).epsilon(1e-15));
    CHECK(ts_sinh(z, 0.0) == doctest::Approx(0.54308063481524378).epsilon(1e-15));
    CHECK(ts_cosh(z, 0.0) == doctest::Approx(1.1752011936438015).epsilon(1e-15));

    CHECK(ts_sin_at(2.0, 2.0) == doctest::Approx(0.11874839215823476).epsilon(1e-14));
    CHECK(ts_cos_at(2.0, 2.0) == doctest::Approx(-0.83304996106680497).epsilon(1e-14));
    CHECK(ts_sinh_at(2.0, 2.0) == doctest::Approx(11.773018572466428).epsilon(1e-14));
    CHECK(ts_cosh_at(2.0, 2.0) == doctest::Approx(11.831528394640367).epsilon(1e-14));
}

TEST_CASE("the four functions are the table's trig and hyperbolic rows") {
    const CatalogParams unit{1.0, 0.0, 1};
    for (double t : {0.0, 0.5, 2.0, 5.0})
        for (double mu : {0.0, 0.25, 1.0, 2.0}) {
            CAPTURE(t);
            CAPTURE(mu);
            CHECK(rel_close(ts_cos_at(t, mu), eval_delta("T01", {}, t, mu), 1e-12));
            CHECK(rel_close(ts_sin_at(t, mu), -eval_delta("T02", {}, t, mu), 1e-12));
            CHECK(rel_close(ts_cosh_at(t, mu), eval_delta("H01", unit, t, mu), 1e-12));
            CHECK(rel_close(ts_sinh_at(t, mu), eval_delta("H02", unit, t, mu), 1e-12));
        }
}

TEST_CASE("derivative linkage: sin goes to ts_cos, cosh to ts_sinh") {
    const RealFunction fsin{[](double x) { return std::sin(x); },
                            [](double x) { return std::cos(x); }};
    const RealFunction fcos{[](double x) { return std::cos(x); },
                            [](double x) { return -std::sin(x); }};
    const RealFunction fsinh{[](double x) { return std::sinh(x); },
                             [](double x) { return std::cosh(x); }};
    const RealFunction fcosh{[](double x) { return std::cosh(x); },
                             [](double x) { return std::sinh(x); }};
    for (const char* spec : {"R", "Z", "hZ:0.5", "q:2", "union:[0,1]+{2}+[3,4]"}) {
        auto ts = TimeScale::parse_spec(spec);
        const double lo = std::max(ts.infimum(), 0.0);
        const double hi = std::min(ts.supremum(), 8.0);
        for (double t : ts.sample(lo, hi, 0.5)) {
            if (!ts.in_kappa(t)) continue;
            CAPTURE(spec);
            CAPTURE(t);
            CHECK(rel_close(delta_derivative(ts, fsin, t).value, ts_cos(ts, t), 1e-12));
            CHECK(rel_close(delta_derivative(ts, fcos, t).value, -ts_sin(ts, t), 1e-12));
            CHECK(rel_close(delta_derivative(ts, fsinh, t).value, ts_cosh(ts, t), 1e-12));
            CHECK(rel_close(delta_derivative(ts, fcosh, t).value, ts_sinh(ts, t), 1e-12));
        }
    }
}

TEST_CASE("pythagorean defect: closed right side, tiny gap") {
    auto r = TimeScale::reals();
    auto on_r = pythagorean_defect(r, 1.3);
    CHECK(on_r.rhs == 1.0);
    CHECK(on_r.gap <= 1e-15);

    auto z = TimeScale::parse_spec("Z");
    auto at0 = pythagorean_defect(z, 0.0);
    CHECK(at0.rhs == doctest::Approx(0.91939538826372057).epsilon(1e-15));
    CHECK(at0.lhs == doctest::Approx(0.91939538826372057).epsilon(1e-14));
    CHECK(at0.gap <= 1e-12);

    auto h = TimeScale::parse_spec("hZ:0.5");
    auto at1 = pythagorean_defect(h, 1.0);
    CHECK(at1.rhs == doctest::Approx(0.97933950487701827).epsilon(1e-14));
    CHECK(at1.gap <= 1e-12);

    for (double t : {-4.0, -1.0, 0.0, 2.0, 5.0}) {
        CHECK(pythagorean_defect(z, t).gap <= 1e-12);
        CHECK(pythagorean_defect(z, t).rhs == at0.rhs);  // depends on mu only
    }
}

TEST_CASE("hyperbolic defect: closed right side, growth-aware gap") {
    auto r = TimeScale::reals();
    auto on_r = hyperbolic_defect(r, -0.7);
    CHECK(on_r.rhs == 1.0);
    CHECK(on_r.gap <= 1e-12);

    auto z = TimeScale::parse_spec("Z");
    auto at0 = hyperbolic_defect(z, 0.0);
    CHECK(at0.rhs == doctest::Approx(1.0861612696304876).epsilon(1e-15));
    CHECK(at0.gap <= 1e-12);

    auto at5 = hyperbolic_defect(z, 5.0);
    CHECK(at5.rhs == at0.rhs);
    CHECK(at5.gap <= 1e-9);

    auto h = TimeScale::parse_spec("hZ:0.5");
    CHECK(hyperbolic_defect(h, 1.0).rhs == doctest::Approx(1.0210077216510463).epsilon(1e-14));

    for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) CHECK(hyperbolic_defect(h, t).gap <= 1e-12);
}

TEST_CASE("outside the scale the special functions refuse to evaluate") {
    auto z = TimeScale::parse_spec("Z");
    CHECK_THROWS_AS(ts_sin(z, 0.5), PointNotInScale);
    CHECK_THROWS_AS(pythagorean_defect(z, 0.5), PointNotInScale);
    CHECK_THROWS_AS(ts_sinh_at(900.0, 0.0), NonFiniteValue);
}

TEST_CASE("at the supremum of a bounded scale the limit branch applies") {
    auto s = TimeScale::parse_spec("set:{0,1,2}");
    CHECK(ts_sin(s, 2.0) == std::sin(2.0));
    CHECK(pythagorean_defect(s, 2.0).rhs == 1.0);
}
