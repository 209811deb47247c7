#include <doctest.h>

#include <cmath>

#include "tscalc/quadrature.hpp"

using namespace tscalc;

TEST_CASE("adaptive simpson on smooth integrands") {
    CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(adaptive_simpson([](double x) { return std::exp(x); }, -1.0, 2.0) ==
          doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-10));
    CHECK(adaptive_simpson([](double) { return 4.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("adaptive simpson handles constants in one pass") {
    std::size_t evals = 0;
    auto v = adaptive_simpson(
        [&](double) {
            ++evals;
            return 3.5;
        },
        0.0, 1.0);
    CHECK(v == doctest::Approx(3.5));
    CHECK(evals <= 9);
}

TEST_CASE("adaptive simpson reports budget exhaustion") {
    CHECK_THROWS_AS(
        adaptive_simpson([](double x) { return std::exp(10.0 * x); }, 0.0, 1.0, 1e-300, 4),
        QuadratureNoConvergence);
}

TEST_CASE("gauss-legendre nodes match published values") {
    const auto& rule = gauss_legendre_15();
    REQUIRE(rule.size() == 15);
    double wsum = 0.0;
    for (const auto& n : rule) wsum += n.w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    double xmax = 0.0, wmax = 0.0;
    for (const auto& n : rule)
        if (n.x > xmax) {
            xmax = n.x;
            wmax = n.w;
        }
    CHECK(xmax == doctest::Approx(0.9879925180204854).epsilon(1e-13));
    CHECK(wmax == doctest::Approx(0.0307532419961173).epsilon(1e-12));
    // Symmetry of nodes about zero.
    for (const auto& n : rule) {
        bool mirrored = false;
        for (const auto& m : rule)
            if (std::abs(m.x + n.x) < 1e-13 && std::abs(m.w - n.w) < 1e-13) mirrored = true;
        CHECK(mirrored);
    }
}

TEST_CASE("a single 15-point panel is exact through degree 29") {
    const auto& rule = gauss_legendre_15();
    double acc = 0.0;
    for (const auto& n : rule) acc += n.w * std::pow(n.x, 28);
    CHECK(acc == doctest::Approx(2.0 / 29.0).epsilon(1e-12));
}

TEST_CASE("panel-doubling integration converges on smooth functions") {
    CHECK(integrate_smooth([](double x) { return std::exp(x); }, 0.0, 1.0) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    CHECK(integrate_smooth([](double x) { return std::sin(10.0 * x); }, 0.0, M_PI) ==
          doctest::Approx((1.0 - std::cos(10.0 * M_PI)) / 10.0).epsilon(1e-10));
    CHECK(integrate_smooth([](double) { return 1.0; }, 0.0, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("pairwise summation is deterministic and accurate") {
    std::vector<double> terms;
    for (int i = 1; i <= 10000; ++i) terms.push_back(1.0 / (i * double(i)));
    const double s1 = pairwise_sum(terms);
    const double s2 = pairwise_sum(terms);
    CHECK(s1 == s2);
    CHECK(s1 == doctest::Approx(1.6448340718480652).epsilon(1e-12));
    CHECK(pairwise_sum({}) == 0.0);
    CHECK(pairwise_sum({4.25}) == 4.25);
}
