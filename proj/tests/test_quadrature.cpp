#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splinewidth/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace splinewidth;

TEST_CASE("one-point rule is the midpoint rule") {
    const GaussRule g = gauss_legendre(1);
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.nodes[0] == doctest::Approx(0.0));
    CHECK(g.weights[0] == doctest::Approx(2.0));
}

TEST_CASE("two-point rule has nodes at +-1/sqrt(3)") {
    const GaussRule g = gauss_legendre(2);
    REQUIRE(g.nodes.size() == 2);
    CHECK(g.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g.weights[0] == doctest::Approx(1.0));
    CHECK(g.weights[1] == doctest::Approx(1.0));
}

TEST_CASE("three-point rule matches the closed form") {
    const GaussRule g = gauss_legendre(3);
    REQUIRE(g.nodes.size() == 3);
    CHECK(g.nodes[0] == doctest::Approx(-std::sqrt(3.0 / 5.0)).epsilon(1e-15));
    CHECK(g.nodes[1] == doctest::Approx(0.0));
    CHECK(g.nodes[2] == doctest::Approx(std::sqrt(3.0 / 5.0)).epsilon(1e-15));
    CHECK(g.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(g.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK(g.weights[2] == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("weights sum to the reference length for every order") {
    for (std::size_t m : {1u, 2u, 5u, 16u, 33u, 64u}) {
        const GaussRule g = gauss_legendre(m);
        double sum = 0.0;
        for (double w : g.weights) sum += w;
        CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("order bounds are enforced") {
    CHECK_THROWS(gauss_legendre(0));
    CHECK_THROWS(gauss_legendre(65));
}

TEST_CASE("m-point rule integrates monomials of degree 2m-1 exactly") {
    for (std::size_t m : {1u, 2u, 3u, 4u, 7u, 12u}) {
        const QuadratureRule rule({0.0, 1.0}, m);
        const double d = 2.0 * static_cast<double>(m) - 1.0;
        const double got = rule.integrate([&](double x) { return std::pow(x, d); });
        CHECK(got == doctest::Approx(1.0 / (d + 1.0)).epsilon(1e-14));
        CHECK(rule.integrate([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("composite rule converges super-exponentially on sin(pi x)") {
    std::vector<double> bounds;
    const std::size_t elements = 16;
    for (std::size_t i = 0; i <= elements; ++i)
        bounds.push_back(static_cast<double>(i) / static_cast<double>(elements));
    const QuadratureRule rule(bounds, 10);
    const double got = rule.integrate([](double x) { return std::sin(std::numbers::pi * x); });
    CHECK(got == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("integrate_samples matches integrate") {
    const QuadratureRule rule({0.0, 0.3, 1.0}, 4);
    std::vector<double> samples;
    for (double x : rule.points()) samples.push_back(x * x + 1.0);
    const double direct = rule.integrate([](double x) { return x * x + 1.0; });
    CHECK(rule.integrate_samples(samples) == doctest::Approx(direct).epsilon(1e-15));
    CHECK(direct == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("element boundaries split the integral without loss") {
    // integrand with a kink exactly at the internal boundary
    const QuadratureRule rule({0.0, 0.5, 1.0}, 6);
    const double got = rule.integrate([](double x) { return std::abs(x - 0.5); });
    CHECK(got == doctest::Approx(0.25).epsilon(1e-14));
}
