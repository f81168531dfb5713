#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splinewidth/bspline.hpp"
#include "splinewidth/linalg.hpp"

#include <cmath>
#include <numeric>

using namespace splinewidth;

TEST_CASE("basis count follows the dimension law") {
    const BreakSequence b = make_uniform_breaks(5, 0.0, 1.0);
    for (int p = 0; p <= 6; ++p) {
        for (int k = -1; k <= p - 1; ++k) {
            const ExtendedKnotVector kv(b, p, k);
            const std::size_t expected = 5 * static_cast<std::size_t>(p - k) +
                                         static_cast<std::size_t>(k) + 1;
            CHECK(kv.dim() == expected);
        }
    }
}

TEST_CASE("degree zero basis is the interval indicator") {
    const BreakSequence b = make_uniform_breaks(4, 0.0, 1.0);
    const ExtendedKnotVector kv(b, 0, -1);
    REQUIRE(kv.dim() == 4);
    const auto v = kv.eval_all(0.6, 0);  // third interval
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == 1.0);
    CHECK(v[3] == 0.0);
}

TEST_CASE("raw values form a partition of unity") {
    const BreakSequence b = make_random_perturbed_breaks(7, 0.04, 11, 0.0, 1.0);
    for (int p : {1, 2, 3, 5, 8}) {
        for (int k : {0, p - 1}) {
            const ExtendedKnotVector kv(b, p, k);
            for (double x : {0.0, 0.123, 0.5, 0.87, 1.0}) {
                const auto v = kv.eval_all(x, 0);
                const double sum = std::accumulate(v.begin(), v.end(), 0.0);
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("derivatives at an interior break match the symbolic piecewise polynomials") {
    // p=2, C^1, breaks {0, 1/2, 1}: the four basis functions are
    //   (1-2x)^2, and its mirror (2x-1)^2 on [1/2,1], plus the two interior ones.
    // At x = 1/2 the first derivatives are (0, -2, 2, 0).
    const BreakSequence b = make_uniform_breaks(2, 0.0, 1.0);
    const ExtendedKnotVector kv(b, 2, 1);
    REQUIRE(kv.dim() == 4);
    const auto d = kv.eval_all(0.5, 1);
    CHECK(d[0] == doctest::Approx(0.0));
    CHECK(d[1] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(d[2] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(d[3] == doctest::Approx(0.0));
}

TEST_CASE("derivatives agree with a high-order finite difference") {
    const BreakSequence b = make_uniform_breaks(3, 0.0, 1.0);
    const ExtendedKnotVector kv(b, 4, 3);
    const double x = 0.4321, eps = 1e-5;
    const auto up = kv.eval_all(x + eps, 0);
    const auto dn = kv.eval_all(x - eps, 0);
    const auto d = kv.eval_all(x, 1);
    for (std::size_t j = 0; j < kv.dim(); ++j) {
        const double fd = (up[j] - dn[j]) / (2.0 * eps);
        CHECK(d[j] == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("endpoint functionals at order zero pick out the clamped end coefficients") {
    const BreakSequence b = make_uniform_breaks(3, 0.0, 1.0);
    const ExtendedKnotVector kv(b, 3, 2);
    const auto l = kv.endpoint_functional(0, true);
    const auto r = kv.endpoint_functional(0, false);
    CHECK(l.front() == doctest::Approx(1.0));
    CHECK(r.back() == doctest::Approx(1.0));
    for (std::size_t j = 1; j < kv.dim(); ++j) CHECK(l[j] == doctest::Approx(0.0));
    for (std::size_t j = 0; j + 1 < kv.dim(); ++j) CHECK(r[j] == doctest::Approx(0.0));
}

TEST_CASE("first-derivative functional at the left end matches the symbolic slope") {
    // First basis function on {0, 1/2, 1} with p=2 is (1-2x)^2, slope -4 at 0;
    // the second has slope +4 there, the rest vanish.
    const BreakSequence b = make_uniform_breaks(2, 0.0, 1.0);
    const ExtendedKnotVector kv(b, 2, 1);
    const auto f = kv.endpoint_functional(1, true);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(f[1] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(f[2] == doctest::Approx(0.0));
    CHECK(f[3] == doctest::Approx(0.0));
}

TEST_CASE("endpoint functional rejects orders beyond the degree") {
    const BreakSequence b = make_uniform_breaks(2, 0.0, 1.0);
    const ExtendedKnotVector kv(b, 2, 1);
    CHECK_THROWS(kv.endpoint_functional(3, true));
}

TEST_CASE("running integral of the constant one is x") {
    const BreakSequence b = make_random_perturbed_breaks(5, 0.03, 3, 0.0, 1.0);
    const ExtendedKnotVector kv(b, 2, 1);
    std::vector<double> ones;
    // coefficients of s == 1 via partition of unity
    ones.assign(kv.dim(), 1.0);
    const auto integ = antidifferentiate(kv, ones);
    const ExtendedKnotVector up(b, 3, 2);
    REQUIRE(integ.size() == up.dim());
    for (double x : {0.0, 0.2, 0.55, 0.9, 1.0}) {
        const auto v = up.eval_all(x, 0);
        CHECK(splinewidth::dot(integ, v) == doctest::Approx(x).epsilon(1e-13));
    }
}

TEST_CASE("differentiation inverts antidifferentiation") {
    const BreakSequence b = make_uniform_breaks(4, 0.0, 1.0);
    const ExtendedKnotVector kv(b, 3, 2);
    std::vector<double> coeffs(kv.dim());
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        coeffs[j] = std::sin(1.7 * static_cast<double>(j) + 0.3);
    const auto integ = antidifferentiate(kv, coeffs);
    const ExtendedKnotVector up(b, 4, 3);
    const auto back = differentiate(up, integ);
    REQUIRE(back.size() == coeffs.size());
    for (double x : {0.05, 0.31, 0.62, 0.97}) {
        const auto v = kv.eval_all(x, 0);
        CHECK(splinewidth::dot(back, v) == doctest::Approx(splinewidth::dot(coeffs, v)).epsilon(1e-12));
    }
}

TEST_CASE("derivative coefficients evaluate to the pointwise derivative") {
    const BreakSequence b = make_uniform_breaks(3, 0.0, 1.0);
    const ExtendedKnotVector kv(b, 4, 3);
    std::vector<double> coeffs(kv.dim());
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        coeffs[j] = 0.2 * static_cast<double>(j * j) - static_cast<double>(j);
    const auto dc = differentiate(kv, coeffs);
    const ExtendedKnotVector lo(b, 3, 2);
    REQUIRE(dc.size() == lo.dim());
    for (double x : {0.11, 0.47, 0.83}) {
        const auto v1 = kv.eval_all(x, 1);
        const auto v0 = lo.eval_all(x, 0);
        CHECK(splinewidth::dot(dc, v0) == doctest::Approx(splinewidth::dot(coeffs, v1)).epsilon(1e-11));
    }
}
