#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splinewidth/spectral.hpp"

#include "splinewidth/projection.hpp"

#include <cmath>
#include <numbers>

using namespace splinewidth;

TEST_CASE("exact periodic eigenvalues come in squared pairs") {
    CHECK(exact_periodic_eigenvalue(0) == 0.0);
    const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    CHECK(exact_periodic_eigenvalue(1) == doctest::Approx(four_pi_sq));
    CHECK(exact_periodic_eigenvalue(2) == doctest::Approx(four_pi_sq));
    CHECK(exact_periodic_eigenvalue(3) == doctest::Approx(4.0 * four_pi_sq));
    CHECK(exact_periodic_eigenvalue(4) == doctest::Approx(4.0 * four_pi_sq));
}

TEST_CASE("two periodic hat functions give the hand-assembled spectrum") {
    // stiffness/mass of the two-dimensional periodic broken-line space on
    // {0, 1/2, 1} reduce to eigenvalues 0 and 48
    const BreakSequence b = make_uniform_breaks(2, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 1, 0, ConstraintFamily::periodic(0));
    REQUIRE(s.dim() == 2);
    const SpectrumResult r = laplace_spectrum(s);
    CHECK(std::abs(r.nu_h[0]) < 1e-10);
    CHECK(r.nu_h[1] == doctest::Approx(48.0).epsilon(1e-12));
}

TEST_CASE("the constant mode sits at zero and the spectrum is nonnegative") {
    const BreakSequence b = make_uniform_breaks(9, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 3, 2, ConstraintFamily::periodic(0));
    const SpectrumResult r = laplace_spectrum(s);
    REQUIRE(r.nu_h.size() == s.dim());
    CHECK(std::abs(r.nu_h[0]) <= 1e-8 * r.nu_h[1]);
    for (double v : r.nu_h) CHECK(v >= -1e-10);
}

TEST_CASE("smooth cubic spectra resolve the low end to high accuracy") {
    const BreakSequence b = make_uniform_breaks(50, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 3, 2, ConstraintFamily::periodic(0));
    const SpectrumResult r = laplace_spectrum(s);
    for (std::size_t j = 1; j <= 10; ++j) CHECK(std::abs(r.rel_err[j]) < 1e-5);
    for (std::size_t j = 1; j <= 6; ++j) CHECK(std::abs(r.rel_err[j]) < 1e-6);
}

TEST_CASE("maximally smooth spaces under short periodicity show the expected outlier counts") {
    const std::size_t n = 50;
    const BreakSequence b = make_uniform_breaks(n, 0.0, 1.0);
    struct Case { int p, k; std::size_t outliers; };
    for (const Case c : {Case{3, 0, 2}, Case{3, 1, 1}, Case{3, 2, 0}}) {
        const SplineSpace s = build_subspace(b, c.p, c.p - 1, ConstraintFamily::periodic(c.k + 1));
        CHECK(s.dim() == n + static_cast<std::size_t>(c.p - c.k) - 1);
        const OutlierReport rep = outlier_report(s);
        CHECK(rep.count == c.outliers);
    }
}

TEST_CASE("low-smoothness periodic spaces split into the expected branch count") {
    const std::size_t n = 100;
    const BreakSequence b = make_uniform_breaks(n, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 3, 1, ConstraintFamily::periodic(2));
    REQUIRE(s.dim() == 200);
    const BranchProfile prof = branch_profile(s, n);
    CHECK(prof.branches == 2);
    CHECK(prof.abscissa.size() == prof.rel_err.size());
    CHECK(prof.abscissa.back() > 0.9);
    CHECK(prof.abscissa.back() <= 1.0);
}

TEST_CASE("discrete eigenfunction pairs align with the exact trigonometric pair") {
    const BreakSequence b = make_uniform_breaks(20, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 4, 3, ConstraintFamily::periodic(0));
    const EigfunctionError e = galerkin_eigfunction_error(s, 1);
    CHECK(e.cluster_ok);
    CHECK(e.angle < 1e-6);
}

TEST_CASE("eigenfunction alignment improves with the degree") {
    const BreakSequence b = make_uniform_breaks(11, 0.0, 1.0);
    double prev = 1e9;
    for (int p : {2, 4, 6}) {
        const SplineSpace s = build_subspace(b, p, p - 1, ConstraintFamily::periodic(0));
        const EigfunctionError e = galerkin_eigfunction_error(s, 2);
        if (prev > 1e-11)  // stop comparing once at roundoff level
            CHECK(e.angle <= prev * 1.01);
        prev = e.angle;
    }
}

TEST_CASE("piecewise constants on 2m intervals are orthogonal to the m-th cosine") {
    // each interval covers a full half-period, so every elementwise integral
    // of cos(2 pi m x) vanishes
    const std::size_t m = 3;
    const BreakSequence b = make_uniform_breaks(2 * m, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 0, -1, ConstraintFamily::full());
    const auto load = load_vector(s, [&](double x) { return std::cos(2.0 * std::numbers::pi * 3.0 * x); });
    for (double v : load) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("hat functions on 2m intervals are orthogonal to the m-th sine") {
    const std::size_t m = 4;
    const BreakSequence b = make_uniform_breaks(2 * m, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 1, 0, ConstraintFamily::full());
    const auto load = load_vector(s, [&](double x) { return std::sin(2.0 * std::numbers::pi * 4.0 * x); });
    // interior hats are even about their peak while the sine is odd there;
    // the two half-support boundary hats carry the leftover 1/(8 pi)
    for (std::size_t i = 1; i + 1 < load.size(); ++i) CHECK(std::abs(load[i]) < 1e-13);
}

TEST_CASE("the alternating-parity error table decreases with the degree") {
    const auto rows = conjecture_explorer(5, 1, {2, 3, 4, 5, 6, 7});
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].error < rows[i - 1].error);
}

TEST_CASE("broken lines on a single interval attain the derivative ratio sqrt(3) exactly") {
    // sup ||s'||/||s|| over degree-1 splines on one interval of length h is
    // sqrt(12)/h / 2 = sqrt(3)/h; half the stated bound
    const BreakSequence b = make_uniform_breaks(1, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 1, 0, ConstraintFamily::full());
    const InverseInequalityReport rep = inverse_report(s);
    CHECK(rep.ratio * rep.ratio == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(rep.bound == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(rep.slack >= 1.0 - 1e-12);
}

TEST_CASE("the derivative bound holds on random knots for the conforming families") {
    for (unsigned seed : {1u, 2u, 3u}) {
        const BreakSequence b = make_random_perturbed_breaks(8, 0.04, seed, 0.0, 1.0);
        for (int p : {2, 3, 4}) {
            const SplineSpace s = build_subspace(b, p, p - 1, ConstraintFamily::even_zero());
            const InverseInequalityReport rep = inverse_report(s);
            CHECK(rep.slack >= 1.0 - 1e-12);
        }
        const SplineSpace sper = build_subspace(b, 3, 2, ConstraintFamily::periodic(0));
        CHECK(inverse_report(sper).slack >= 1.0 - 1e-12);
    }
}
