#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splinewidth/space.hpp"

#include <cmath>

using namespace splinewidth;

TEST_CASE("periodic space of maximal smoothness has dimension n") {
    for (std::size_t n : {4u, 7u, 10u}) {
        const BreakSequence b = make_uniform_breaks(n, 0.0, 1.0);
        for (int p = 1; p <= 5; ++p) {
            const SplineSpace s = build_subspace(b, p, p - 1, ConstraintFamily::periodic(0));
            CHECK(s.dim() == n);
        }
    }
}

TEST_CASE("boundary-constrained spaces on the matching optimal breaks have dimension n") {
    for (int i : {0, 1, 2}) {
        for (int p = 2; p <= 5; ++p) {
            for (std::size_t n : {3u, 5u}) {
                const BreakSequence b = make_special_breaks(p, i, n);
                const SplineSpace s = build_subspace(b, p, p - 1, ConstraintFamily::boundary(i));
                CHECK(s.dim() == n);
            }
        }
    }
}

TEST_CASE("reduced space drops two odd-derivative constraint pairs relative to the even-pattern space") {
    // dim of the maximal-smoothness raw space is N + 1 + p; the reduced family
    // imposes 2*floor((p-1)/2) constraints, leaving N + 2 for odd p >= 3 on
    // uniform breaks (N+1 intervals).
    const std::size_t n = 6;
    const BreakSequence b = make_uniform_breaks(n, 0.0, 1.0);
    for (int p : {3, 5, 7}) {
        const SplineSpace s = build_subspace(b, p, p - 1, ConstraintFamily::reduced_odd());
        CHECK(s.dim() == n + 1);  // (n + p) - (p - 1) = n + 1
    }
}

TEST_CASE("every subspace basis function satisfies its constraints") {
    const BreakSequence b = make_random_perturbed_breaks(6, 0.03, 17, 0.0, 1.0);
    const std::vector<ConstraintFamily> families = {
        ConstraintFamily::periodic(0), ConstraintFamily::even_zero(),
        ConstraintFamily::odd_zero(),  ConstraintFamily::mixed(),
        ConstraintFamily::reduced_odd()};
    for (const auto& fam : families) {
        for (int p : {3, 4}) {
            const SplineSpace s = build_subspace(b, p, p - 1, fam);
            ConstraintFamily resolved = fam;
            if (resolved.tag == ConstraintFamily::Tag::Periodic) resolved.order = p;
            const Matrix c = resolved.rows(s.knotvec());
            for (std::size_t i = 0; i < s.dim(); ++i) {
                std::vector<double> e(s.dim(), 0.0);
                e[i] = 1.0;
                const auto raw = s.raw_coeffs(e);
                for (std::size_t r = 0; r < c.rows(); ++r)
                    CHECK(std::abs(dot(c.row(r), raw)) < 1e-10);
            }
        }
    }
}

TEST_CASE("subspace coordinates round trip through raw coefficients") {
    const BreakSequence b = make_uniform_breaks(5, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 3, 2, ConstraintFamily::even_zero());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::vector<double> e(s.dim(), 0.0);
        e[i] = 1.0;
        const auto back = s.sub_coeffs(s.raw_coeffs(e));
        for (std::size_t j = 0; j < s.dim(); ++j)
            CHECK(back[j] == doctest::Approx(e[j]).epsilon(1e-13));
    }
}

TEST_CASE("family names parse back to themselves") {
    const std::vector<std::string> names = {"full",  "periodic(3)", "even_zero",
                                            "odd_zero", "mixed",    "reduced_odd"};
    for (const auto& n : names) CHECK(ConstraintFamily::parse(n).name() == n);
    CHECK(ConstraintFamily::parse("boundary0").name() == "even_zero");
    CHECK(ConstraintFamily::parse("boundary1").name() == "odd_zero");
    CHECK(ConstraintFamily::parse("boundary2").name() == "mixed");
    CHECK_THROWS(ConstraintFamily::parse("diagonal"));
}

TEST_CASE("space description round trips through json") {
    const BreakSequence b = make_random_perturbed_breaks(4, 0.02, 5, 0.0, 1.0);
    const SplineSpace s = build_subspace(b, 3, 2, ConstraintFamily::mixed());
    const SplineSpace t = SplineSpace::from_json(s.to_json());
    CHECK(t.dim() == s.dim());
    CHECK(t.degree() == 3);
    CHECK(t.smoothness() == 2);
    for (std::size_t i = 0; i < b.points().size(); ++i)
        CHECK(t.breaks().points()[i] == b.points()[i]);
}

TEST_CASE("a family that annihilates the whole space is rejected") {
    // p=0 on a single interval holds only constants; forcing the value to
    // vanish at both ends leaves nothing.
    const BreakSequence b = make_uniform_breaks(1, 0.0, 1.0);
    CHECK_THROWS(build_subspace(b, 0, -1, ConstraintFamily::even_zero()));
}
