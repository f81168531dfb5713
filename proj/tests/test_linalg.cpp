#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splinewidth/linalg.hpp"

#include <cmath>
#include <vector>

using namespace splinewidth;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

}  // namespace

TEST_CASE("cholesky of the identity is the identity") {
    const Matrix l = cholesky(Matrix::identity(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(l(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("cholesky factor reproduces the input") {
    const Matrix a = from_rows({{4, 2, 1}, {2, 5, 3}, {1, 3, 6}});
    const Matrix l = cholesky(a);
    const Matrix back = l * l.transposed();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(back(i, j) == doctest::Approx(a(i, j)).epsilon(1e-14));
}

TEST_CASE("cholesky rejects indefinite input naming the pivot") {
    const Matrix a = from_rows({{1, 2}, {2, 1}});
    CHECK_THROWS_WITH_AS(cholesky(a), "not positive definite at pivot 1", std::runtime_error);
}

TEST_CASE("solve_spd solves a known system") {
    const Matrix a = from_rows({{4, 1}, {1, 3}});
    const auto x = solve_spd(a, {1.0, 2.0});
    CHECK(4 * x[0] + x[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[0] + 3 * x[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("lu_solve handles an indefinite saddle system") {
    // [[0, 1], [1, 0]] forces pivoting
    const Matrix a = from_rows({{0, 1}, {1, 0}});
    const auto x = lu_solve(a, {3.0, 5.0});
    CHECK(x[0] == doctest::Approx(5.0));
    CHECK(x[1] == doctest::Approx(3.0));
}

TEST_CASE("sym_eig of a diagonal matrix sorts ascending") {
    Matrix a(3, 3);
    a(0, 0) = 3;
    a(1, 1) = 1;
    a(2, 2) = 2;
    const SymEigResult r = sym_eig(a);
    REQUIRE(r.converged);
    CHECK(r.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(r.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(r.eigenvalues[2] == doctest::Approx(3.0));
}

TEST_CASE("sym_eig matches the characteristic polynomial on a 3x3 tridiagonal") {
    // eigenvalues of tridiag(1, 2, 1) are 2 - sqrt(2), 2, 2 + sqrt(2)
    const Matrix a = from_rows({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
    const SymEigResult r = sym_eig(a);
    CHECK(r.eigenvalues[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-13));
    CHECK(r.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.eigenvalues[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-13));
    // eigenvectors orthonormal and satisfy A v = lambda v
    for (std::size_t j = 0; j < 3; ++j) {
        const auto v = r.eigenvectors.col(j);
        CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-12));
        const auto av = a * v;
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(av[i] == doctest::Approx(r.eigenvalues[j] * v[i]).epsilon(1e-10));
    }
}

TEST_CASE("sym_eig rejects asymmetric input") {
    const Matrix a = from_rows({{1, 2}, {0, 1}});
    CHECK_THROWS_WITH(sym_eig(a), "sym_eig: input not symmetric");
}

TEST_CASE("gen_sym_eig with diagonal matrices is the entrywise quotient") {
    const Matrix a = from_rows({{2, 0}, {0, 2}});
    const Matrix b = from_rows({{1, 0}, {0, 4}});
    const SymEigResult r = gen_sym_eig(a, b);
    CHECK(r.eigenvalues[0] == doctest::Approx(0.5));
    CHECK(r.eigenvalues[1] == doctest::Approx(2.0));
}

TEST_CASE("gen_sym_eig eigenvectors are B-orthonormal and scale with A") {
    const Matrix a = from_rows({{3, 1}, {1, 2}});
    const Matrix b = from_rows({{2, 0.5}, {0.5, 1}});
    const SymEigResult r = gen_sym_eig(a, b);
    for (std::size_t i = 0; i < 2; ++i) {
        const auto vi = r.eigenvectors.col(i);
        for (std::size_t j = 0; j < 2; ++j) {
            const auto bv = b * r.eigenvectors.col(j);
            CHECK(dot(vi, bv) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
    Matrix a5 = a;
    for (double& v : a5.data()) v *= 5.0;
    const SymEigResult r5 = gen_sym_eig(a5, b);
    CHECK(r5.eigenvalues[0] == doctest::Approx(5.0 * r.eigenvalues[0]).epsilon(1e-12));
    CHECK(r5.eigenvalues[1] == doctest::Approx(5.0 * r.eigenvalues[1]).epsilon(1e-12));
}

TEST_CASE("power_iteration finds the dominant eigenvalue") {
    Matrix a(3, 3);
    a(0, 0) = 1;
    a(1, 1) = 2;
    a(2, 2) = 5;
    const auto apply = [&](const std::vector<double>& x, std::vector<double>& y) { y = a * x; };
    const PowerIterationResult r = power_iteration(apply, 3, 1e-12, 1000, 42);
    CHECK(r.converged);
    CHECK(r.eigenvalue == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("null_space returns an orthonormal basis annihilated by the constraints") {
    const Matrix c = from_rows({{1, 1, 0}, {2, 2, 0}});  // rank 1
    const Matrix n = null_space(c);
    REQUIRE(n.rows() == 2);
    REQUIRE(n.cols() == 3);
    for (std::size_t i = 0; i < n.rows(); ++i) {
        const auto vi = n.row(i);
        CHECK(std::abs(vi[0] + vi[1]) < 1e-13);  // orthogonal to (1,1,0)
        for (std::size_t j = 0; j < n.rows(); ++j)
            CHECK(dot(vi, n.row(j)) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
    }
}

TEST_CASE("null_space of an empty constraint set spans everything") {
    const Matrix n = null_space(Matrix(0, 4));
    CHECK(n.rows() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(dot(n.row(i), n.row(j)) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
}
