#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace splinewidth {

/// Dense row-major matrix of doubles. Desk-scale (dims <= ~600), so no
/// banded or sparse storage anywhere in this project.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const;
    Matrix operator*(const Matrix& other) const;
    std::vector<double> operator*(const std::vector<double>& x) const;

    std::vector<double> row(std::size_t i) const;
    std::vector<double> col(std::size_t j) const;

    /// Frobenius norm.
    double norm() const;
    /// max_{ij} |A_ij - A_ji|
    double asymmetry() const;

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y);
void scale(std::vector<double>& x, double alpha);

struct SymEigResult {
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // columns, (B-)orthonormal
    bool converged = true;
};

/// Lower-triangular Cholesky factor of an SPD matrix.
/// Throws std::runtime_error("not positive definite at pivot i") otherwise.
Matrix cholesky(const Matrix& a);

/// Solve A x = rhs for SPD A via Cholesky.
std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& rhs);

/// Forward/back substitution with a lower-triangular factor.
std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& rhs);

/// Solve a general (possibly indefinite) square system by LU with partial
/// pivoting. Used for augmented Lagrange saddle systems.
std::vector<double> lu_solve(Matrix a, std::vector<double> rhs);

/// Cyclic Jacobi sweeps; terminates when the off-diagonal Frobenius norm
/// drops below 1e-12 * ||A||. Input symmetry is checked to 1e-12 * ||A||.
SymEigResult sym_eig(const Matrix& a);

/// Generalized symmetric eigenproblem A v = lambda B v with SPD B,
/// reduced by the Cholesky factor of B. Eigenvectors are B-orthonormal.
SymEigResult gen_sym_eig(const Matrix& a, const Matrix& b);

struct PowerIterationResult {
    double eigenvalue = 0.0;
    std::vector<double> eigenvector;
    bool converged = false;
    int iterations = 0;
};

/// Dominant eigenvalue of a symmetric positive semi-definite map given only
/// matrix-vector products. Stops when successive Rayleigh quotients agree to
/// a relative tol; the start vector is seeded pseudo-randomly.
PowerIterationResult power_iteration(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                                     std::size_t dim, double tol, int max_iter, unsigned seed);

/// Orthonormal basis of the null space of C (rows = constraint functionals),
/// computed by Householder QR with column pivoting of C^T. Rank decisions use
/// the threshold rank_tol * largest diagonal of R.
Matrix null_space(const Matrix& c, double rank_tol = 1e-9);

}  // namespace splinewidth
