#pragma once

#include "splinewidth/linalg.hpp"
#include "splinewidth/quadrature.hpp"
#include "splinewidth/space.hpp"

#include <string>
#include <vector>

namespace splinewidth {

enum class KernelKind {
    LeftIntegration,   // (Kf)(x) = int_a^x f
    RightIntegration,  // adjoint of the above
    PeriodicGreen,     // kernel -x+y-1/2 (x<y), -x+y+1/2 (x>=y) on (0,1)
    NeumannFactor      // K1 = (I - Pi) K, Pi the projection onto constants
};

struct KernelOperator {
    KernelKind kind = KernelKind::LeftIntegration;
    int power = 1;
    double a = 0.0, b = 1.0;
};

/// An integral operator discretized on a composite Gauss grid aligned with a
/// set of break points. Within-element partial integrals use the Lagrange
/// interpolant through the element's nodes, so piecewise polynomials up to
/// the per-element node count integrate exactly.
class GridOperator {
public:
    GridOperator(const KernelOperator& op, const std::vector<double>& breaks, std::size_t min_nodes);

    const QuadratureRule& grid() const { return grid_; }
    std::size_t size() const { return grid_.size(); }
    int power() const { return power_; }

    /// One application of K (not K^power).
    std::vector<double> apply(const std::vector<double>& f) const;
    /// One application of the adjoint in the grid inner product.
    std::vector<double> apply_adjoint(const std::vector<double>& f) const;
    /// K^power applied to f.
    std::vector<double> apply_power(const std::vector<double>& f) const;
    std::vector<double> apply_power_adjoint(const std::vector<double>& f) const;

    double inner(const std::vector<double>& f, const std::vector<double>& g) const;
    double norm(const std::vector<double>& f) const;

private:
    QuadratureRule grid_;
    Matrix k_;
    int power_;
};

/// Grid realization of the L2 projection onto a spline space.
class GridProjector {
public:
    GridProjector(const SplineSpace& space, const QuadratureRule& grid);
    /// f - P f (residual of the projection), in place.
    void apply_residual(std::vector<double>& f) const;

private:
    Matrix basis_;       // grid x dim
    Matrix mass_chol_;   // Cholesky factor of the grid Gram matrix
    std::vector<double> weights_;
};

struct OperatorNormResult {
    double value = 0.0;        // ||(I-P) K^r|| at the fine grid
    double value_coarse = 0.0; // same at half resolution
    double certificate = 0.0;  // relative agreement between the two
    std::size_t grid_size = 0;
    bool converged = true;
};

/// ||(I-P) K^r|| by power iteration on (K^r)* (I-P) (K^r), with an M vs 2M
/// grid-refinement certificate.
OperatorNormResult residual_operator_norm(const SplineSpace& space, const KernelOperator& op,
                                          int r, std::size_t fine_nodes = 2000);

enum class FunctionClassTag { APer, AFull, A0, A1, A2 };

struct FunctionClassSpec {
    FunctionClassTag tag = FunctionClassTag::APer;
    int r = 1;
};

/// Closed-form Kolmogorov n-width of the class on (0,1); throws when no
/// closed form is implemented for the (class, r) combination.
double exact_nwidth(const FunctionClassSpec& cls, std::size_t n);

struct OptimalityResult {
    OperatorNormResult norm;
    double nwidth = 0.0;
    double ratio = 0.0;
};

/// residual_operator_norm / exact_nwidth for a space of dimension n.
OptimalityResult optimality_ratio(const SplineSpace& space, const FunctionClassSpec& cls,
                                  std::size_t fine_nodes = 2000);

struct OperatorSpectrum {
    std::vector<double> singular_values;  // descending
    Matrix functions;                     // grid samples, columns, grid-orthonormal
    QuadratureRule grid;
};

/// Leading singular values/functions of K via simultaneous iteration on KK*
/// in the grid inner product.
OperatorSpectrum operator_spectrum(const KernelOperator& op, std::size_t count,
                                   std::size_t fine_nodes = 2000, unsigned seed = 1234);

struct SpectrumCheck {
    std::vector<double> singular_values;
    std::vector<double> exact;            // 1/(2 pi i) pairs
    std::vector<double> rel_err;
    std::vector<double> pair_angles;      // principal angle per sin/cos pair
};

/// Compares the periodic Green operator spectrum with the exact values
/// 1/(2 pi i), including subspace angles of the paired singular functions.
SpectrumCheck kkstar_spectrum_check(std::size_t count, std::size_t fine_nodes = 2000);

struct EigconvCell {
    std::size_t j = 0;
    int p = 0;
    double error = 0.0;
};

/// Projection errors of the first n Laplacian eigenfunctions (boundary family
/// i) onto the optimal spline spaces over a range of degrees.
std::vector<EigconvCell> eigconv_report(int i, std::size_t n, const std::vector<int>& degrees);

}  // namespace splinewidth
