#pragma once

#include "splinewidth/bspline.hpp"
#include "splinewidth/breaks.hpp"
#include "splinewidth/linalg.hpp"

#include <string>
#include <vector>

namespace splinewidth {

/// Endpoint constraint families carving subspaces out of the raw spline
/// space. Periodic(m) couples derivatives 0..m-1 across the endpoints; the
/// others zero out parity patterns of endpoint derivatives.
struct ConstraintFamily {
    enum class Tag { Full, Periodic, EvenZero, OddZero, Mixed, ReducedOdd };
    Tag tag = Tag::Full;
    int order = 0;  // only used by Periodic

    static ConstraintFamily full() { return {Tag::Full, 0}; }
    static ConstraintFamily periodic(int m) { return {Tag::Periodic, m}; }
    static ConstraintFamily even_zero() { return {Tag::EvenZero, 0}; }
    static ConstraintFamily odd_zero() { return {Tag::OddZero, 0}; }
    static ConstraintFamily mixed() { return {Tag::Mixed, 0}; }
    static ConstraintFamily reduced_odd() { return {Tag::ReducedOdd, 0}; }
    /// The boundary-value family with index i = 0, 1, 2.
    static ConstraintFamily boundary(int i);

    std::string name() const;
    static ConstraintFamily parse(const std::string& name);

    /// Constraint functionals as rows over raw B-spline coefficients.
    Matrix rows(const ExtendedKnotVector& kv) const;
};

/// A constrained spline subspace with an orthonormal coefficient basis over
/// the raw B-splines (basis_map rows are the basis coefficient vectors).
class SplineSpace {
public:
    SplineSpace(BreakSequence breaks, int degree, int smoothness, ConstraintFamily family);

    const BreakSequence& breaks() const { return knotvec_.breaks(); }
    const ExtendedKnotVector& knotvec() const { return knotvec_; }
    const ConstraintFamily& family() const { return family_; }
    int degree() const { return knotvec_.degree(); }
    int smoothness() const { return knotvec_.smoothness(); }
    std::size_t dim() const { return basis_map_.rows(); }
    std::size_t raw_dim() const { return knotvec_.dim(); }
    const Matrix& basis_map() const { return basis_map_; }

    /// l-th derivatives of all dim() constrained basis functions at x.
    std::vector<double> eval_basis(double x, int deriv = 0) const;
    /// Value of the spline with the given subspace coefficients.
    double eval(const std::vector<double>& coeffs, double x, int deriv = 0) const;

    std::vector<double> raw_coeffs(const std::vector<double>& sub_coeffs) const;
    /// Orthogonal projection of a raw coefficient vector onto the subspace
    /// (exact inverse of raw_coeffs when the vector lies in the span).
    std::vector<double> sub_coeffs(const std::vector<double>& raw_coeffs) const;

    std::string to_json() const;
    static SplineSpace from_json(const std::string& text);

private:
    ExtendedKnotVector knotvec_;
    ConstraintFamily family_;
    Matrix basis_map_;
};

/// Constructs the constrained subspace; throws if the constraints leave an
/// empty space or a basis function violates them beyond 1e-10 relative.
SplineSpace build_subspace(const BreakSequence& breaks, int degree, int smoothness,
                           const ConstraintFamily& family);

}  // namespace splinewidth
