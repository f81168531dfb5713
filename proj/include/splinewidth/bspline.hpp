#pragma once

#include "splinewidth/breaks.hpp"

#include <cstddef>
#include <vector>

namespace splinewidth {

/// Clamped knot vector of degree p with interior multiplicity p-k, so the raw
/// B-spline basis spans the space of C^k piecewise polynomials of degree p on
/// the given breaks. Smoothness k ranges over -1 <= k <= p-1; basis count is
/// (N+1)(p-k) + k + 1 for N+1 break intervals.
class ExtendedKnotVector {
public:
    ExtendedKnotVector(const BreakSequence& breaks, int degree, int smoothness);

    int degree() const { return p_; }
    int smoothness() const { return k_; }
    std::size_t dim() const { return dim_; }
    const std::vector<double>& knots() const { return knots_; }
    const BreakSequence& breaks() const { return breaks_; }

    /// Values of the l-th derivatives of all dim() raw B-splines at x.
    /// x must lie in [a,b]; at x = b the left-limit convention applies
    /// (the last break interval is closed).
    std::vector<double> eval_all(double x, int deriv) const;

    /// Row vector over raw coefficients whose dot product with a coefficient
    /// vector gives the alpha-th derivative at the chosen endpoint
    /// (one-sided limit). alpha <= p.
    std::vector<double> endpoint_functional(int alpha, bool left) const;

private:
    BreakSequence breaks_;
    int p_;
    int k_;
    std::size_t dim_;
    std::vector<double> knots_;
};

/// Coefficients in the degree-(p+1), smoothness-(k+1) space of the running
/// integral x -> int_a^x s, given coefficients of s on `kv`. The result
/// vanishes at a.
std::vector<double> antidifferentiate(const ExtendedKnotVector& kv,
                                      const std::vector<double>& coeffs);

/// Coefficients of s' in the degree-(p-1), smoothness-(k-1) space. Requires
/// k >= 0 so the derivative is still a (piecewise continuous) spline there.
std::vector<double> differentiate(const ExtendedKnotVector& kv,
                                  const std::vector<double>& coeffs);

}  // namespace splinewidth
