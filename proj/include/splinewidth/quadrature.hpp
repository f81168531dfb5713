#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace splinewidth {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre nodes/weights on the reference interval (-1,1), exact for
/// polynomials of degree <= 2m-1. Newton iteration on the Legendre polynomial
/// with Chebyshev initial guesses, tolerance 1e-15. 1 <= m <= 64.
GaussRule gauss_legendre(std::size_t m);

/// Composite Gauss rule aligned to a set of element boundaries.
class QuadratureRule {
public:
    QuadratureRule(const std::vector<double>& boundaries, std::size_t nodes_per_element);

    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return points_.size(); }
    std::size_t nodes_per_element() const { return per_element_; }
    const std::vector<double>& boundaries() const { return boundaries_; }

    double integrate(const std::function<double(double)>& f) const;
    /// Integral of sampled values (one per quadrature point).
    double integrate_samples(const std::vector<double>& v) const;

private:
    std::vector<double> boundaries_;
    std::vector<double> points_;
    std::vector<double> weights_;
    std::size_t per_element_ = 0;
};

}  // namespace splinewidth
