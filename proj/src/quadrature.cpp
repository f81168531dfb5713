#include "splinewidth/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace splinewidth {

GaussRule gauss_legendre(std::size_t m) {
    if (m < 1 || m > 64) throw std::invalid_argument("gauss_legendre: node count out of range");
    GaussRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const std::size_t half = (m + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Chebyshev-based initial guess for the i-th root
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(m) + 0.5));
        double pp = 0.0;
        bool done = false;
        for (int it = 0; it < 100; ++it) {
            // three-term recurrence for P_m(z)
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 1; j <= m; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / static_cast<double>(j);
            }
            pp = m * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) {
                done = true;
                break;
            }
        }
        if (!done) throw std::runtime_error("gauss_legendre: Newton iteration did not converge");
        rule.nodes[i] = -z;
        rule.nodes[m - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
    return rule;
}

QuadratureRule::QuadratureRule(const std::vector<double>& boundaries,
                               std::size_t nodes_per_element)
    : boundaries_(boundaries), per_element_(nodes_per_element) {
    if (boundaries.size() < 2) throw std::invalid_argument("composite rule needs >= 2 boundaries");
    const GaussRule ref = gauss_legendre(nodes_per_element);
    const std::size_t nel = boundaries.size() - 1;
    points_.reserve(nel * nodes_per_element);
    weights_.reserve(nel * nodes_per_element);
    for (std::size_t e = 0; e < nel; ++e) {
        const double lo = boundaries[e], hi = boundaries[e + 1];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < nodes_per_element; ++i) {
            points_.push_back(mid + half * ref.nodes[i]);
            weights_.push_back(half * ref.weights[i]);
        }
    }
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) s += weights_[i] * f(points_[i]);
    return s;
}

double QuadratureRule::integrate_samples(const std::vector<double>& v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += weights_[i] * v[i];
    return s;
}

}  // namespace splinewidth
