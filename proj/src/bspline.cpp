#include "splinewidth/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace splinewidth {

ExtendedKnotVector::ExtendedKnotVector(const BreakSequence& breaks, int degree, int smoothness)
    : breaks_(breaks), p_(degree), k_(smoothness) {
    if (p_ < 0) throw std::invalid_argument("degree must be nonnegative");
    if (k_ < -1 || k_ > p_ - 1)
        throw std::invalid_argument("smoothness must satisfy -1 <= k <= p-1");
    if (p_ > 12) throw std::invalid_argument("degrees above 12 are not supported (Gram conditioning)");

    const auto& pts = breaks.points();
    const std::size_t n_int = breaks.intervals();
    const int mult = p_ - k_;
    knots_.reserve((p_ + 1) * 2 + (n_int - 1) * mult);
    for (int i = 0; i <= p_; ++i) knots_.push_back(pts.front());
    for (std::size_t j = 1; j < n_int; ++j)
        for (int m = 0; m < mult; ++m) knots_.push_back(pts[j]);
    for (int i = 0; i <= p_; ++i) knots_.push_back(pts.back());
    dim_ = knots_.size() - static_cast<std::size_t>(p_) - 1;
}

namespace {

// Index mu with t_mu <= x < t_{mu+1}; at the right endpoint the last
// nontrivial span is used (left-limit convention).
std::size_t find_span(const std::vector<double>& t, int p, double x) {
    const std::size_t n = t.size() - static_cast<std::size_t>(p) - 1;  // basis count
    if (x >= t[n]) return n - 1;
    std::size_t lo = static_cast<std::size_t>(p), hi = n;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (x < t[mid])
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

// Derivatives of the p+1 B-splines that are nonzero on the span mu,
// orders 0..nd. ders[l][j] is the l-th derivative of N_{mu-p+j,p}.
std::vector<std::vector<double>> ders_basis(const std::vector<double>& t, std::size_t mu, double x,
                                            int p, int nd) {
    std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1, 0.0));
    std::vector<double> left(p + 1, 0.0), right(p + 1, 0.0);
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = x - t[mu + 1 - j];
        right[j] = t[mu + j] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    std::vector<std::vector<double>> ders(nd + 1, std::vector<double>(p + 1, 0.0));
    for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

    std::vector<std::vector<double>> a(2, std::vector<double>(p + 1, 0.0));
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a[0][0] = 1.0;
        for (int l = 1; l <= nd && l <= p; ++l) {
            double d = 0.0;
            const int rl = r - l, pl = p - l;
            if (r >= l) {
                a[s2][0] = a[s1][0] / ndu[pl + 1][rl];
                d = a[s2][0] * ndu[rl][pl];
            }
            const int j1 = (rl >= -1) ? 1 : -rl;
            const int j2 = (r - 1 <= pl) ? l - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pl + 1][rl + j];
                d += a[s2][j] * ndu[rl + j][pl];
            }
            if (r <= pl) {
                a[s2][l] = -a[s1][l - 1] / ndu[pl + 1][r];
                d += a[s2][l] * ndu[r][pl];
            }
            ders[l][r] = d;
            std::swap(s1, s2);
        }
    }
    double factor = static_cast<double>(p);
    for (int l = 1; l <= nd && l <= p; ++l) {
        for (int j = 0; j <= p; ++j) ders[l][j] *= factor;
        factor *= static_cast<double>(p - l);
    }
    return ders;
}

}  // namespace

std::vector<double> ExtendedKnotVector::eval_all(double x, int deriv) const {
    if (x < breaks_.a() || x > breaks_.b())
        throw std::invalid_argument("evaluation point outside the domain");
    if (deriv < 0) throw std::invalid_argument("negative derivative order");
    std::vector<double> out(dim_, 0.0);
    if (deriv > p_) return out;  // derivative annihilates the space
    const std::size_t mu = find_span(knots_, p_, x);
    const auto ders = ders_basis(knots_, mu, x, p_, deriv);
    for (int j = 0; j <= p_; ++j) {
        const std::size_t idx = mu - static_cast<std::size_t>(p_) + static_cast<std::size_t>(j);
        out[idx] = ders[static_cast<std::size_t>(deriv)][static_cast<std::size_t>(j)];
    }
    return out;
}

std::vector<double> ExtendedKnotVector::endpoint_functional(int alpha, bool left) const {
    if (alpha > p_) throw std::invalid_argument("endpoint derivative order exceeds degree");
    return eval_all(left ? breaks_.a() : breaks_.b(), alpha);
}

std::vector<double> antidifferentiate(const ExtendedKnotVector& kv,
                                      const std::vector<double>& coeffs) {
    if (coeffs.size() != kv.dim())
        throw std::invalid_argument("antidifferentiate: coefficient size mismatch");
    const int p = kv.degree();
    const auto& t = kv.knots();
    std::vector<double> out(coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        out[i + 1] = out[i] + coeffs[i] * (t[i + static_cast<std::size_t>(p) + 1] - t[i]) /
                                  static_cast<double>(p + 1);
    return out;
}

std::vector<double> differentiate(const ExtendedKnotVector& kv, const std::vector<double>& coeffs) {
    if (coeffs.size() != kv.dim())
        throw std::invalid_argument("differentiate: coefficient size mismatch");
    const int p = kv.degree();
    if (p < 1) throw std::invalid_argument("differentiate: degree must be >= 1");
    if (kv.smoothness() < 0)
        throw std::invalid_argument("differentiate: needs smoothness k >= 0");
    const auto& t = kv.knots();
    std::vector<double> out(coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
        const double dt = t[i + static_cast<std::size_t>(p) + 1] - t[i + 1];
        out[i] = static_cast<double>(p) * (coeffs[i + 1] - coeffs[i]) / dt;
    }
    return out;
}

}  // namespace splinewidth
