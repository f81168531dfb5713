#include "splinewidth/spectral.hpp"

#include "splinewidth/functions.hpp"
#include "splinewidth/projection.hpp"
#include "splinewidth/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace splinewidth {

double exact_periodic_eigenvalue(std::size_t j) {
    if (j == 0) return 0.0;
    const double i = std::ceil(static_cast<double>(j) / 2.0);
    const double w = 2.0 * std::numbers::pi * i;
    return w * w;
}

SpectrumResult laplace_spectrum(const SplineSpace& space) {
    const Matrix stiff = gram_matrix(space, 1);
    const Matrix mass = gram_matrix(space, 0);
    SymEigResult eig = gen_sym_eig(stiff, mass);

    SpectrumResult res;
    res.nu_h = eig.eigenvalues;
    res.eigenvectors = eig.eigenvectors;
    res.space_descriptor = space.to_json();
    const std::size_t d = res.nu_h.size();
    res.nu_exact.resize(d);
    res.rel_err.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) res.nu_exact[j] = exact_periodic_eigenvalue(j);
    for (std::size_t j = 1; j < d; ++j) res.rel_err[j] = res.nu_h[j] / res.nu_exact[j] - 1.0;
    return res;
}

OutlierReport outlier_report(const SplineSpace& space, double threshold) {
    const SpectrumResult spec = laplace_spectrum(space);
    OutlierReport rep;
    rep.threshold = threshold;
    rep.dim = spec.nu_h.size();
    rep.rel_err = spec.rel_err;

    // Galerkin eigenvalues from a subspace never undershoot, so the errors
    // are nonnegative up to roundoff; the floor keeps the ratios finite.
    std::vector<double> sorted;
    for (std::size_t j = 1; j < spec.rel_err.size(); ++j)
        sorted.push_back(std::max(spec.rel_err[j], 1e-12));
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    for (std::size_t m = 0; m + 1 < sorted.size(); ++m) {
        if (sorted[m] <= (1.0 + threshold) * sorted[m + 1]) break;
        ++rep.count;
    }
    return rep;
}

namespace {

std::vector<double> moving_median(const std::vector<double>& v, std::size_t window) {
    if (window < 2) return v;
    std::vector<double> out(v.size());
    const std::size_t half = window / 2;
    std::vector<double> buf;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t lo = (i > half) ? i - half : 0;
        const std::size_t hi = std::min(v.size(), i + half + 1);
        buf.assign(v.begin() + static_cast<std::ptrdiff_t>(lo),
                   v.begin() + static_cast<std::ptrdiff_t>(hi));
        std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2),
                         buf.end());
        out[i] = buf[buf.size() / 2];
    }
    return out;
}

}  // namespace

BranchProfile branch_profile(const SplineSpace& space, std::size_t n) {
    const SpectrumResult spec = laplace_spectrum(space);
    BranchProfile prof;
    prof.dim = spec.nu_h.size();
    const std::size_t blocks = prof.dim / n;
    if (blocks * n != prof.dim)
        throw std::runtime_error("branch_profile: dim is not a multiple of n");

    std::vector<double> err;
    for (std::size_t j = 1; j < prof.dim; ++j) {
        prof.abscissa.push_back(static_cast<double>(j) / static_cast<double>(prof.dim));
        err.push_back(spec.rel_err[j]);
    }
    prof.rel_err = err;
    prof.smoothed = moving_median(err, std::max<std::size_t>(3, n / 10));

    // a branch boundary at j = t*n shows up as an upward jump of the
    // smoothed error curve across the boundary
    std::size_t boundaries = 0;
    const std::size_t delta = std::max<std::size_t>(2, n / 20);
    const double jump = 1.5;
    for (std::size_t t = 1; t < blocks; ++t) {
        const std::size_t b = t * n - 1;  // err index of eigenvalue t*n
        if (b < delta || b + delta >= prof.smoothed.size()) continue;
        const double before = std::max(prof.smoothed[b - delta], 1e-300);
        if (prof.smoothed[b + delta] > jump * before) ++boundaries;
    }
    prof.branches = boundaries + 1;
    return prof;
}

EigfunctionError galerkin_eigfunction_error(const SplineSpace& space, std::size_t pair_index) {
    if (pair_index < 1) throw std::invalid_argument("pair index must be >= 1");
    const SpectrumResult spec = laplace_spectrum(space);
    const std::size_t j0 = 2 * pair_index - 1, j1 = 2 * pair_index;
    if (j1 >= spec.nu_h.size()) throw std::invalid_argument("pair index beyond the spectrum");

    EigfunctionError res;
    const double gap = std::abs(spec.nu_h[j1] - spec.nu_h[j0]);
    res.cluster_ok = gap <= 0.1 * std::max(spec.nu_h[j0], 1.0);

    // L2 inner products (e_a, d_b): exact orthonormal pair vs the discrete
    // (mass-orthonormal) pair
    const double omega = 2.0 * std::numbers::pi * static_cast<double>(pair_index);
    QuadratureRule rule(space.breaks().points(), static_cast<std::size_t>(space.degree() + 10));
    Matrix m(2, 2);
    const auto c0 = spec.eigenvectors.col(j0);
    const auto c1 = spec.eigenvectors.col(j1);
    for (std::size_t nq = 0; nq < rule.size(); ++nq) {
        const double x = rule.points()[nq];
        const double w = rule.weights()[nq];
        const auto b = space.eval_basis(x, 0);
        const double d0 = dot(c0, b), d1 = dot(c1, b);
        const double es = std::numbers::sqrt2 * std::sin(omega * x);
        const double ec = std::numbers::sqrt2 * std::cos(omega * x);
        m(0, 0) += w * es * d0;
        m(0, 1) += w * es * d1;
        m(1, 0) += w * ec * d0;
        m(1, 1) += w * ec * d1;
    }
    const Matrix mtm = m.transposed() * m;
    const SymEigResult eig = sym_eig(mtm);
    const double c2 = std::clamp(eig.eigenvalues.front(), 0.0, 1.0);
    res.angle = std::acos(std::sqrt(c2));
    return res;
}

std::vector<ConjectureRow> conjecture_explorer(std::size_t m, int q,
                                               const std::vector<int>& degrees) {
    const BreakSequence breaks = make_uniform_breaks(2 * m, 0.0, 1.0);
    std::vector<ConjectureRow> rows;
    for (int p : degrees) {
        const std::string fname =
            (p % 2 == 0) ? "sin_" + std::to_string(m) : "cos_" + std::to_string(m);
        const FunctionSpec f = function_catalog(fname);
        const SplineSpace space = build_subspace(breaks, p, p - 1, ConstraintFamily::periodic(p));
        const int qq = std::min(q, p);
        const ProjectionResult proj = ritz_project_recursive(space, f, qq);
        rows.push_back({p, fname, error_norm(f, proj, 0)});
    }
    return rows;
}

InverseInequalityReport inverse_report(const SplineSpace& space) {
    const Matrix stiff = gram_matrix(space, 1);
    const Matrix mass = gram_matrix(space, 0);
    const SymEigResult eig = gen_sym_eig(stiff, mass);
    InverseInequalityReport rep;
    rep.ratio = std::sqrt(std::max(eig.eigenvalues.back(), 0.0));
    rep.bound = 2.0 * std::sqrt(3.0) / space.breaks().h_min();
    rep.slack = (rep.ratio > 0.0) ? rep.bound / rep.ratio : 0.0;
    rep.space_descriptor = space.to_json();
    return rep;
}

}  // namespace splinewidth
