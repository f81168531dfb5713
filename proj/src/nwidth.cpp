#include "splinewidth/nwidth.hpp"

#include "splinewidth/breaks.hpp"
#include "splinewidth/functions.hpp"
#include "splinewidth/projection.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace splinewidth {

namespace {

constexpr std::size_t kNodesPerSubElement = 12;

std::vector<double> refined_boundaries(const std::vector<double>& breaks, std::size_t min_nodes) {
    const std::size_t nel = breaks.size() - 1;
    std::size_t splits = 1;
    while (nel * splits * kNodesPerSubElement < min_nodes) ++splits;
    std::vector<double> out;
    out.reserve(nel * splits + 1);
    for (std::size_t e = 0; e < nel; ++e) {
        for (std::size_t s = 0; s < splits; ++s)
            out.push_back(breaks[e] + (breaks[e + 1] - breaks[e]) * static_cast<double>(s) /
                                          static_cast<double>(splits));
    }
    out.push_back(breaks.back());
    return out;
}

// Partial weights: w[i][j] = int_{lo}^{x_i} L_j over the element's nodes.
std::vector<std::vector<double>> partial_weights(const std::vector<double>& nodes, double lo) {
    const std::size_t m = nodes.size();
    const GaussRule ref = gauss_legendre(m);
    std::vector<std::vector<double>> w(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        const double hi = nodes[i];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t g = 0; g < m; ++g) {
            const double y = mid + half * ref.nodes[g];
            const double wg = half * ref.weights[g];
            for (std::size_t j = 0; j < m; ++j) {
                double l = 1.0;
                for (std::size_t t = 0; t < m; ++t)
                    if (t != j) l *= (y - nodes[t]) / (nodes[j] - nodes[t]);
                w[i][j] += wg * l;
            }
        }
    }
    return w;
}

Matrix left_integration_matrix(const QuadratureRule& grid) {
    const std::size_t n = grid.size();
    const std::size_t m = grid.nodes_per_element();
    const std::size_t nel = n / m;
    Matrix k(n, n);
    // full elements strictly before the evaluation point
    std::vector<double> cumulative(nel + 1, 0.0);
    for (std::size_t e = 0; e < nel; ++e) {
        for (std::size_t i = e * m; i < (e + 1) * m; ++i) {
            for (std::size_t ep = 0; ep < e; ++ep)
                for (std::size_t j = ep * m; j < (ep + 1) * m; ++j) k(i, j) = grid.weights()[j];
        }
    }
    // partial integral within the element of the evaluation point
    for (std::size_t e = 0; e < nel; ++e) {
        std::vector<double> nodes(grid.points().begin() + static_cast<std::ptrdiff_t>(e * m),
                                  grid.points().begin() + static_cast<std::ptrdiff_t>((e + 1) * m));
        const auto pw = partial_weights(nodes, grid.boundaries()[e]);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) k(e * m + i, e * m + j) = pw[i][j];
    }
    return k;
}

}  // namespace

GridOperator::GridOperator(const KernelOperator& op, const std::vector<double>& breaks,
                           std::size_t min_nodes)
    : grid_(refined_boundaries(breaks, min_nodes), kNodesPerSubElement), power_(op.power) {
    const std::size_t n = grid_.size();
    const Matrix left = left_integration_matrix(grid_);
    const auto& w = grid_.weights();
    const auto& x = grid_.points();

    switch (op.kind) {
        case KernelKind::LeftIntegration:
            k_ = left;
            break;
        case KernelKind::RightIntegration: {
            // weight-conjugated transpose keeps the adjoint pair exact
            k_ = Matrix(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) k_(i, j) = w[j] * left(j, i) / w[i];
            break;
        }
        case KernelKind::PeriodicGreen: {
            k_ = left;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) k_(i, j) += w[j] * (-x[i] + x[j] - 0.5);
            break;
        }
        case KernelKind::NeumannFactor: {
            k_ = left;
            const double len = grid_.boundaries().back() - grid_.boundaries().front();
            std::vector<double> colmean(n, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += w[i] * left(i, j);
                colmean[j] = s / len;
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) k_(i, j) -= colmean[j];
            break;
        }
    }
}

std::vector<double> GridOperator::apply(const std::vector<double>& f) const { return k_ * f; }

std::vector<double> GridOperator::apply_adjoint(const std::vector<double>& f) const {
    const std::size_t n = grid_.size();
    const auto& w = grid_.weights();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double wf = w[i] * f[i];
        if (wf == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) out[j] += k_(i, j) * wf;
    }
    for (std::size_t j = 0; j < n; ++j) out[j] /= w[j];
    return out;
}

std::vector<double> GridOperator::apply_power(const std::vector<double>& f) const {
    std::vector<double> v = f;
    for (int t = 0; t < power_; ++t) v = apply(v);
    return v;
}

std::vector<double> GridOperator::apply_power_adjoint(const std::vector<double>& f) const {
    std::vector<double> v = f;
    for (int t = 0; t < power_; ++t) v = apply_adjoint(v);
    return v;
}

double GridOperator::inner(const std::vector<double>& f, const std::vector<double>& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += grid_.weights()[i] * f[i] * g[i];
    return s;
}

double GridOperator::norm(const std::vector<double>& f) const {
    return std::sqrt(std::max(inner(f, f), 0.0));
}

GridProjector::GridProjector(const SplineSpace& space, const QuadratureRule& grid)
    : basis_(grid.size(), space.dim()), weights_(grid.weights()) {
    const std::size_t d = space.dim();
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const auto v = space.eval_basis(grid.points()[n], 0);
        for (std::size_t j = 0; j < d; ++j) basis_(n, j) = v[j];
    }
    Matrix gram(d, d);
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double w = weights_[n];
        for (std::size_t i = 0; i < d; ++i) {
            if (basis_(n, i) == 0.0) continue;
            const double wbi = w * basis_(n, i);
            for (std::size_t j = i; j < d; ++j) gram(i, j) += wbi * basis_(n, j);
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j) gram(i, j) = gram(j, i);
    mass_chol_ = cholesky(gram);
}

void GridProjector::apply_residual(std::vector<double>& f) const {
    const std::size_t d = mass_chol_.rows();
    std::vector<double> rhs(d, 0.0);
    for (std::size_t n = 0; n < f.size(); ++n) {
        const double wf = weights_[n] * f[n];
        if (wf == 0.0) continue;
        for (std::size_t j = 0; j < d; ++j) rhs[j] += wf * basis_(n, j);
    }
    const auto c = cholesky_solve(mass_chol_, rhs);
    for (std::size_t n = 0; n < f.size(); ++n) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += basis_(n, j) * c[j];
        f[n] -= s;
    }
}

namespace {

double residual_norm_at(const SplineSpace& space, const KernelOperator& op, int r,
                        std::size_t min_nodes, bool* converged) {
    KernelOperator single = op;
    single.power = 1;
    const GridOperator grid_op(single, space.breaks().points(), min_nodes);
    const GridProjector proj(space, grid_op.grid());

    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        std::vector<double> v = x;
        for (int t = 0; t < r; ++t) v = grid_op.apply(v);
        proj.apply_residual(v);
        for (int t = 0; t < r; ++t) v = grid_op.apply_adjoint(v);
        // conjugate by the weights so the map is symmetric in the Euclidean
        // sense as well (weights enter both inner products identically)
        y = std::move(v);
    };
    // power iteration in the grid inner product: symmetrize through sqrt(w)
    const auto& w = grid_op.grid().weights();
    auto apply_sym = [&](const std::vector<double>& x, std::vector<double>& y) {
        std::vector<double> v(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i] / std::sqrt(w[i]);
        std::vector<double> t;
        apply(v, t);
        y.resize(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) y[i] = t[i] * std::sqrt(w[i]);
    };
    const PowerIterationResult pi =
        power_iteration(apply_sym, grid_op.size(), 1e-9, 10000, 20240u + static_cast<unsigned>(r));
    if (converged) *converged = pi.converged;
    return std::sqrt(std::max(pi.eigenvalue, 0.0));
}

}  // namespace

OperatorNormResult residual_operator_norm(const SplineSpace& space, const KernelOperator& op,
                                          int r, std::size_t fine_nodes) {
    OperatorNormResult res;
    bool conv_fine = true, conv_coarse = true;
    res.value = residual_norm_at(space, op, r, fine_nodes, &conv_fine);
    res.value_coarse = residual_norm_at(space, op, r, fine_nodes / 2, &conv_coarse);
    res.converged = conv_fine && conv_coarse;
    res.grid_size = fine_nodes;
    res.certificate = std::abs(res.value - res.value_coarse) / std::max(res.value, 1e-300);
    return res;
}

double exact_nwidth(const FunctionClassSpec& cls, std::size_t n) {
    const double pi = std::numbers::pi;
    const double r = static_cast<double>(cls.r);
    switch (cls.tag) {
        case FunctionClassTag::APer: {
            const double m = std::ceil(static_cast<double>(n) / 2.0);
            return std::pow(1.0 / (2.0 * pi * m), r);
        }
        case FunctionClassTag::AFull:
            if (cls.r != 1)
                throw std::invalid_argument("no closed form implemented for A_full with r > 1");
            return 1.0 / (static_cast<double>(n) * pi);
        case FunctionClassTag::A0:
            return std::pow(1.0 / ((static_cast<double>(n) + 1.0) * pi), r);
        case FunctionClassTag::A1:
            return std::pow(1.0 / (static_cast<double>(n) * pi), r);
        case FunctionClassTag::A2:
            return std::pow(1.0 / ((static_cast<double>(n) + 0.5) * pi), r);
    }
    throw std::invalid_argument("no closed form implemented");
}

OptimalityResult optimality_ratio(const SplineSpace& space, const FunctionClassSpec& cls,
                                  std::size_t fine_nodes) {
    KernelOperator op;
    op.power = 1;
    switch (cls.tag) {
        case FunctionClassTag::APer:
            op.kind = KernelKind::PeriodicGreen;
            break;
        case FunctionClassTag::AFull:
            op.kind = KernelKind::LeftIntegration;
            break;
        default:
            throw std::invalid_argument("optimality_ratio: only A_per and A_full are supported");
    }
    OptimalityResult res;
    res.norm = residual_operator_norm(space, op, cls.r, fine_nodes);
    res.nwidth = exact_nwidth(cls, space.dim());
    res.ratio = res.norm.value / res.nwidth;
    return res;
}

OperatorSpectrum operator_spectrum(const KernelOperator& op, std::size_t count,
                                   std::size_t fine_nodes, unsigned seed) {
    KernelOperator single = op;
    single.power = 1;
    std::vector<double> interval = {op.a, op.b};
    const GridOperator grid_op(single, interval, fine_nodes);
    const std::size_t n = grid_op.size();
    const std::size_t block = count + 4;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<std::vector<double>> x(block, std::vector<double>(n));
    for (auto& col : x)
        for (double& v : col) v = dist(rng);

    auto orthonormalize = [&]() {
        for (std::size_t i = 0; i < block; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                const double c = grid_op.inner(x[i], x[j]);
                axpy(-c, x[j], x[i]);
            }
            const double nn = grid_op.norm(x[i]);
            scale(x[i], 1.0 / std::max(nn, 1e-300));
        }
    };

    orthonormalize();
    std::vector<double> eigs(block, 0.0);
    for (int it = 0; it < 400; ++it) {
        std::vector<double> prev = eigs;
        for (auto& col : x) {
            col = grid_op.apply(col);
            col = grid_op.apply_adjoint(col);
        }
        for (std::size_t i = 0; i < block; ++i) eigs[i] = grid_op.norm(x[i]);
        orthonormalize();
        double rel = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            rel = std::max(rel, std::abs(eigs[i] - prev[i]) / std::max(eigs[i], 1e-300));
        if (it > 4 && rel < 1e-12) break;
    }
    // Rayleigh-Ritz on the converged block
    Matrix rr(block, block);
    std::vector<std::vector<double>> ax(block);
    for (std::size_t i = 0; i < block; ++i) {
        ax[i] = grid_op.apply_adjoint(grid_op.apply(x[i]));
        for (std::size_t j = 0; j <= i; ++j) {
            rr(i, j) = grid_op.inner(ax[i], x[j]);
            rr(j, i) = rr(i, j);
        }
    }
    const SymEigResult small = sym_eig(rr);

    OperatorSpectrum spec{{}, Matrix(n, count), grid_op.grid()};
    for (std::size_t s = 0; s < count; ++s) {
        const std::size_t src = block - 1 - s;  // ascending -> descending
        spec.singular_values.push_back(std::sqrt(std::max(small.eigenvalues[src], 0.0)));
        std::vector<double> fn(n, 0.0);
        for (std::size_t i = 0; i < block; ++i) axpy(small.eigenvectors(i, src), x[i], fn);
        const double nn = grid_op.norm(fn);
        for (std::size_t g = 0; g < n; ++g) spec.functions(g, s) = fn[g] / std::max(nn, 1e-300);
    }
    return spec;
}

SpectrumCheck kkstar_spectrum_check(std::size_t count, std::size_t fine_nodes) {
    KernelOperator op;
    op.kind = KernelKind::PeriodicGreen;
    op.a = 0.0;
    op.b = 1.0;
    const OperatorSpectrum spec = operator_spectrum(op, count, fine_nodes);

    SpectrumCheck check;
    check.singular_values = spec.singular_values;
    for (std::size_t j = 0; j < count; ++j) {
        const double i = std::ceil(static_cast<double>(j + 1) / 2.0);
        check.exact.push_back(1.0 / (2.0 * std::numbers::pi * i));
        check.rel_err.push_back(std::abs(check.singular_values[j] / check.exact[j] - 1.0));
    }

    const auto& grid = spec.grid;
    const auto& w = grid.weights();
    for (std::size_t pair = 1; 2 * pair <= count; ++pair) {
        const double omega = 2.0 * std::numbers::pi * static_cast<double>(pair);
        // cross-gram of the exact orthonormal pair with the computed pair
        Matrix m(2, 2);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const double x = grid.points()[g];
            const double es = std::numbers::sqrt2 * std::sin(omega * x);
            const double ec = std::numbers::sqrt2 * std::cos(omega * x);
            const double d0 = spec.functions(g, 2 * pair - 2);
            const double d1 = spec.functions(g, 2 * pair - 1);
            m(0, 0) += w[g] * es * d0;
            m(0, 1) += w[g] * es * d1;
            m(1, 0) += w[g] * ec * d0;
            m(1, 1) += w[g] * ec * d1;
        }
        const SymEigResult eig = sym_eig(m.transposed() * m);
        const double c2 = std::min(std::max(eig.eigenvalues.front(), 0.0), 1.0);
        check.pair_angles.push_back(std::acos(std::sqrt(c2)));
    }
    return check;
}

std::vector<EigconvCell> eigconv_report(int i, std::size_t n, const std::vector<int>& degrees) {
    std::vector<EigconvCell> cells;
    for (int p : degrees) {
        const BreakSequence breaks = make_special_breaks(p, i, n);
        const SplineSpace space = build_subspace(breaks, p, p - 1, ConstraintFamily::boundary(i));
        if (space.dim() != n) throw std::runtime_error("eigconv: unexpected subspace dimension");
        for (std::size_t j = 1; j <= n; ++j) {
            FunctionSpec f;
            f.r_max = 24;
            const double pi = std::numbers::pi;
            if (i == 0) {
                const double omega = static_cast<double>(j) * pi;
                f.name = "sin(" + std::to_string(j) + " pi x)";
                f.eval = [omega](double x, int l) {
                    return std::pow(omega, l) * std::sin(omega * x + 0.5 * std::numbers::pi * l);
                };
            } else if (i == 1) {
                const double omega = static_cast<double>(j - 1) * pi;
                f.name = "cos(" + std::to_string(j - 1) + " pi x)";
                f.eval = [omega](double x, int l) {
                    if (omega == 0.0) return l == 0 ? 1.0 : 0.0;
                    return std::pow(omega, l) * std::cos(omega * x + 0.5 * std::numbers::pi * l);
                };
            } else {
                const double omega = (static_cast<double>(j) - 0.5) * pi;
                f.name = "sin((" + std::to_string(j) + "-1/2) pi x)";
                f.eval = [omega](double x, int l) {
                    return std::pow(omega, l) * std::sin(omega * x + 0.5 * std::numbers::pi * l);
                };
            }
            const ProjectionResult proj = l2_project(space, f);
            cells.push_back({j, p, error_norm(f, proj, 0)});
        }
    }
    return cells;
}

}  // namespace splinewidth
