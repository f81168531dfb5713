#include "splinewidth/projection.hpp"

#include "splinewidth/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace splinewidth {

namespace {

QuadratureRule space_rule(const SplineSpace& space, int extra_nodes) {
    const std::size_t m = static_cast<std::size_t>(space.degree() + extra_nodes);
    return QuadratureRule(space.breaks().points(), m);
}

double spline_integral(const ExtendedKnotVector& kv, const std::vector<double>& raw) {
    // int N_{i,p} = (t_{i+p+1} - t_i) / (p+1)
    const auto& t = kv.knots();
    const int p = kv.degree();
    double s = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i)
        s += raw[i] * (t[i + static_cast<std::size_t>(p) + 1] - t[i]) / static_cast<double>(p + 1);
    return s;
}

double function_integral(const FunctionSpec& u, const BreakSequence& breaks, int extra_nodes = 10) {
    QuadratureRule rule(breaks.points(), static_cast<std::size_t>(extra_nodes));
    return rule.integrate([&](double x) { return u.eval(x, 0); });
}

}  // namespace

Matrix gram_matrix(const SplineSpace& space, int q) {
    if (q > space.degree()) throw std::invalid_argument("gram_matrix: derivative order exceeds degree");
    const std::size_t d = space.dim();
    QuadratureRule rule(space.breaks().points(), static_cast<std::size_t>(space.degree() + 1));
    Matrix g(d, d);
    for (std::size_t n = 0; n < rule.size(); ++n) {
        const auto b = space.eval_basis(rule.points()[n], q);
        const double w = rule.weights()[n];
        for (std::size_t i = 0; i < d; ++i) {
            if (b[i] == 0.0) continue;
            const double wbi = w * b[i];
            for (std::size_t j = i; j < d; ++j) g(i, j) += wbi * b[j];
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    return g;
}

std::vector<double> load_vector(const SplineSpace& space, const std::function<double(double)>& f,
                                int q, int extra_nodes) {
    const QuadratureRule rule = space_rule(space, extra_nodes);
    std::vector<double> rhs(space.dim(), 0.0);
    for (std::size_t n = 0; n < rule.size(); ++n) {
        const auto b = space.eval_basis(rule.points()[n], q);
        const double wf = rule.weights()[n] * f(rule.points()[n]);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += wf * b[i];
    }
    return rhs;
}

ProjectionResult l2_project(const SplineSpace& space, const FunctionSpec& u) {
    const Matrix mass = gram_matrix(space, 0);
    const auto rhs = load_vector(space, [&](double x) { return u.eval(x, 0); });
    ProjectionResult res{space, solve_spd(mass, rhs), ProjectorKind::L2, 0, 0.0};
    res.mean = spline_integral(space.knotvec(), space.raw_coeffs(res.coeffs));
    return res;
}

namespace {

SplineSpace derivative_space(const SplineSpace& space) {
    const int p = space.degree();
    ConstraintFamily fam = space.family();
    if (fam.tag == ConstraintFamily::Tag::Periodic) fam = ConstraintFamily::periodic(p - 1);
    return build_subspace(space.breaks(), p - 1, p - 2, fam);
}

}  // namespace

ProjectionResult ritz_project_recursive(const SplineSpace& space, const FunctionSpec& u, int q) {
    const int p = space.degree();
    if (q < 0 || q > p) throw std::invalid_argument("ritz: q must satisfy 0 <= q <= p");
    if (q > u.r_max) throw std::invalid_argument("ritz: derivative order unavailable on u");
    if (space.smoothness() != p - 1)
        throw std::invalid_argument("ritz: requires a space of maximal smoothness");
    const bool periodic = space.family().tag == ConstraintFamily::Tag::Periodic;
    if (!periodic && space.family().tag != ConstraintFamily::Tag::Full)
        throw std::invalid_argument("ritz: requires Full or Periodic family");

    if (q == 0) {
        ProjectionResult res = l2_project(space, u);
        res.kind = ProjectorKind::RitzRecursive;
        return res;
    }

    const SplineSpace dspace = derivative_space(space);
    const ProjectionResult inner = ritz_project_recursive(dspace, u.derivative(), q - 1);
    std::vector<double> g = dspace.raw_coeffs(inner.coeffs);

    const double a = space.breaks().a(), b = space.breaks().b();
    std::vector<double> raw;
    if (periodic) {
        // K f = K(f - mean f): zero-mean antiderivative plus the kernel
        // constant int_0^1 y f~(y) dy.
        const double mean_g = spline_integral(dspace.knotvec(), g) / (b - a);
        for (double& c : g) c -= mean_g;
        raw = antidifferentiate(dspace.knotvec(), g);
        QuadratureRule rule(space.breaks().points(), static_cast<std::size_t>(p + 2));
        double c0 = 0.0;
        for (std::size_t n = 0; n < rule.size(); ++n) {
            const auto vals = dspace.knotvec().eval_all(rule.points()[n], 0);
            c0 += rule.weights()[n] * rule.points()[n] * dot(g, vals);
        }
        for (double& c : raw) c += c0;
    } else {
        raw = antidifferentiate(dspace.knotvec(), g);
    }

    // mean condition: int Q u = int u
    const double mean_u = function_integral(u, space.breaks());
    const double mean_s = spline_integral(space.knotvec(), raw);
    const double shift = (mean_u - mean_s) / (b - a);
    for (double& c : raw) c += shift;

    ProjectionResult res{space, space.sub_coeffs(raw), ProjectorKind::RitzRecursive, q, 0.0};
    res.mean = spline_integral(space.knotvec(), space.raw_coeffs(res.coeffs));
    return res;
}

ProjectionResult ritz_project_variational(const SplineSpace& space, const FunctionSpec& u, int q) {
    if (q == 0) {
        ProjectionResult res = l2_project(space, u);
        res.kind = ProjectorKind::RitzVariational;
        return res;
    }
    if (q > u.r_max) throw std::invalid_argument("ritz: derivative order unavailable on u");
    const std::size_t d = space.dim();
    const Matrix stiff = gram_matrix(space, q);
    const auto rhs_top = load_vector(space, [&](double x) { return u.eval(x, q); }, q);

    // The order-q seminorm annihilates polynomials of degree < q, so the
    // system is closed with the mean conditions int d^l s = int d^l u for
    // l = 0..q-1, matching the recursion. On a periodic space the l >= 1
    // conditions hold identically, leaving only the mean value.
    const bool periodic = space.family().tag == ConstraintFamily::Tag::Periodic;
    const std::size_t nc = periodic ? 1 : static_cast<std::size_t>(q);
    const double a0 = space.breaks().a(), b0 = space.breaks().b();
    Matrix aug(d + nc, d + nc);
    std::vector<double> rhs(d + nc);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) aug(i, j) = stiff(i, j);
        rhs[i] = rhs_top[i];
    }
    for (std::size_t l = 0; l < nc; ++l) {
        std::vector<double> raw_row;
        if (l == 0) {
            const auto& t = space.knotvec().knots();
            const int p = space.degree();
            raw_row.resize(space.raw_dim());
            for (std::size_t i = 0; i < raw_row.size(); ++i)
                raw_row[i] = (t[i + static_cast<std::size_t>(p) + 1] - t[i]) /
                             static_cast<double>(p + 1);
        } else {
            // int d^l b_i = d^{l-1} b_i(b) - d^{l-1} b_i(a)
            const auto right = space.knotvec().endpoint_functional(static_cast<int>(l) - 1, false);
            const auto left = space.knotvec().endpoint_functional(static_cast<int>(l) - 1, true);
            raw_row.resize(space.raw_dim());
            for (std::size_t i = 0; i < raw_row.size(); ++i) raw_row[i] = right[i] - left[i];
        }
        const auto row = space.sub_coeffs(raw_row);
        for (std::size_t i = 0; i < d; ++i) {
            aug(i, d + l) = row[i];
            aug(d + l, i) = row[i];
        }
        rhs[d + l] = (l == 0) ? function_integral(u, space.breaks())
                              : u.eval(b0, static_cast<int>(l) - 1) - u.eval(a0, static_cast<int>(l) - 1);
    }

    const auto sol = lu_solve(aug, rhs);
    ProjectionResult res{space, std::vector<double>(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(d)),
                         ProjectorKind::RitzVariational, q, 0.0};
    res.mean = spline_integral(space.knotvec(), space.raw_coeffs(res.coeffs));
    return res;
}

double error_norm(const FunctionSpec& u, const ProjectionResult& result, int l) {
    const QuadratureRule rule = space_rule(result.space, 10);
    double e2 = 0.0;
    for (std::size_t n = 0; n < rule.size(); ++n) {
        const double x = rule.points()[n];
        const double diff = u.eval(x, l) - result.space.eval(result.coeffs, x, l);
        e2 += rule.weights()[n] * diff * diff;
    }
    return std::sqrt(std::max(e2, 0.0));
}

double function_norm(const FunctionSpec& u, const BreakSequence& breaks, int l, int extra_nodes) {
    QuadratureRule rule(breaks.points(), static_cast<std::size_t>(extra_nodes));
    double e2 = 0.0;
    for (std::size_t n = 0; n < rule.size(); ++n) {
        const double v = u.eval(rule.points()[n], l);
        e2 += rule.weights()[n] * v * v;
    }
    return std::sqrt(e2);
}

BoundReport bound_report(const FunctionSpec& u, const SplineSpace& space, ProjectorKind kind,
                         int q, int r, int l) {
    BoundReport rep;
    const int p = space.degree();
    auto fail = [&](const std::string& why) {
        rep.hypothesis_ok = false;
        rep.violated = why;
        return rep;
    };
    if (r < 1) return fail("r >= 1");
    if (r > u.r_max) return fail("u has no derivative of order r");
    if (kind == ProjectorKind::L2) q = 0;

    const auto tag = space.family().tag;
    double width = space.breaks().h();
    switch (tag) {
        case ConstraintFamily::Tag::Full:
            if (kind == ProjectorKind::L2) {
                if (l != 0) return fail("l = 0 for the L2 bound");
                if (p < r - 1) return fail("p >= r-1");
            } else {
                if (q < 1 || q > r - 1) return fail("1 <= q <= r-1");
                if (l != q && l != q - 1) return fail("l in {q-1, q}");
                if (p < r - 1) return fail("p >= r-1");
            }
            break;
        case ConstraintFamily::Tag::Periodic:
            if (!u.periodic) return fail("u not periodic");
            if (l < 0 || l > q) return fail("0 <= l <= q");
            if (q > r - 1 && !(q == 0 && r >= 1)) return fail("q <= r-1");
            if (p < r - 1) return fail("p >= r-1");
            if (p < 2 * q - l - 1) return fail("p >= 2q-l-1");
            break;
        case ConstraintFamily::Tag::OddZero:
            if (kind != ProjectorKind::L2 || r != 1 || l != 0)
                return fail("reduced bounds hold for the L2 projection with r = 1, l = 0");
            if (p % 2 != 0) width = space.breaks().h_hat();
            break;
        case ConstraintFamily::Tag::ReducedOdd:
            if (kind != ProjectorKind::L2 || r != 1 || l != 0)
                return fail("reduced bounds hold for the L2 projection with r = 1, l = 0");
            break;
        default:
            return fail("no bound implemented for this family");
    }

    ProjectionResult proj = (kind == ProjectorKind::L2) ? l2_project(space, u)
                            : (kind == ProjectorKind::RitzRecursive)
                                ? ritz_project_recursive(space, u, q)
                                : ritz_project_variational(space, u, q);
    rep.error = error_norm(u, proj, l);
    rep.width = width;
    rep.bound = std::pow(width / std::numbers::pi, r - l) * function_norm(u, space.breaks(), r);
    rep.ratio = (rep.bound > 0.0) ? rep.error / rep.bound : 0.0;
    rep.hypothesis_ok = true;
    return rep;
}

BoundReport tensor_bound_report(const Function2D& u, const SplineSpace& sx, const SplineSpace& sy,
                                int r) {
    BoundReport rep;
    if (sx.degree() < r - 1 || sy.degree() < r - 1) {
        rep.violated = "p1, p2 >= r-1";
        return rep;
    }
    const QuadratureRule rx = space_rule(sx, 10);
    const QuadratureRule ry = space_rule(sy, 10);
    const std::size_t dx = sx.dim(), dy = sy.dim();

    Matrix bx(rx.size(), dx), by(ry.size(), dy);
    for (std::size_t n = 0; n < rx.size(); ++n) {
        const auto v = sx.eval_basis(rx.points()[n], 0);
        for (std::size_t i = 0; i < dx; ++i) bx(n, i) = v[i];
    }
    for (std::size_t n = 0; n < ry.size(); ++n) {
        const auto v = sy.eval_basis(ry.points()[n], 0);
        for (std::size_t j = 0; j < dy; ++j) by(n, j) = v[j];
    }

    // load matrix F_ij = intint u b_i(x) b_j(y)
    Matrix f(dx, dy);
    Matrix usamp(rx.size(), ry.size());
    for (std::size_t nx = 0; nx < rx.size(); ++nx)
        for (std::size_t ny = 0; ny < ry.size(); ++ny)
            usamp(nx, ny) = u.eval(rx.points()[nx], ry.points()[ny], 0, 0);
    for (std::size_t i = 0; i < dx; ++i) {
        for (std::size_t j = 0; j < dy; ++j) {
            double s = 0.0;
            for (std::size_t nx = 0; nx < rx.size(); ++nx) {
                if (bx(nx, i) == 0.0) continue;
                double sy_ = 0.0;
                for (std::size_t ny = 0; ny < ry.size(); ++ny)
                    sy_ += ry.weights()[ny] * by(ny, j) * usamp(nx, ny);
                s += rx.weights()[nx] * bx(nx, i) * sy_;
            }
            f(i, j) = s;
        }
    }

    // Kronecker-structured solve: two 1D mass systems
    const Matrix lmx = cholesky(gram_matrix(sx, 0));
    const Matrix lmy = cholesky(gram_matrix(sy, 0));
    Matrix c(dx, dy);
    for (std::size_t j = 0; j < dy; ++j) {
        const auto col = cholesky_solve(lmx, f.col(j));
        for (std::size_t i = 0; i < dx; ++i) c(i, j) = col[i];
    }
    for (std::size_t i = 0; i < dx; ++i) {
        const auto row = cholesky_solve(lmy, c.row(i));
        for (std::size_t j = 0; j < dy; ++j) c(i, j) = row[j];
    }

    double e2 = 0.0, nx2 = 0.0, ny2 = 0.0;
    for (std::size_t nx = 0; nx < rx.size(); ++nx) {
        for (std::size_t ny = 0; ny < ry.size(); ++ny) {
            double s = 0.0;
            for (std::size_t i = 0; i < dx; ++i) {
                if (bx(nx, i) == 0.0) continue;
                double t = 0.0;
                for (std::size_t j = 0; j < dy; ++j) t += c(i, j) * by(ny, j);
                s += bx(nx, i) * t;
            }
            const double w = rx.weights()[nx] * ry.weights()[ny];
            const double diff = usamp(nx, ny) - s;
            e2 += w * diff * diff;
            const double ux = u.eval(rx.points()[nx], ry.points()[ny], r, 0);
            const double uy = u.eval(rx.points()[nx], ry.points()[ny], 0, r);
            nx2 += w * ux * ux;
            ny2 += w * uy * uy;
        }
    }
    rep.width = std::max(sx.breaks().h(), sy.breaks().h());
    rep.error = std::sqrt(std::max(e2, 0.0));
    rep.bound = std::pow(rep.width / std::numbers::pi, r) * (std::sqrt(nx2) + std::sqrt(ny2));
    rep.ratio = (rep.bound > 0.0) ? rep.error / rep.bound : 0.0;
    rep.hypothesis_ok = true;
    return rep;
}

}  // namespace splinewidth
