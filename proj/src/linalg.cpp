#include "splinewidth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace splinewidth {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::runtime_error("matrix product dimension mismatch");
    Matrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += aik * other(k, j);
        }
    }
    return r;
}

std::vector<double> Matrix::operator*(const std::vector<double>& x) const {
    if (cols_ != x.size()) throw std::runtime_error("matrix-vector dimension mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> Matrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<double> Matrix::col(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

double Matrix::norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double Matrix::asymmetry() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(std::vector<double>& x, double alpha) {
    for (double& v : x) v *= alpha;
}

Matrix cholesky(const Matrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::runtime_error("cholesky: matrix not square");
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= 0.0 || !std::isfinite(d))
            throw std::runtime_error("not positive definite at pivot " + std::to_string(j));
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& rhs) {
    const std::size_t n = l.rows();
    std::vector<double> y(rhs);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) y[i] -= l(i, k) * y[k];
        y[i] /= l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) y[ii] -= l(k, ii) * y[k];
        y[ii] /= l(ii, ii);
    }
    return y;
}

std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& rhs) {
    return cholesky_solve(cholesky(a), rhs);
}

std::vector<double> lu_solve(Matrix a, std::vector<double> rhs) {
    const std::size_t n = a.rows();
    if (a.cols() != n || rhs.size() != n) throw std::runtime_error("lu_solve: dimension mismatch");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                piv = i;
            }
        }
        if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(rhs[k], rhs[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / a(k, k);
            a(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
            rhs[i] -= m * rhs[k];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) rhs[ii] -= a(ii, j) * rhs[j];
        rhs[ii] /= a(ii, ii);
    }
    return rhs;
}

namespace {

double offdiag_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

SymEigResult sym_eig(const Matrix& a_in) {
    const std::size_t n = a_in.rows();
    if (a_in.cols() != n) throw std::runtime_error("sym_eig: matrix not square");
    const double anorm = a_in.norm();
    if (a_in.asymmetry() > 1e-12 * std::max(anorm, 1e-300))
        throw std::runtime_error("sym_eig: input not symmetric");

    Matrix a = a_in;
    Matrix v = Matrix::identity(n);
    SymEigResult res;
    if (n == 0) return res;

    const double tol = 1e-12 * std::max(anorm, 1e-300);
    const int max_sweeps = 60;
    int sweep = 0;
    while (offdiag_norm(a) > tol && sweep < max_sweeps) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
        ++sweep;
    }
    res.converged = offdiag_norm(a) <= tol;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
    res.eigenvalues.resize(n);
    res.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        res.eigenvalues[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) res.eigenvectors(i, j) = v(i, order[j]);
    }
    return res;
}

SymEigResult gen_sym_eig(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows();
    Matrix l = cholesky(b);
    // C = L^{-1} A L^{-T}
    Matrix c(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> col = a.col(j);
        // forward substitution L y = col
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < i; ++k) col[i] -= l(i, k) * col[k];
            col[i] /= l(i, i);
        }
        for (std::size_t i = 0; i < n; ++i) c(i, j) = col[i];
    }
    // now rows: C = (L^{-1} A) L^{-T}  => apply forward substitution from the right
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> r = c.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) r[j] -= l(j, k) * r[k];
            r[j] /= l(j, j);
        }
        for (std::size_t j = 0; j < n; ++j) c(i, j) = r[j];
    }
    // symmetrize rounding noise
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = 0.5 * (c(i, j) + c(j, i));
            c(i, j) = c(j, i) = m;
        }
    SymEigResult res = sym_eig(c);
    // back-transform eigenvectors: x = L^{-T} y  (B-orthonormal)
    for (std::size_t jc = 0; jc < n; ++jc) {
        std::vector<double> y = res.eigenvectors.col(jc);
        for (std::size_t ii = n; ii-- > 0;) {
            for (std::size_t k = ii + 1; k < n; ++k) y[ii] -= l(k, ii) * y[k];
            y[ii] /= l(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) res.eigenvectors(i, jc) = y[i];
    }
    return res;
}

PowerIterationResult power_iteration(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
    std::size_t dim, double tol, int max_iter, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(dim), y(dim);
    for (double& v : x) v = dist(rng);
    double nx = norm2(x);
    if (nx == 0.0) {
        x[0] = 1.0;
        nx = 1.0;
    }
    scale(x, 1.0 / nx);

    PowerIterationResult res;
    double prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        apply(x, y);
        const double rayleigh = dot(x, y);
        const double ny = norm2(y);
        if (ny == 0.0) {  // x in the kernel; restart from a fresh vector
            for (double& v : x) v = dist(rng);
            scale(x, 1.0 / norm2(x));
            continue;
        }
        x = y;
        scale(x, 1.0 / ny);
        res.iterations = it + 1;
        res.eigenvalue = rayleigh;
        if (it > 0 && std::abs(rayleigh - prev) <= tol * std::max(std::abs(rayleigh), 1e-300)) {
            res.converged = true;
            res.eigenvector = x;
            return res;
        }
        prev = rayleigh;
    }
    res.eigenvector = x;
    return res;
}

Matrix null_space(const Matrix& c, double rank_tol) {
    const std::size_t m = c.cols();  // ambient dimension
    const std::size_t k = c.rows();  // number of constraints
    if (k == 0) return Matrix::identity(m);

    // Householder QR with column pivoting of A = C^T (m x k).
    Matrix a = c.transposed();
    Matrix q = Matrix::identity(m);
    std::vector<double> colnorm(k);
    for (std::size_t j = 0; j < k; ++j) colnorm[j] = norm2(a.col(j));

    const std::size_t steps = std::min(m, k);
    std::vector<double> rdiag;
    for (std::size_t s = 0; s < steps; ++s) {
        std::size_t piv = s;
        double best = 0.0;
        for (std::size_t j = s; j < k; ++j) {
            double nj = 0.0;
            for (std::size_t i = s; i < m; ++i) nj += a(i, j) * a(i, j);
            if (nj > best) {
                best = nj;
                piv = j;
            }
        }
        if (piv != s)
            for (std::size_t i = 0; i < m; ++i) std::swap(a(i, s), a(i, piv));

        double alpha = std::sqrt(best);
        if (alpha == 0.0) break;
        if (a(s, s) > 0.0) alpha = -alpha;
        std::vector<double> v(m, 0.0);
        for (std::size_t i = s; i < m; ++i) v[i] = a(i, s);
        v[s] -= alpha;
        const double vnorm2 = dot(v, v);
        if (vnorm2 == 0.0) break;
        // apply H = I - 2 v v^T / (v^T v) to A (left) and accumulate into Q
        for (std::size_t j = s; j < k; ++j) {
            double t = 0.0;
            for (std::size_t i = s; i < m; ++i) t += v[i] * a(i, j);
            t *= 2.0 / vnorm2;
            for (std::size_t i = s; i < m; ++i) a(i, j) -= t * v[i];
        }
        for (std::size_t j = 0; j < m; ++j) {
            double t = 0.0;
            for (std::size_t i = s; i < m; ++i) t += v[i] * q(i, j);
            t *= 2.0 / vnorm2;
            for (std::size_t i = s; i < m; ++i) q(i, j) -= t * v[i];
        }
        rdiag.push_back(std::abs(a(s, s)));
    }

    std::size_t rank = 0;
    const double thresh = rdiag.empty() ? 0.0 : rank_tol * rdiag[0];
    for (double d : rdiag)
        if (d > thresh) ++rank;

    // rows rank..m-1 of Q (= last columns of the accumulated orthogonal
    // factor) span the null space of C
    Matrix basis(m - rank, m);
    for (std::size_t i = rank; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) basis(i - rank, j) = q(i, j);
    return basis;
}

}  // namespace splinewidth
