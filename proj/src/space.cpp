#include "splinewidth/space.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace splinewidth {

ConstraintFamily ConstraintFamily::boundary(int i) {
    switch (i) {
        case 0: return even_zero();
        case 1: return odd_zero();
        case 2: return mixed();
        default: throw std::invalid_argument("boundary family index must be 0, 1 or 2");
    }
}

std::string ConstraintFamily::name() const {
    switch (tag) {
        case Tag::Full: return "full";
        case Tag::Periodic: return "periodic(" + std::to_string(order) + ")";
        case Tag::EvenZero: return "even_zero";
        case Tag::OddZero: return "odd_zero";
        case Tag::Mixed: return "mixed";
        case Tag::ReducedOdd: return "reduced_odd";
    }
    return "?";
}

ConstraintFamily ConstraintFamily::parse(const std::string& name) {
    if (name == "full") return full();
    if (name == "even_zero") return even_zero();
    if (name == "odd_zero") return odd_zero();
    if (name == "mixed") return mixed();
    if (name == "reduced_odd") return reduced_odd();
    if (name == "boundary0") return boundary(0);
    if (name == "boundary1") return boundary(1);
    if (name == "boundary2") return boundary(2);
    if (name.rfind("periodic", 0) == 0) {
        const auto lp = name.find('(');
        const auto rp = name.find(')');
        if (lp != std::string::npos && rp != std::string::npos && rp > lp + 1)
            return periodic(std::stoi(name.substr(lp + 1, rp - lp - 1)));
        return periodic(-1);  // resolved to p by build_subspace
    }
    throw std::invalid_argument("unknown constraint family: " + name);
}

Matrix ConstraintFamily::rows(const ExtendedKnotVector& kv) const {
    const int p = kv.degree();
    const std::size_t rd = kv.dim();
    std::vector<std::vector<double>> cons;
    auto add_zero = [&](int alpha, bool left) { cons.push_back(kv.endpoint_functional(alpha, left)); };
    auto add_periodic = [&](int alpha) {
        auto row = kv.endpoint_functional(alpha, true);
        const auto right = kv.endpoint_functional(alpha, false);
        for (std::size_t j = 0; j < rd; ++j) row[j] -= right[j];
        cons.push_back(std::move(row));
    };
    switch (tag) {
        case Tag::Full:
            break;
        case Tag::Periodic: {
            const int m = (order > 0) ? order : p;
            for (int alpha = 0; alpha < m; ++alpha) add_periodic(alpha);
            break;
        }
        case Tag::EvenZero:
            for (int alpha = 0; alpha <= p; alpha += 2) {
                add_zero(alpha, true);
                add_zero(alpha, false);
            }
            break;
        case Tag::OddZero:
            for (int alpha = 1; alpha <= p; alpha += 2) {
                add_zero(alpha, true);
                add_zero(alpha, false);
            }
            break;
        case Tag::Mixed:
            for (int alpha = 0; alpha <= p; alpha += 2) add_zero(alpha, true);
            for (int alpha = 1; alpha <= p; alpha += 2) add_zero(alpha, false);
            break;
        case Tag::ReducedOdd:
            for (int alpha = 1; alpha < p; alpha += 2) {
                add_zero(alpha, true);
                add_zero(alpha, false);
            }
            break;
    }
    Matrix c(cons.size(), rd);
    for (std::size_t i = 0; i < cons.size(); ++i) {
        const double n = norm2(cons[i]);
        for (std::size_t j = 0; j < rd; ++j) c(i, j) = cons[i][j] / (n > 0.0 ? n : 1.0);
    }
    return c;
}

SplineSpace::SplineSpace(BreakSequence breaks, int degree, int smoothness, ConstraintFamily family)
    : knotvec_(breaks, degree, smoothness), family_(family) {
    if (family_.tag == ConstraintFamily::Tag::Periodic && family_.order <= 0)
        family_.order = degree;
    const Matrix c = family_.rows(knotvec_);
    basis_map_ = null_space(c);
    if (basis_map_.rows() == 0)
        throw std::runtime_error("constraint family leaves an empty spline space");

    // every basis row must satisfy all constraints
    for (std::size_t i = 0; i < basis_map_.rows(); ++i) {
        const auto row = basis_map_.row(i);
        for (std::size_t r = 0; r < c.rows(); ++r) {
            const double viol = std::abs(dot(c.row(r), row));
            if (viol > 1e-10 * norm2(row))
                throw std::runtime_error("subspace basis violates its constraints");
        }
    }
}

std::vector<double> SplineSpace::eval_basis(double x, int deriv) const {
    const auto raw = knotvec_.eval_all(x, deriv);
    return basis_map_ * raw;
}

double SplineSpace::eval(const std::vector<double>& coeffs, double x, int deriv) const {
    const auto vals = eval_basis(x, deriv);
    return dot(coeffs, vals);
}

std::vector<double> SplineSpace::raw_coeffs(const std::vector<double>& sub_coeffs) const {
    std::vector<double> raw(raw_dim(), 0.0);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < raw_dim(); ++j) raw[j] += sub_coeffs[i] * basis_map_(i, j);
    return raw;
}

std::vector<double> SplineSpace::sub_coeffs(const std::vector<double>& raw) const {
    return basis_map_ * raw;
}

std::string SplineSpace::to_json() const {
    nlohmann::json j;
    j["p"] = degree();
    j["k"] = smoothness();
    j["family"] = family_.name();
    j["breaks"] = nlohmann::json::parse(breaks().to_json());
    return j.dump();
}

SplineSpace SplineSpace::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BreakSequence breaks = BreakSequence::from_json(j.at("breaks").dump());
    return build_subspace(breaks, j.at("p").get<int>(), j.at("k").get<int>(),
                          ConstraintFamily::parse(j.at("family").get<std::string>()));
}

SplineSpace build_subspace(const BreakSequence& breaks, int degree, int smoothness,
                           const ConstraintFamily& family) {
    return SplineSpace(breaks, degree, smoothness, family);
}

}  // namespace splinewidth
