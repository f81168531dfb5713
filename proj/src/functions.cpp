#include "splinewidth/functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace splinewidth {

FunctionSpec FunctionSpec::derivative() const {
    FunctionSpec d;
    d.name = name + "'";
    d.r_max = r_max - 1;
    d.periodic = periodic;
    auto base = eval;
    d.eval = [base](double x, int l) { return base(x, l + 1); };
    return d;
}

namespace {

double runge_deriv(double x, int l) {
    // Taylor-jet reciprocal of g(x) = 1 + 25 x^2; the l-th derivative is
    // l! times the l-th jet coefficient of 1/g.
    std::vector<double> g(static_cast<std::size_t>(l) + 1, 0.0);
    g[0] = 1.0 + 25.0 * x * x;
    if (l >= 1) g[1] = 50.0 * x;
    if (l >= 2) g[2] = 25.0;
    std::vector<double> h(static_cast<std::size_t>(l) + 1, 0.0);
    h[0] = 1.0 / g[0];
    for (int n = 1; n <= l; ++n) {
        double s = 0.0;
        for (int k = 1; k <= n; ++k) s += g[static_cast<std::size_t>(k)] * h[static_cast<std::size_t>(n - k)];
        h[static_cast<std::size_t>(n)] = -s / g[0];
    }
    double fact = 1.0;
    for (int k = 2; k <= l; ++k) fact *= k;
    return fact * h[static_cast<std::size_t>(l)];
}

}  // namespace

FunctionSpec function_catalog(const std::string& name) {
    FunctionSpec f;
    f.name = name;
    if (name.rfind("sin_", 0) == 0) {
        const double omega = 2.0 * std::numbers::pi * std::stod(name.substr(4));
        f.r_max = 24;
        f.periodic = true;
        f.eval = [omega](double x, int l) {
            const double phase = omega * x + 0.5 * std::numbers::pi * l;
            return std::pow(omega, l) * std::sin(phase);
        };
        return f;
    }
    if (name.rfind("cos_", 0) == 0) {
        const double omega = 2.0 * std::numbers::pi * std::stod(name.substr(4));
        f.r_max = 24;
        f.periodic = true;
        f.eval = [omega](double x, int l) {
            const double phase = omega * x + 0.5 * std::numbers::pi * l;
            return std::pow(omega, l) * std::cos(phase);
        };
        return f;
    }
    if (name.rfind("poly_", 0) == 0) {
        const int d = std::stoi(name.substr(5));
        f.r_max = 24;
        f.eval = [d](double x, int l) {
            if (l > d) return 0.0;
            double c = 1.0;
            for (int k = 0; k < l; ++k) c *= (d - k);
            return c * std::pow(x, d - l);
        };
        return f;
    }
    if (name == "exp") {
        f.r_max = 24;
        f.eval = [](double x, int) { return std::exp(x); };
        return f;
    }
    if (name == "runge") {
        f.r_max = 12;
        f.eval = runge_deriv;
        return f;
    }
    throw std::invalid_argument("unknown function: " + name);
}

}  // namespace splinewidth
