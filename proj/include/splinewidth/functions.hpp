#pragma once

#include <functional>
#include <string>

namespace splinewidth {

/// A smooth test function with exact derivatives: eval(x, l) is the l-th
/// derivative at x, available for 0 <= l <= r_max.
struct FunctionSpec {
    std::string name;
    int r_max = 0;
    bool periodic = false;  // all derivatives < r_max match at 0 and 1
    std::function<double(double, int)> eval;

    /// Derivative as a FunctionSpec (shifts the available orders down).
    FunctionSpec derivative() const;
};

/// Catalog lookup by name: sin_m, cos_m (frequency 2*pi*m, periodic on
/// (0,1)), poly_d (x^d), exp, runge. Throws on unknown names.
FunctionSpec function_catalog(const std::string& name);

}  // namespace splinewidth
