#pragma once

#include "splinewidth/functions.hpp"
#include "splinewidth/linalg.hpp"
#include "splinewidth/space.hpp"

#include <functional>
#include <string>
#include <vector>

namespace splinewidth {

enum class ProjectorKind { L2, RitzRecursive, RitzVariational };

struct ProjectionResult {
    SplineSpace space;
    std::vector<double> coeffs;  // in the subspace basis
    ProjectorKind kind = ProjectorKind::L2;
    int q = 0;
    double mean = 0.0;  // achieved integral of the projection
};

/// Symmetric matrix of (d^q b_i, d^q b_j) over the subspace basis, assembled
/// with an exact composite Gauss rule.
Matrix gram_matrix(const SplineSpace& space, int q);

/// Load vector (f, d^q b_i) with an oversampled rule (p + extra nodes per
/// element).
std::vector<double> load_vector(const SplineSpace& space, const std::function<double(double)>& f,
                                int q = 0, int extra_nodes = 10);

ProjectionResult l2_project(const SplineSpace& space, const FunctionSpec& u);

/// The commuting Ritz projection defined by recursion: L2-project the q-th
/// derivative onto the q-times-differentiated space, then antidifferentiate,
/// fixing each integration constant by the mean condition (periodic spaces
/// use the zero-mean periodic antiderivative plus its kernel constant).
/// Requires maximal smoothness and a Full or Periodic family.
ProjectionResult ritz_project_recursive(const SplineSpace& space, const FunctionSpec& u, int q);

/// Same projection from its variational characterization: order-q stiffness
/// system plus one mean-value Lagrange multiplier.
ProjectionResult ritz_project_variational(const SplineSpace& space, const FunctionSpec& u, int q);

/// || d^l (u - s) || over the domain, with an oversampled rule.
double error_norm(const FunctionSpec& u, const ProjectionResult& result, int l);

/// || d^l u || by quadrature.
double function_norm(const FunctionSpec& u, const BreakSequence& breaks, int l,
                     int extra_nodes = 10);

struct BoundReport {
    double error = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    double width = 0.0;  // h or h-hat, whichever the theorem uses
    bool hypothesis_ok = false;
    std::string violated;  // names the failed condition when !hypothesis_ok
};

/// Evaluates one instance of the projection error bounds
/// || d^l (u - Q u) || <= (width/pi)^{r-l} || d^r u ||, with the width and
/// hypothesis set selected by the space family and projector kind.
BoundReport bound_report(const FunctionSpec& u, const SplineSpace& space, ProjectorKind kind,
                         int q, int r, int l);

/// Bivariate test function with exact mixed derivatives.
struct Function2D {
    std::string name;
    std::function<double(double, double, int, int)> eval;  // (x, y, lx, ly)
};

/// Tensor-product L2 projection error against the additive bound
/// (h/pi)^r (||dx^r u|| + ||dy^r u||).
BoundReport tensor_bound_report(const Function2D& u, const SplineSpace& sx, const SplineSpace& sy,
                                int r);

}  // namespace splinewidth
