#pragma once

#include "splinewidth/space.hpp"

#include <string>
#include <vector>

namespace splinewidth {

/// Discrete Galerkin spectrum of the periodic Laplacian on a spline space,
/// paired index-wise with the exact eigenvalues nu_0 = 0,
/// nu_{2i-1} = nu_{2i} = (2 pi i)^2.
struct SpectrumResult {
    std::vector<double> nu_h;      // ascending
    std::vector<double> nu_exact;  // same length
    std::vector<double> rel_err;   // nu_h[j]/nu_exact[j] - 1 for j >= 1 (index 0 unused)
    Matrix eigenvectors;           // columns, mass-orthonormal
    std::string space_descriptor;
};

/// Exact periodic Laplacian eigenvalue with index j (ascending, 0-based).
double exact_periodic_eigenvalue(std::size_t j);

/// Solves (d psi_h, d phi) = nu_h (psi_h, phi) on the space. The space must
/// contain constants and carry active periodic constraints.
SpectrumResult laplace_spectrum(const SplineSpace& space);

struct OutlierReport {
    std::size_t count = 0;
    double threshold = 1.0;
    std::vector<double> rel_err;
    std::size_t dim = 0;
};

/// Counts the poorly approximated modes at the top of the spectrum. An
/// eigenvalue is an outlier when its relative error stands clear of the rest
/// of the spectrum: with the errors sorted in decreasing order, the count is
/// the longest prefix in which every entry exceeds its successor by more than
/// the factor 1 + threshold. With the maximally smooth space under k+1
/// periodicity constraints the expected count is p-k-1.
OutlierReport outlier_report(const SplineSpace& space, double threshold = 1.0);

struct BranchProfile {
    std::vector<double> abscissa;  // j/dim in (0,1]
    std::vector<double> rel_err;
    std::vector<double> smoothed;
    std::size_t branches = 0;
    std::size_t dim = 0;
};

/// Rescaled eigenvalue-error curve for the C^k periodic space of dimension
/// n(p-k). A multiple of n is counted as a branch boundary when the
/// median-smoothed error curve jumps upward by more than 50% across it.
BranchProfile branch_profile(const SplineSpace& space, std::size_t n);

struct EigfunctionError {
    double angle = 0.0;  // principal angle between exact and discrete 2D eigenspaces
    bool cluster_ok = true;
};

/// Subspace-angle error for the i-th double eigenvalue pair
/// {sin(2 pi i x), cos(2 pi i x)}, i >= 1.
EigfunctionError galerkin_eigfunction_error(const SplineSpace& space, std::size_t pair_index);

struct ConjectureRow {
    int p = 0;
    std::string function;
    double error = 0.0;
};

/// Error table || f - Q_p^q f || with f = sin(2 pi m x) for even p and
/// cos(2 pi m x) for odd p, over uniform periodic spaces of dimension 2m.
/// Exploratory: reports evidence only.
std::vector<ConjectureRow> conjecture_explorer(std::size_t m, int q, const std::vector<int>& degrees);

struct InverseInequalityReport {
    double ratio = 0.0;  // sup ||s'|| / ||s||
    double bound = 0.0;  // 2 sqrt(3) / h_min
    double slack = 0.0;  // bound / ratio
    std::string space_descriptor;
};

/// Extremal derivative/value ratio from the generalized eigenproblem of
/// stiffness vs mass. slack >= 1 is guaranteed only for the conforming
/// families (periodic, the three boundary families, reduced).
InverseInequalityReport inverse_report(const SplineSpace& space);

}  // namespace splinewidth
