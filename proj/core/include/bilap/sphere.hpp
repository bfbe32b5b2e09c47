#pragma once

#include <span>
#include <vector>

#include "bilap/params.hpp"

namespace bilap {

enum class SphereConclusion {
    all_positive,     // only the trivial angular profile survives
    mass_nonpositive, // the constant mode is admissible
};

/// Coefficients of the combined quadratic form on the sphere:
///   Int (p-1)|Lap_th w|^2 + (p ell1 - n(n-4)/2)|grad_th w|^2
///       + (p ell2 - n^2(n-4)^2/16) w^2.
struct QuadraticFormReport {
    ProblemParams params;
    double coeff_bilaplacian; // p - 1
    double coeff_gradient;    // p ell1 - n(n-4)/2
    double coeff_mass;        // p ell2 - n^2(n-4)^2/16
    SphereConclusion conclusion;
};

QuadraticFormReport combined_coefficients(const ProblemParams& params);

/// Residual ell2 w - w^p at the constant angular profile w = ell2^{1/(p-1)};
/// algebraically zero. Propagates the ell2 <= 0 failure from the amplitude.
double constant_mode_residual(const ProblemParams& params);

struct SphereScanRow {
    int n;
    double a;
    double p;
    double coeff_bilaplacian;
    double coeff_gradient;
    double coeff_mass;
    SphereConclusion conclusion;
};

/// Sample the combined coefficients for each (n, a) over
/// p in (p_crit, p_cap] with spacing p_step, in sorted (n, a, p) order.
std::vector<SphereScanRow> scan_grid(int n_lo, int n_hi,
                                     std::span<const double> a_values,
                                     double p_step, double p_cap = 100.0);

} // namespace bilap
