#pragma once

#include "bilap/params.hpp"
#include "bilap/shooting.hpp"

namespace bilap {

/// The explicit homogeneous solution  u_s(r) = ell2^{1/(p-1)} r^{-beta}.
/// Exists only when ell2 > 0.
struct SingularSolution {
    ProblemParams params;
    double amplitude; // ell2^{1/(p-1)}
    double decay;     // beta

    double value(double r) const;
    /// Analytic fields (u, u', v = Lap u, v') at radius r.
    RadialState state(double r) const;
};

/// Throws std::domain_error("no singular solution: ell2 <= 0") when the
/// amplitude is undefined (beta between n-4 and n-2 flips one factor sign).
SingularSolution build_singular(const ProblemParams& params);

/// ell2 written as beta(beta+2)(beta+4-n)(beta+2-n): equal to the product
/// form in DerivedScalars after two sign flips. Kept for the equality check.
double remark_ell2(const ProblemParams& params);

/// Signed residual  Lap^2 u_s - r^a |u_s|^{p-1} u_s  at radius r, with both
/// Laplacians evaluated through the radial power rule
/// Lap(r^s) = s (s + n - 2) r^{s-2}. Identically zero for an exact amplitude.
double singular_residual(const SingularSolution& sol, double r);

/// Stability of u_s away from the origin: p * ell2 <= n^2 (n-4)^2 / 16.
bool is_stable_singular(const ProblemParams& params);

/// The singular solution wrapped as an analytic RadialSolution on
/// [r_lo, r_hi], for energy and quadrature checks.
RadialSolution singular_profile(const ProblemParams& params, double r_lo,
                                double r_hi);

} // namespace bilap
