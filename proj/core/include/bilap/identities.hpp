#pragma once

#include "bilap/shooting.hpp"
#include "bilap/testfunc.hpp"

namespace bilap {

struct IdentityOptions {
    double quad_rel_tol = 1e-11;
    double quad_abs_tol = 0.0;
    int quad_max_panels = 6000;
};

/// Pohozaev defect at radius R: the volume integral
///   Int_{B_R} [ (n-4)/2 (Lap u)^2 - (n+a)/(p+1) |x|^a |u|^{p+1} ]
/// minus the boundary flux
///   Surf_{B_R} [ R/2 (Lap u)^2 - R^{1+a}/(p+1) |u|^{p+1}
///                + R u_r (Lap u)_r - Lap u (u_r + R u_rr) ],
/// normalized by max(|lhs|, |rhs|, 1e-300). Vanishes on solutions of the
/// equation and only there. The checked form verifies the grid actually
/// solves the equation (ODE residual below 1e-6) and otherwise throws
/// std::domain_error("not a solution grid").
double pohozaev_defect(const RadialSolution& sol, double R,
                       const IdentityOptions& opts = {});
double pohozaev_defect_unchecked(const RadialSolution& sol, double R,
                                 const IdentityOptions& opts = {});

/// Normalized defect of the integration-by-parts expansion of
/// Int (Lap^2 zeta) zeta eta^2 against Int [Lap(zeta eta)]^2 plus its
/// gradient and cutoff correction terms, on radial profiles in R^n.
/// Requires eta compactly supported.
double biharmonic_cutoff_identity_defect(const RadialProfile& zeta,
                                         const RadialProfile& eta, int n,
                                         const IdentityOptions& opts = {});

/// Normalized defect of
///   2 Int |grad zeta|^2 |grad eta|^2
///     = Int [ 2 zeta (-Lap zeta) |grad eta|^2 + zeta^2 Lap(|grad eta|^2) ].
double gradient_cutoff_identity_defect(const RadialProfile& zeta,
                                       const RadialProfile& eta, int n,
                                       const IdentityOptions& opts = {});

/// Int |Lap psi|^2 / Int psi^2 |x|^{-4} for a radial profile in R^n; always
/// at least n^2 (n-4)^2 / 16. Throws
/// std::domain_error("denominator integral diverged") when the weighted
/// integral fails to converge.
double hardy_rellich_ratio(const RadialProfile& psi, int n,
                           const IdentityOptions& opts = {});

} // namespace bilap
