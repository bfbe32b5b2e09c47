#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "bilap/shooting.hpp"

namespace bilap {

/// Which assembly of the weighted energy to evaluate. The two published
/// assemblies differ in a single boundary term (one carries the surface
/// integral itself, the other its radial derivative); only proof_display
/// satisfies the derivative lower bound, so it is the default.
enum class EnergyForm { proof_display, printed };

struct EnergyOptions {
    EnergyForm form = EnergyForm::proof_display;
    double quad_rel_tol = 1e-9;
    double quad_abs_tol = 0.0;
    int quad_max_panels = 4000;
};

/// Surface measure of the unit sphere in R^n: 2 pi^(n/2) / Gamma(n/2).
double unit_sphere_area(int n);

/// Weighted monotonicity energy E(r; 0, u) of a radial solution. The volume
/// term is integrated by adaptive quadrature over [grid start, r]; all
/// surface integrals reduce to unit_sphere_area * r^(n-1) times pointwise
/// radial values, tangential-gradient terms vanish identically, and the d/dr
/// terms are expanded analytically through the product rule with u_rr
/// recovered from the equation. Throws std::out_of_range("r outside grid")
/// and std::runtime_error("quadrature failed to converge").
double energy(const RadialSolution& sol, double r, const EnergyOptions& opts = {});

/// The rescaled volume energy
///   tau^{(4(p+1)+2a)/(p-1) - n} * Int_{B_tau} [ (1/2)(Lap u)^2
///       - |x|^a |u|^{p+1}/(p+1) ],
/// i.e. exactly the volume-term component of energy() at r = tau.
double hat_energy(const RadialSolution& sol, double tau,
                  const EnergyOptions& opts = {});

/// Pointwise lower bound for dE/dr:
///   c(n,p,a) r^{-n+2+(8+2a)/(p-1)} * Surf(beta u/r + u_r)^2
/// with the surface integral reduced to its radial value.
double energy_derivative_bound(const RadialSolution& sol, double r);

/// Rescaling u_tau(x) = tau^beta u(tau x): the grid maps r -> r/tau and the
/// fields pick up tau^beta .. tau^(beta+3). Shares the underlying dense data,
/// so repeated applications compose exactly.
RadialSolution blow_down(const RadialSolution& sol, double tau);

struct EnergyTrace {
    std::vector<double> radii;
    std::vector<double> E;
    std::vector<double> dE_bound;
    std::vector<double> dE_estimate; // central differences along radii
    std::vector<double> tolerance;   // 10x differencing error estimate
    bool pass = false;
    double worst_margin = 0.0; // min over verdict points of dE - bound + tol
};

/// Evaluate E along the given radii, differentiate by central differences,
/// and check dE/dr >= dE_bound - tolerance at every interior point where a
/// truncation estimate is available (the tolerance combines a Richardson
/// estimate of the differencing error with the quadrature noise floor).
/// Requires p >= (n+4+2a)/(n-4) and at least five radii.
EnergyTrace monotonicity_check(const RadialSolution& sol,
                               const std::vector<double>& radii,
                               const EnergyOptions& opts = {});

/// Least-squares slope of log Int_{B_R}(|Lap u|^2 + |x|^a|u|^{p+1}) against
/// log R over the trailing tail_fraction of the grid radii. Returns nullopt
/// when the integral vanishes identically (slope undefined); diagnostic only.
std::optional<double> bulk_energy_slope(const RadialSolution& sol,
                                        double tail_fraction = 0.5,
                                        const EnergyOptions& opts = {});

/// CSV columns r,E,dE_bound,dE_estimate at 17 significant digits.
void write_trace_csv(const EnergyTrace& trace, std::ostream& out);

} // namespace bilap
