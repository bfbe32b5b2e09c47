#pragma once

#include <array>
#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include "bilap/params.hpp"

namespace bilap {

/// One sample of the radial first-order system. v is the Laplacian of u,
/// v = u'' + (n-1)u'/r; dv its radial derivative.
struct RadialState {
    double r;
    double u;
    double du;
    double v;
    double dv;
};

struct ShootingConfig {
    double alpha = 1.0;       // u(0)
    double b = 0.0;           // v(0)
    double r_start = 1e-4;    // series handoff radius
    double r_max = 10.0;      // integration horizon
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double blowup_bound = 1e8;
};

enum class Termination { reached_horizon, blew_up };

/// Radial solution carrier: the accepted-step grid plus dense evaluation
/// between nodes (quintic Hermite on integrated segments, the exact profile
/// on synthetic solutions). Blow-down rescalings share the underlying data
/// and compose exactly.
class RadialSolution {
public:
    const ProblemParams& params() const { return params_; }
    const std::vector<RadialState>& grid() const { return grid_; }
    Termination termination() const { return termination_; }
    /// Only meaningful when termination() == blew_up.
    double blowup_radius() const { return blowup_radius_; }

    double r_min() const { return grid_.front().r; }
    double r_max() const { return grid_.back().r; }

    /// Dense state at radius r; throws std::out_of_range("r outside grid").
    RadialState at(double r) const;

    /// Radial derivative of the dense state: (u', u'', v', v'') at r.
    /// Exposed for residual checks and the energy derivative terms.
    std::array<double, 4> state_derivative(double r) const;

    /// Largest scaled residual |d(state)/dr - rhs| over probe points per
    /// segment; ~O(tolerance) for integrated solutions, large for synthetic
    /// profiles that do not solve the equation.
    double max_ode_residual(int probes_per_segment = 3) const;

    bool is_synthetic() const;

    // --- construction -----------------------------------------------------
    struct Dense; // integrated segments or analytic profile
    RadialSolution(ProblemParams params, std::shared_ptr<const Dense> data,
                   double tau, Termination term, double blowup_radius);

private:
    ProblemParams params_;
    std::shared_ptr<const Dense> data_;
    double tau_;  // blow-down scale factor (1 = untransformed)
    double beta_; // cached decay exponent of params_
    Termination termination_;
    double blowup_radius_;
    std::vector<RadialState> grid_;

    friend RadialSolution blow_down(const RadialSolution&, double);
};

/// Leading-order series expansion at the origin, evaluated at r0 > 0:
///   u  = alpha + b r0^2/(2n),  u'  = b r0/n,
///   v  = b + s0 r0^(a+2)/((a+2)(a+n)),  v' = s0 r0^(a+1)/(a+n),
/// with s0 = |alpha|^(p-1) alpha.
RadialState series_start(double alpha, double b, const ProblemParams& params,
                         double r0);

/// Integrate the radial system from a series start at r_start out to r_max
/// with an adaptive Dormand-Prince 5(4) pair and quintic-Hermite dense
/// output. Terminates early (Termination::blew_up) when |u| or |v| exceeds
/// the blow-up bound; a stalled controller throws
/// std::runtime_error("step size underflow").
RadialSolution integrate(const ShootingConfig& config, const ProblemParams& params);

/// Same integrator, but starting from explicit state data (e.g. the singular
/// solution sampled at init.r).
RadialSolution continue_from(const RadialState& init, const ProblemParams& params,
                             double r_max, double rel_tol = 1e-10,
                             double abs_tol = 1e-12, double blowup_bound = 1e8);

/// Wrap an analytic radial profile (u, u', u'', v, v', v'') as a
/// RadialSolution on [r_lo, r_hi]. Dense evaluation calls the profile
/// directly; the grid holds `samples` log-spaced nodes. Used for exact
/// singular solutions and for non-solution test data.
RadialSolution from_profile(const ProblemParams& params,
                            std::function<std::array<double, 6>(double)> profile,
                            double r_lo, double r_hi, int samples = 200);

/// Least-squares slope of log|u| against log r over the trailing
/// `tail_fraction` of the grid nodes. Throws
/// std::domain_error("tail contains zeros or sign changes") when undefined.
double estimate_decay(const RadialSolution& sol, double tail_fraction = 0.25);

/// Grid written as CSV columns r,u,du,v,dv at 17 significant digits.
void write_grid_csv(const RadialSolution& sol, std::ostream& out);

} // namespace bilap
