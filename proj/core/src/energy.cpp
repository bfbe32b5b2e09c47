#include "bilap/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bilap/quadrature.hpp"

namespace bilap {

namespace {

struct Pieces {
    double hat;  // rescaled volume term
    double P1;   // omega r^{2 beta} u^2
    double P1p;  // d/dr of P1
    double P2p;  // d/dr of (r P1)
    double P3p;  // d/dr of omega r^{2 beta} (beta u/r + u_r)^2
};

Pieces boundary_pieces(const RadialSolution& sol, double r) {
    const auto& pp = sol.params();
    const DerivedScalars ds = derive_scalars(pp);
    const double n = pp.n, beta = ds.beta;
    const double omega = unit_sphere_area(pp.n);

    const RadialState st = sol.at(r);
    const double u = st.u, ur = st.du, v = st.v;
    const double urr = v - (n - 1.0) * ur / r;

    Pieces pc{};
    const double rpow = std::pow(r, 2.0 * beta);
    pc.P1 = omega * rpow * u * u;
    pc.P1p = omega * (2.0 * beta * rpow / r * u * u + 2.0 * rpow * u * ur);
    pc.P2p = pc.P1 + r * pc.P1p;
    const double W = beta * u / r + ur;
    const double Wp = beta * (ur / r - u / (r * r)) + urr;
    pc.P3p = omega * (2.0 * beta * rpow / r * W * W + 2.0 * rpow * W * Wp);
    return pc;
}

double volume_term(const RadialSolution& sol, double r, const EnergyOptions& opts) {
    const auto& pp = sol.params();
    const DerivedScalars ds = derive_scalars(pp);
    const double n = pp.n, a = pp.a, p = pp.p;
    const double omega = unit_sphere_area(pp.n);

    const double lo = sol.r_min();
    if (!(r >= lo && r <= sol.r_max()))
        throw std::out_of_range("r outside grid");

    quadrature::Options qopts;
    qopts.rel_tol = opts.quad_rel_tol;
    qopts.abs_tol = opts.quad_abs_tol;
    qopts.max_panels = opts.quad_max_panels;
    const double integral = quadrature::integrate_or_throw(
        [&](double rho) {
            const RadialState st = sol.at(rho);
            return (0.5 * st.v * st.v -
                    std::pow(rho, a) * std::pow(std::abs(st.u), p + 1.0) /
                        (p + 1.0)) *
                   std::pow(rho, n - 1.0);
        },
        lo, r, qopts);
    return std::pow(r, 4.0 + 2.0 * ds.beta - n) * omega * integral;
}

} // namespace

double unit_sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double hat_energy(const RadialSolution& sol, double tau, const EnergyOptions& opts) {
    return volume_term(sol, tau, opts);
}

double energy(const RadialSolution& sol, double r, const EnergyOptions& opts) {
    const DerivedScalars ds = derive_scalars(sol.params());
    const double hat = volume_term(sol, r, opts);
    const Pieces pc = boundary_pieces(sol, r);
    const double first_surface =
        (opts.form == EnergyForm::proof_display) ? pc.P1 : pc.P1p;
    return hat - 0.5 * ds.gamma * (first_surface + pc.P2p) +
           0.5 * r * r * r * pc.P3p;
}

double energy_derivative_bound(const RadialSolution& sol, double r) {
    const auto& pp = sol.params();
    const DerivedScalars ds = derive_scalars(pp);
    const double omega = unit_sphere_area(pp.n);
    const RadialState st = sol.at(r);
    const double W = ds.beta * st.u / r + st.du;
    return ds.c * omega * std::pow(r, 2.0 * ds.beta + 1.0) * W * W;
}

RadialSolution blow_down(const RadialSolution& sol, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("blow_down: tau must be > 0");
    return RadialSolution(sol.params_, sol.data_, sol.tau_ * tau,
                          sol.termination_, sol.blowup_radius_ / tau);
}

EnergyTrace monotonicity_check(const RadialSolution& sol,
                               const std::vector<double>& radii,
                               const EnergyOptions& opts) {
    const auto& pp = sol.params();
    const double p_crit = sobolev_critical(pp.n, pp.a);
    if (pp.p < p_crit * (1.0 - 1e-12))
        throw std::invalid_argument(
            "monotonicity_check requires p >= (n+4+2a)/(n-4)");
    if (radii.size() < 5)
        throw std::invalid_argument("monotonicity_check needs at least 5 radii");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw std::invalid_argument("monotonicity_check radii must increase");

    const size_t m = radii.size();
    EnergyTrace trace;
    trace.radii = radii;
    trace.E.resize(m);
    trace.dE_bound.resize(m);
    trace.dE_estimate.assign(m, std::numeric_limits<double>::quiet_NaN());
    trace.tolerance.assign(m, std::numeric_limits<double>::quiet_NaN());

    for (size_t i = 0; i < m; ++i) {
        trace.E[i] = energy(sol, radii[i], opts);
        trace.dE_bound[i] = energy_derivative_bound(sol, radii[i]);
    }

    // derivative of the quadratic through three (r, E) points, at the middle
    auto d3 = [&](size_t i0, size_t i1, size_t i2) {
        const double h1 = radii[i1] - radii[i0];
        const double h2 = radii[i2] - radii[i1];
        return (trace.E[i2] * h1 * h1 - trace.E[i0] * h2 * h2 +
                trace.E[i1] * (h2 * h2 - h1 * h1)) /
               (h1 * h2 * (h1 + h2));
    };

    for (size_t i = 1; i + 1 < m; ++i) trace.dE_estimate[i] = d3(i - 1, i, i + 1);
    if (m >= 2) {
        trace.dE_estimate[0] = (trace.E[1] - trace.E[0]) / (radii[1] - radii[0]);
        trace.dE_estimate[m - 1] =
            (trace.E[m - 1] - trace.E[m - 2]) / (radii[m - 1] - radii[m - 2]);
    }

    trace.pass = true;
    trace.worst_margin = std::numeric_limits<double>::infinity();
    for (size_t i = 2; i + 2 < m; ++i) {
        const double wide = d3(i - 2, i, i + 2);
        const double truncation = std::abs(trace.dE_estimate[i] - wide) / 3.0;
        const double escale =
            std::max({std::abs(trace.E[i - 1]), std::abs(trace.E[i]),
                      std::abs(trace.E[i + 1])});
        const double noise =
            2.0 * (opts.quad_rel_tol + 1e-14) * escale /
            (radii[i + 1] - radii[i - 1]);
        trace.tolerance[i] = 10.0 * (truncation + noise);
        const double margin =
            trace.dE_estimate[i] - trace.dE_bound[i] + trace.tolerance[i];
        trace.worst_margin = std::min(trace.worst_margin, margin);
        if (margin < 0.0) trace.pass = false;
    }
    return trace;
}

std::optional<double> bulk_energy_slope(const RadialSolution& sol,
                                        double tail_fraction,
                                        const EnergyOptions& opts) {
    const auto& pp = sol.params();
    const double n = pp.n, a = pp.a, p = pp.p;
    const double omega = unit_sphere_area(pp.n);

    const double lo = sol.r_min(), hi = sol.r_max();
    const double tail_lo =
        std::exp(std::log(hi) - tail_fraction * (std::log(hi) - std::log(lo)));

    const int count = 24;
    quadrature::Options qopts;
    qopts.rel_tol = opts.quad_rel_tol;
    qopts.max_panels = opts.quad_max_panels;
    auto integrand = [&](double rho) {
        const RadialState st = sol.at(rho);
        return (st.v * st.v +
                std::pow(rho, a) * std::pow(std::abs(st.u), p + 1.0)) *
               std::pow(rho, n - 1.0);
    };

    // cumulative integral, then log-log fit over the tail radii
    double acc = 0.0;
    double prev = lo;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (int j = 0; j < count; ++j) {
        const double R =
            tail_lo * std::pow(hi / tail_lo, static_cast<double>(j) / (count - 1));
        acc += quadrature::integrate_or_throw(integrand, prev, R, qopts);
        prev = R;
        const double I = omega * acc;
        if (!(I > 0.0)) return std::nullopt;
        const double x = std::log(R), y = std::log(I);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    const double denom = used * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (used * sxy - sx * sy) / denom;
}

void write_trace_csv(const EnergyTrace& trace, std::ostream& out) {
    out << "r,E,dE_bound,dE_estimate\n";
    char buf[512];
    for (size_t i = 0; i < trace.radii.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n",
                      trace.radii[i], trace.E[i], trace.dE_bound[i],
                      trace.dE_estimate[i]);
        out << buf;
    }
}

} // namespace bilap
