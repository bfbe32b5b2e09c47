#include "bilap/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bilap/energy.hpp"
#include "bilap/quadrature.hpp"

namespace bilap {

namespace {

quadrature::Options quad_options(const IdentityOptions& opts) {
    quadrature::Options q;
    q.rel_tol = opts.quad_rel_tol;
    q.abs_tol = opts.quad_abs_tol;
    q.max_panels = opts.quad_max_panels;
    return q;
}

// radial differential operators from a profile's derivative stack
double lap(const std::array<double, 5>& d, int n, double r) {
    return d[2] + (n - 1.0) * d[1] / r;
}
double lap_r(const std::array<double, 5>& d, int n, double r) {
    return d[3] + (n - 1.0) * (d[2] / r - d[1] / (r * r));
}
double bilap(const std::array<double, 5>& d, int n, double r) {
    const double lap_rr =
        d[4] + (n - 1.0) * (d[3] / r - 2.0 * d[2] / (r * r) + 2.0 * d[1] / (r * r * r));
    return lap_rr + (n - 1.0) / r * lap_r(d, n, r);
}

double normalized(double lhs, double rhs) {
    return (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

} // namespace

double pohozaev_defect_unchecked(const RadialSolution& sol, double R,
                                 const IdentityOptions& opts) {
    const auto& pp = sol.params();
    const double n = pp.n, a = pp.a, p = pp.p;
    const double omega = unit_sphere_area(pp.n);
    if (!(R > sol.r_min() && R <= sol.r_max() * (1.0 + 1e-12)))
        throw std::out_of_range("r outside grid");

    const double lhs =
        omega * quadrature::integrate_or_throw(
                    [&](double rho) {
                        const RadialState st = sol.at(rho);
                        return ((n - 4.0) / 2.0 * st.v * st.v -
                                (n + a) / (p + 1.0) * std::pow(rho, a) *
                                    std::pow(std::abs(st.u), p + 1.0)) *
                               std::pow(rho, n - 1.0);
                    },
                    sol.r_min(), R, quad_options(opts));

    const RadialState st = sol.at(R);
    const double urr = st.v - (n - 1.0) * st.du / R;
    const double rhs =
        omega * std::pow(R, n - 1.0) *
        (R / 2.0 * st.v * st.v -
         std::pow(R, 1.0 + a) / (p + 1.0) * std::pow(std::abs(st.u), p + 1.0) +
         R * st.du * st.dv - st.v * (st.du + R * urr));
    return normalized(lhs, rhs);
}

double pohozaev_defect(const RadialSolution& sol, double R,
                       const IdentityOptions& opts) {
    if (sol.max_ode_residual() > 1e-6)
        throw std::domain_error("not a solution grid");
    return pohozaev_defect_unchecked(sol, R, opts);
}

double biharmonic_cutoff_identity_defect(const RadialProfile& zeta,
                                         const RadialProfile& eta, int n,
                                         const IdentityOptions& opts) {
    if (n < 2) throw std::invalid_argument("identity defect: n too small");
    if (!eta.compactly_supported())
        throw std::invalid_argument("identity defect: eta must be compactly supported");
    const double cut = std::min(zeta.cutoff(), eta.support());
    const auto q = quad_options(opts);

    auto lhs_f = [&](double r) {
        const auto z = zeta.eval(r);
        const auto e = eta.eval(r);
        return bilap(z, n, r) * z[0] * e[0] * e[0] * std::pow(r, n - 1.0);
    };
    auto square_f = [&](double r) {
        const auto z = zeta.eval(r);
        const auto e = eta.eval(r);
        const double mixed =
            z[0] * lap(e, n, r) + 2.0 * z[1] * e[1] + e[0] * lap(z, n, r);
        return mixed * mixed * std::pow(r, n - 1.0);
    };
    auto gradient_f = [&](double r) {
        const auto z = zeta.eval(r);
        const auto e = eta.eval(r);
        return (-4.0 * z[1] * z[1] * e[1] * e[1] +
                2.0 * z[0] * lap(z, n, r) * e[1] * e[1]) *
               std::pow(r, n - 1.0);
    };
    auto cutoff_f = [&](double r) {
        const auto z = zeta.eval(r);
        const auto e = eta.eval(r);
        const double le = lap(e, n, r);
        return z[0] * z[0] * (2.0 * lap_r(e, n, r) * e[1] + le * le) *
               std::pow(r, n - 1.0);
    };

    const double lhs = quadrature::integrate_or_throw(lhs_f, 0.0, cut, q);
    const double rhs = quadrature::integrate_or_throw(square_f, 0.0, cut, q) +
                       quadrature::integrate_or_throw(gradient_f, 0.0, cut, q) +
                       quadrature::integrate_or_throw(cutoff_f, 0.0, cut, q);
    return normalized(lhs, rhs);
}

double gradient_cutoff_identity_defect(const RadialProfile& zeta,
                                       const RadialProfile& eta, int n,
                                       const IdentityOptions& opts) {
    if (!eta.compactly_supported())
        throw std::invalid_argument("identity defect: eta must be compactly supported");
    const double cut = std::min(zeta.cutoff(), eta.support());
    const auto q = quad_options(opts);

    auto lhs_f = [&](double r) {
        const auto z = zeta.eval(r);
        const auto e = eta.eval(r);
        return 2.0 * z[1] * z[1] * e[1] * e[1] * std::pow(r, n - 1.0);
    };
    auto rhs_f = [&](double r) {
        const auto z = zeta.eval(r);
        const auto e = eta.eval(r);
        // Lap(|grad eta|^2) for radial eta: (e'^2)'' + (n-1)(e'^2)'/r
        const double lap_grad2 = 2.0 * (e[2] * e[2] + e[1] * e[3]) +
                                 (n - 1.0) * 2.0 * e[1] * e[2] / r;
        return (2.0 * z[0] * (-lap(z, n, r)) * e[1] * e[1] +
                z[0] * z[0] * lap_grad2) *
               std::pow(r, n - 1.0);
    };
    const double lhs = quadrature::integrate_or_throw(lhs_f, 0.0, cut, q);
    const double rhs = quadrature::integrate_or_throw(rhs_f, 0.0, cut, q);
    return normalized(lhs, rhs);
}

double hardy_rellich_ratio(const RadialProfile& psi, int n,
                           const IdentityOptions& opts) {
    if (n < 5)
        throw std::invalid_argument("hardy_rellich_ratio: n must be >= 5");
    const double cut = psi.cutoff();
    auto q = quad_options(opts);

    // denominator first: when the weighted integral diverges the unweighted
    // one does too, and the named failure is the informative one
    const auto denom = quadrature::integrate(
        [&](double r) {
            const auto d = psi.eval(r);
            return d[0] * d[0] * std::pow(r, n - 5.0);
        },
        0.0, cut, q);
    if (!denom.converged || !(denom.value > 0.0) || !std::isfinite(denom.value))
        throw std::domain_error("denominator integral diverged");

    const double numerator = quadrature::integrate_or_throw(
        [&](double r) {
            const auto d = psi.eval(r);
            const double l = lap(d, n, r);
            return l * l * std::pow(r, n - 1.0);
        },
        0.0, cut, q);
    return numerator / denom.value;
}

} // namespace bilap
