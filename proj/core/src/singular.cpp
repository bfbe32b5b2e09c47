#include "bilap/singular.hpp"

#include <cmath>
#include <stdexcept>

namespace bilap {

double SingularSolution::value(double r) const {
    return amplitude * std::pow(r, -decay);
}

RadialState SingularSolution::state(double r) const {
    const double n = params.n, b = decay;
    const double u = amplitude * std::pow(r, -b);
    // Lap(r^s) = s(s+n-2) r^(s-2) with s = -b
    const double lap_coeff = -b * (-b + n - 2.0); // = -b (n-2-b)
    return {r, u, -b * u / r, lap_coeff * u / (r * r),
            lap_coeff * (-b - 2.0) * u / (r * r * r)};
}

SingularSolution build_singular(const ProblemParams& params) {
    const DerivedScalars ds = derive_scalars(params);
    if (!(ds.ell2 > 0.0))
        throw std::domain_error("no singular solution: ell2 <= 0");
    return SingularSolution{params, std::pow(ds.ell2, 1.0 / (params.p - 1.0)),
                            ds.beta};
}

double remark_ell2(const ProblemParams& params) {
    const double n = params.n;
    const double b = (4.0 + params.a) / (params.p - 1.0);
    return b * (b + 2.0) * (b + 4.0 - n) * (b + 2.0 - n);
}

double singular_residual(const SingularSolution& sol, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("singular_residual: r must be > 0");
    const double n = sol.params.n, a = sol.params.a, p = sol.params.p;
    const double b = sol.decay;
    // Lap^2 (A r^{-b}) via the power rule applied twice
    const double s1 = -b * (-b + n - 2.0);
    const double s2 = (-b - 2.0) * (-b - 2.0 + n - 2.0);
    const double bilap = sol.amplitude * s1 * s2 * std::pow(r, -b - 4.0);
    const double u = sol.value(r);
    const double rhs = std::pow(r, a) * std::copysign(std::pow(std::abs(u), p), u);
    return bilap - rhs;
}

bool is_stable_singular(const ProblemParams& params) {
    const DerivedScalars ds = derive_scalars(params);
    if (!(ds.ell2 > 0.0))
        throw std::domain_error("no singular solution: ell2 <= 0");
    const double n = params.n;
    return params.p * ds.ell2 <= n * n * (n - 4.0) * (n - 4.0) / 16.0;
}

RadialSolution singular_profile(const ProblemParams& params, double r_lo,
                                double r_hi) {
    const SingularSolution sol = build_singular(params);
    const double n = params.n;
    return from_profile(
        params,
        [sol, n](double r) -> std::array<double, 6> {
            const double b = sol.decay;
            const double u = sol.amplitude * std::pow(r, -b);
            const double du = -b * u / r;
            const double d2u = b * (b + 1.0) * u / (r * r);
            const double lap_coeff = -b * (-b + n - 2.0);
            const double v = lap_coeff * u / (r * r);
            const double dv = (-b - 2.0) * v / r;
            const double d2v = (-b - 2.0) * (-b - 3.0) * v / (r * r);
            return {u, du, d2u, v, dv, d2v};
        },
        r_lo, r_hi);
}

} // namespace bilap
