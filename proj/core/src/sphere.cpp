#include "bilap/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bilap/singular.hpp"

namespace bilap {

QuadraticFormReport combined_coefficients(const ProblemParams& params) {
    const DerivedScalars ds = derive_scalars(params);
    const double n = params.n, p = params.p;
    QuadraticFormReport rep{params, p - 1.0,
                            p * ds.ell1 - n * (n - 4.0) / 2.0,
                            p * ds.ell2 - n * n * (n - 4.0) * (n - 4.0) / 16.0,
                            SphereConclusion::all_positive};
    if (!(rep.coeff_mass > 0.0) || !(rep.coeff_gradient > 0.0))
        rep.conclusion = SphereConclusion::mass_nonpositive;
    return rep;
}

double constant_mode_residual(const ProblemParams& params) {
    const DerivedScalars ds = derive_scalars(params);
    if (!(ds.ell2 > 0.0))
        throw std::domain_error("no singular solution: ell2 <= 0");
    const double w = std::pow(ds.ell2, 1.0 / (params.p - 1.0));
    return ds.ell2 * w - std::pow(w, params.p);
}

std::vector<SphereScanRow> scan_grid(int n_lo, int n_hi,
                                     std::span<const double> a_values,
                                     double p_step, double p_cap) {
    if (n_lo < 5) throw std::invalid_argument("scan_grid: n must be >= 5");
    if (!(p_step > 0.0)) throw std::invalid_argument("scan_grid: p_step must be > 0");

    std::vector<double> weights(a_values.begin(), a_values.end());
    std::sort(weights.begin(), weights.end());

    std::vector<SphereScanRow> rows;
    for (int n = n_lo; n <= n_hi; ++n) {
        for (double a : weights) {
            const double p_crit = sobolev_critical(n, a);
            for (double p = p_crit + p_step; p <= p_cap; p += p_step) {
                const QuadraticFormReport rep =
                    combined_coefficients(ProblemParams(n, a, p));
                rows.push_back({n, a, p, rep.coeff_bilaplacian,
                                rep.coeff_gradient, rep.coeff_mass,
                                rep.conclusion});
            }
        }
    }
    return rows;
}

} // namespace bilap
