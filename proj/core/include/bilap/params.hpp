#pragma once

#include <array>
#include <string_view>

namespace bilap {

/// Problem data for the weighted fourth-order Lane-Emden equation
///   Lap^2 u = |x|^a |u|^(p-1) u   on R^n.
/// Validity: n >= 5 (every derived scalar divides by n-4), a >= 0, p > 1.
struct ProblemParams {
    int n;
    double a;
    double p;

    ProblemParams(int n_, double a_, double p_);
};

/// Every scalar constant derived from (n, a, p), in one place.
///   beta  = (4+a)/(p-1)                       decay exponent
///   rho   = n - 1 - (8+2a)/(p-1)
///   gamma = beta * (beta - n + 2)
///   ell1  = (beta+2)(n-4-beta) + beta(n-2-beta)
///   ell2  = beta(beta+2)(n-4-beta)(n-2-beta)
///   c     = 2 (rho - gamma - 1)               energy derivative constant
struct DerivedScalars {
    double beta;
    double rho;
    double gamma;
    double ell1;
    double ell2;
    double c;
};

DerivedScalars derive_scalars(const ProblemParams& params) noexcept;

/// The exponent functions g, f and the closed-form derivative f'.
/// g(p) = p*ell1 and f(p) = p*ell2; f_prime is evaluated from its own
/// displayed formula, not by differentiating f numerically.
struct GFValues {
    double g;
    double f;
    double f_prime;
};

GFValues gf_values(const ProblemParams& params) noexcept;

/// (n+4+2a)/(n-4). Throws std::invalid_argument for n < 5 or a < 0.
double sobolev_critical(int n, double a);

/// Cubic whose largest real root separates dimensions with finite and
/// infinite stability threshold: x^3 - 4x^2 - 32(a+4)x + 64a + 256.
/// Coefficients ascending.
std::array<double, 4> dimension_threshold_cubic(double a);

/// Integer part of the largest real root of dimension_threshold_cubic(a).
int n_threshold(double a);

/// Quartic in p whose largest real root is the stability threshold exponent
/// for n > n_threshold(a); it is the expansion of
/// 16 (p-1)^4 [ n^2(n-4)^2/16 - f(p) ]. Coefficients ascending.
std::array<double, 5> stability_threshold_quartic(int n, double a);

/// Stability threshold exponent: +infinity when n <= n_threshold(a),
/// otherwise the largest real root of the quartic above. The result is
/// checked to exceed sobolev_critical(n, a); failure throws
/// std::runtime_error("quartic root not found above critical exponent").
double jl_exponent(int n, double a);

enum class RegimeTag {
    subcritical,
    critical,
    supercritical_below_jl,
    at_or_above_jl,
};

std::string_view to_string(RegimeTag tag) noexcept;

/// Where p sits relative to the two thresholds. The tags partition (1, inf)
/// for fixed (n, a); p_jl is infinite exactly when n <= n_threshold(a).
struct Regime {
    RegimeTag tag;
    double p_crit;
    double p_jl; // +infinity allowed
};

/// Equality with p_crit within 1e-12 relative counts as critical.
Regime classify(const ProblemParams& params);

} // namespace bilap
