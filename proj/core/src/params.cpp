#include "bilap/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bilap/roots.hpp"

namespace bilap {

ProblemParams::ProblemParams(int n_, double a_, double p_) : n(n_), a(a_), p(p_) {
    if (n < 5)
        throw std::invalid_argument("ProblemParams: n must be >= 5, got " +
                                    std::to_string(n));
    if (!(a >= 0.0) || !std::isfinite(a))
        throw std::invalid_argument("ProblemParams: a must be >= 0");
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("ProblemParams: p must be > 1");
}

DerivedScalars derive_scalars(const ProblemParams& params) noexcept {
    const double n = params.n, a = params.a, p = params.p;
    DerivedScalars s{};
    s.beta = (4.0 + a) / (p - 1.0);
    s.rho = n - 1.0 - (8.0 + 2.0 * a) / (p - 1.0);
    s.gamma = s.beta * (s.beta - n + 2.0);
    s.ell1 = (s.beta + 2.0) * (n - 4.0 - s.beta) + s.beta * (n - 2.0 - s.beta);
    s.ell2 = s.beta * (s.beta + 2.0) * (n - 4.0 - s.beta) * (n - 2.0 - s.beta);
    s.c = 2.0 * (s.rho - s.gamma - 1.0);
    return s;
}

GFValues gf_values(const ProblemParams& params) noexcept {
    const double n = params.n, a = params.a, p = params.p;
    const double b = (4.0 + a) / (p - 1.0);
    GFValues v{};
    v.g = p * (b + 2.0) * (n - 4.0 - b) + p * b * (n - 2.0 - b);
    v.f = p * b * (b + 2.0) * (n - 4.0 - b) * (n - 2.0 - b);
    v.f_prime = 2.0 * p * (4.0 + a) * (4.0 + a) / std::pow(p - 1.0, 3) *
                    (b + 2.0) * (n - 3.0 - b) -
                (4.0 + a) / ((p - 1.0) * (p - 1.0)) *
                    (6.0 + a + (8.0 + 2.0 * a) / (p - 1.0)) * (n - 4.0 - b) *
                    (n - 2.0 - b);
    return v;
}

double sobolev_critical(int n, double a) {
    if (n < 5) throw std::invalid_argument("sobolev_critical: n must be >= 5");
    if (!(a >= 0.0)) throw std::invalid_argument("sobolev_critical: a must be >= 0");
    return (n + 4.0 + 2.0 * a) / (n - 4.0);
}

std::array<double, 4> dimension_threshold_cubic(double a) {
    return {64.0 * a + 256.0, -32.0 * (a + 4.0), -4.0, 1.0};
}

int n_threshold(double a) {
    if (!(a >= 0.0)) throw std::invalid_argument("n_threshold: a must be >= 0");
    const auto c = dimension_threshold_cubic(a);
    const Polynomial cubic({c[0], c[1], c[2], c[3]});
    // The largest root grows like sqrt(32(a+4)); 1e3 covers any sane weight.
    const double root = largest_real_root(cubic, 1.0, 1e3);
    return static_cast<int>(std::floor(root));
}

std::array<double, 5> stability_threshold_quartic(int n, double a) {
    const double N = n;
    const double n2 = N * N, n3 = n2 * N, n4 = n3 * N;
    const double a2 = a * a, a3 = a2 * a;
    std::array<double, 5> c{};
    // ascending: c[k] multiplies p^k
    c[4] = n4 - 8.0 * n3 - 16.0 * (2.0 * a + 7.0) * n2 + 192.0 * (a + 4.0) * N -
           256.0 * (a + 4.0);
    c[3] = -4.0 * (n4 - 8.0 * n3 + 4.0 * (a2 + 2.0 * a - 4.0) * n2 -
                   8.0 * (5.0 * a2 + 22.0 * a + 8.0) * N +
                   16.0 * (5.0 * a2 + 28.0 * a + 32.0));
    c[2] = 2.0 * (3.0 * n4 - 24.0 * n3 + 16.0 * (a2 + 5.0 * a + 7.0) * n2 +
                  16.0 * (a3 + 2.0 * a2 - 14.0 * a - 24.0) * N -
                  64.0 * (a3 + 7.0 * a2 + 14.0 * a + 8.0));
    c[1] = -4.0 * (n4 - 8.0 * n3 + 4.0 * (a2 + 6.0 * a + 12.0) * n2 +
                   8.0 * (a3 + 7.0 * a2 + 14.0 * a + 8.0) * N +
                   4.0 * a * (a3 + 8.0 * a2 + 20.0 * a + 16.0));
    c[0] = n4 - 8.0 * n3 + 16.0 * n2;
    return c;
}

double jl_exponent(int n, double a) {
    const double p_crit = sobolev_critical(n, a);
    if (n <= n_threshold(a)) return std::numeric_limits<double>::infinity();

    const auto q = stability_threshold_quartic(n, a);
    const Polynomial quartic({q[0], q[1], q[2], q[3], q[4]});
    const double bound = 1e3;
    double root;
    try {
        root = largest_real_root(quartic, p_crit, bound);
    } catch (const NoRealRootError&) {
        throw std::runtime_error("quartic root not found above critical exponent");
    }
    if (!(root > p_crit) || root >= bound * 0.999)
        throw std::runtime_error("quartic root not found above critical exponent");
    return root;
}

std::string_view to_string(RegimeTag tag) noexcept {
    switch (tag) {
        case RegimeTag::subcritical: return "subcritical";
        case RegimeTag::critical: return "critical";
        case RegimeTag::supercritical_below_jl: return "supercritical_below_JL";
        case RegimeTag::at_or_above_jl: return "at_or_above_JL";
    }
    return "unknown";
}

Regime classify(const ProblemParams& params) {
    Regime r{};
    r.p_crit = sobolev_critical(params.n, params.a);
    r.p_jl = jl_exponent(params.n, params.a);
    const double rel = std::abs(params.p - r.p_crit) / r.p_crit;
    if (rel <= 1e-12)
        r.tag = RegimeTag::critical;
    else if (params.p < r.p_crit)
        r.tag = RegimeTag::subcritical;
    else if (params.p < r.p_jl)
        r.tag = RegimeTag::supercritical_below_jl;
    else
        r.tag = RegimeTag::at_or_above_jl;
    return r;
}

} // namespace bilap
