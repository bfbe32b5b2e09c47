#pragma once

#include <stdexcept>
#include <vector>

namespace bilap {

/// Dense univariate polynomial, coefficients in ascending powers.
class Polynomial {
public:
    explicit Polynomial(std::vector<double> ascending_coeffs);

    double operator()(double x) const; // Horner evaluation
    Polynomial derivative() const;
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coefficients() const { return coeffs_; }

private:
    std::vector<double> coeffs_;
};

struct NoRealRootError : std::runtime_error {
    NoRealRootError() : std::runtime_error("no real root in bracket") {}
};

struct RootSearchOptions {
    double abs_tol = 1e-12;
    int max_bisections = 240;
};

/// Number of distinct real roots in (lo, hi], counted by a Sturm sequence.
int count_real_roots(const Polynomial& poly, double lo, double hi);

/// Largest real root in (lo, hi], to abs_tol. The bracket is narrowed by
/// bisection on the Sturm count of (mid, hi], which keeps the largest root
/// inside by construction; once the bracket isolates a single sign-changing
/// root, plain sign bisection finishes and one guarded Newton step polishes.
/// Roots of even multiplicity (no sign change) stay on the count-bisection
/// path. Throws NoRealRootError when the Sturm count over (lo, hi] is zero.
double largest_real_root(const Polynomial& poly, double lo, double hi,
                         const RootSearchOptions& opts = {});

} // namespace bilap
