#pragma once

#include <functional>

namespace bilap::quadrature {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
    bool converged = false;
};

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_panels = 4000;
};

/// Globally adaptive Gauss-Kronrod (G7,K15) integration on [lo, hi].
/// The worst panel is split until the summed Kronrod error estimate meets
/// max(abs_tol, rel_tol * |value|) or the panel budget is exhausted.
Result integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Options& opts = {});

/// Same, but throws std::runtime_error("quadrature failed to converge")
/// when the error estimate does not meet the tolerance.
double integrate_or_throw(const std::function<double(double)>& f, double lo,
                          double hi, const Options& opts = {});

} // namespace bilap::quadrature
