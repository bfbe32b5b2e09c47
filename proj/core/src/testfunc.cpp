#include "bilap/testfunc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace bilap {

RadialProfile::RadialProfile(std::string name, std::function<Jet(const Jet&)> expr,
                             double support_radius, double quad_cut)
    : name_(std::move(name)),
      expr_(std::move(expr)),
      support_(support_radius),
      cut_(quad_cut) {}

bool RadialProfile::compactly_supported() const {
    return std::isfinite(support_);
}

std::array<double, 5> RadialProfile::eval(double r) const {
    if (r >= support_) return {0.0, 0.0, 0.0, 0.0, 0.0};
    return expr_(Jet::variable(r)).derivatives();
}

RadialProfile gaussian_profile() {
    return RadialProfile(
        "gaussian", [](const Jet& r) { return exp(-(r * r)); },
        std::numeric_limits<double>::infinity(), 9.0);
}

RadialProfile poly_gaussian_profile() {
    return RadialProfile(
        "poly_gaussian", [](const Jet& r) { return r * r * exp(-(r * r)); },
        std::numeric_limits<double>::infinity(), 9.5);
}

RadialProfile bump_profile(double R) {
    // evaluating too close to the edge overflows the inner reciprocal; the
    // profile and all four derivatives are below 1e-300 well before that
    const double edge = R * (1.0 - 1e-8);
    return RadialProfile(
        "bump",
        [R, edge](const Jet& r) {
            if (r.value() >= edge) return Jet(0.0);
            const Jet s = (r / R) * (r / R);
            return exp(-reciprocal(1.0 - s));
        },
        edge, edge);
}

RadialProfile scaled(const RadialProfile& base, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("scaled: lambda must be > 0");
    const auto inner = base.expression();
    return RadialProfile(
        base.name() + "_x" + std::to_string(lambda),
        // g(r) = f(lambda r); the chain rule rides along in the jet
        [inner, lambda](const Jet& r) { return inner(r * lambda); },
        base.support() / lambda, base.cutoff() / lambda);
}

std::array<RadialProfile, 3> standard_catalog() {
    return {gaussian_profile(), bump_profile(), poly_gaussian_profile()};
}

} // namespace bilap
