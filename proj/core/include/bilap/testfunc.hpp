#pragma once

#include <array>
#include <functional>
#include <string>

#include "bilap/jet.hpp"

namespace bilap {

/// Smooth radial test profile with four continuous derivatives and enough
/// decay for every integral below to converge. Derivatives come from exact
/// truncated-Taylor arithmetic on the defining expression, never from finite
/// differences.
class RadialProfile {
public:
    RadialProfile(std::string name, std::function<Jet(const Jet&)> expr,
                  double support_radius, double quad_cut);

    const std::string& name() const { return name_; }

    /// value and first four derivatives at r >= 0; identically zero beyond a
    /// finite support radius.
    std::array<double, 5> eval(double r) const;

    /// support radius (infinity when the profile only decays)
    double support() const { return support_; }
    /// quadrature cutoff: integration beyond it contributes < 1e-14 relative
    double cutoff() const { return cut_; }
    bool compactly_supported() const;

    /// the defining jet expression (used to build derived profiles)
    const std::function<Jet(const Jet&)>& expression() const { return expr_; }

private:
    std::string name_;
    std::function<Jet(const Jet&)> expr_;
    double support_;
    double cut_;
};

/// e^{-r^2}
RadialProfile gaussian_profile();
/// r^2 e^{-r^2}
RadialProfile poly_gaussian_profile();
/// exp(-1/(1-(r/R)^2)) on [0, R), zero outside
RadialProfile bump_profile(double R = 3.0);
/// profile(lambda * r): derivatives pick up lambda^k, support shrinks
RadialProfile scaled(const RadialProfile& base, double lambda);

/// The catalog used by the identity and inequality sweeps.
std::array<RadialProfile, 3> standard_catalog();

} // namespace bilap
