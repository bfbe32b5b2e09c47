#pragma once

#include <array>
#include <cmath>

namespace bilap {

/// Truncated Taylor arithmetic holding a value and derivatives up to order 4.
/// Internally the object stores Taylor coefficients t[k] = f^(k)/k!, so that
/// products are convolutions and exp/reciprocal follow the standard
/// recurrences. Used to differentiate radial test-function profiles exactly;
/// fourth derivatives by hand are where transcription mistakes live.
class Jet {
public:
    static constexpr int order = 4;

    Jet() { t_.fill(0.0); }
    explicit Jet(double value) {
        t_.fill(0.0);
        t_[0] = value;
    }

    /// The independent variable: value x, first derivative one.
    static Jet variable(double x) {
        Jet j(x);
        j.t_[1] = 1.0;
        return j;
    }

    double value() const { return t_[0]; }

    /// k-th derivative (k = 0..4).
    double derivative(int k) const {
        static constexpr double factorial[5] = {1, 1, 2, 6, 24};
        return t_[k] * factorial[k];
    }

    std::array<double, 5> derivatives() const {
        return {derivative(0), derivative(1), derivative(2), derivative(3),
                derivative(4)};
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k <= order; ++k) r.t_[k] = a.t_[k] + b.t_[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k <= order; ++k) r.t_[k] = a.t_[k] - b.t_[k];
        return r;
    }
    friend Jet operator-(const Jet& a) {
        Jet r;
        for (int k = 0; k <= order; ++k) r.t_[k] = -a.t_[k];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int k = 0; k <= order; ++k) {
            double s = 0.0;
            for (int j = 0; j <= k; ++j) s += a.t_[j] * b.t_[k - j];
            r.t_[k] = s;
        }
        return r;
    }
    friend Jet operator*(double s, const Jet& a) {
        Jet r;
        for (int k = 0; k <= order; ++k) r.t_[k] = s * a.t_[k];
        return r;
    }
    friend Jet operator*(const Jet& a, double s) { return s * a; }
    friend Jet operator+(const Jet& a, double s) { return a + Jet(s); }
    friend Jet operator+(double s, const Jet& a) { return a + Jet(s); }
    friend Jet operator-(double s, const Jet& a) { return Jet(s) - a; }
    friend Jet operator-(const Jet& a, double s) { return a - Jet(s); }

    /// Reciprocal 1/a via h0 = 1/a0, hk = -(sum_{j=1..k} a_j h_{k-j}) / a0.
    friend Jet reciprocal(const Jet& a) {
        Jet r;
        r.t_[0] = 1.0 / a.t_[0];
        for (int k = 1; k <= order; ++k) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j) s += a.t_[j] * r.t_[k - j];
            r.t_[k] = -s / a.t_[0];
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
    friend Jet operator/(double s, const Jet& b) { return s * reciprocal(b); }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

    /// exp via g0 = exp(a0), gk = (1/k) sum_{j=1..k} j a_j g_{k-j}.
    friend Jet exp(const Jet& a) {
        Jet r;
        r.t_[0] = std::exp(a.t_[0]);
        for (int k = 1; k <= order; ++k) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j) s += j * a.t_[j] * r.t_[k - j];
            r.t_[k] = s / k;
        }
        return r;
    }

private:
    std::array<double, 5> t_; // Taylor coefficients f^(k)/k!
};

} // namespace bilap
