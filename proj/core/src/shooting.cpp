#include "bilap/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace bilap {

namespace {

using Vec4 = std::array<double, 4>;

// sign-preserving power |u|^(p-1) u, valid for sign-changing solutions
double spow(double u, double p) {
    if (u == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(u), p), u);
}

struct Rhs {
    double n, a, p;
    Vec4 operator()(double r, const Vec4& y) const {
        const double nl = std::pow(r, a) * spow(y[0], p);
        return {y[1], y[2] - (n - 1.0) * y[1] / r, y[3],
                nl - (n - 1.0) * y[3] / r};
    }
};

} // namespace

// ---------------------------------------------------------------------------
// dense representation

struct RadialSolution::Dense {
    // integrated representation: nodes with state, first and second
    // derivatives; quintic Hermite between consecutive nodes
    struct Node {
        double r;
        Vec4 y;
        Vec4 f;  // dy/dr
        Vec4 s;  // d2y/dr2
    };
    std::vector<Node> nodes;

    // synthetic representation: analytic profile (u,u',u'',v,v',v'')
    std::function<std::array<double, 6>(double)> profile;

    bool synthetic() const { return static_cast<bool>(profile); }

    double lo() const {
        return synthetic() ? prof_lo : nodes.front().r;
    }
    double hi() const {
        return synthetic() ? prof_hi : nodes.back().r;
    }
    double prof_lo = 0.0, prof_hi = 0.0;
    double rel_tol = 1e-10, abs_tol = 1e-12;

    // state and derivative at radius r (untransformed)
    void eval(double r, Vec4& y, Vec4& f) const {
        if (synthetic()) {
            const auto pr = profile(r);
            y = {pr[0], pr[1], pr[3], pr[4]};
            f = {pr[1], pr[2], pr[4], pr[5]};
            return;
        }
        // clamp tiny round-off excursions at the ends
        const size_t last = nodes.size() - 1;
        size_t i = 0;
        {
            // binary search for the segment containing r
            size_t lo = 0, hi = last;
            while (hi - lo > 1) {
                const size_t mid = (lo + hi) / 2;
                if (nodes[mid].r <= r)
                    lo = mid;
                else
                    hi = mid;
            }
            i = lo;
        }
        const Node& n0 = nodes[i];
        const Node& n1 = nodes[i + 1];
        const double h = n1.r - n0.r;
        const double t = (r - n0.r) / h;
        // two-point quintic Hermite basis in the normalized variable
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
        const double h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
        const double h10 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
        const double h20 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
        const double h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
        const double h11 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
        const double h21 = 0.5 * t3 - t4 + 0.5 * t5;
        const double d00 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
        const double d10 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
        const double d20 = t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4;
        const double d01 = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;
        const double d11 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
        const double d21 = 1.5 * t2 - 4.0 * t3 + 2.5 * t4;
        for (int k = 0; k < 4; ++k) {
            const double a0 = n0.y[k], a1 = h * n0.f[k], a2 = h * h * n0.s[k];
            const double b0 = n1.y[k], b1 = h * n1.f[k], b2 = h * h * n1.s[k];
            y[k] = a0 * h00 + a1 * h10 + a2 * h20 + b0 * h01 + b1 * h11 + b2 * h21;
            f[k] = (a0 * d00 + a1 * d10 + a2 * d20 + b0 * d01 + b1 * d11 +
                    b2 * d21) /
                   h;
        }
    }
};

RadialSolution::RadialSolution(ProblemParams params,
                               std::shared_ptr<const Dense> data, double tau,
                               Termination term, double blowup_radius)
    : params_(params),
      data_(std::move(data)),
      tau_(tau),
      beta_(derive_scalars(params).beta),
      termination_(term),
      blowup_radius_(blowup_radius) {
    // materialize the (possibly rescaled) sample grid
    if (data_->synthetic()) {
        const int samples = 200;
        grid_.reserve(samples);
        const double lo = data_->prof_lo / tau_, hi = data_->prof_hi / tau_;
        const double ratio = std::pow(hi / lo, 1.0 / (samples - 1));
        double r = lo;
        for (int i = 0; i < samples; ++i) {
            grid_.push_back(at(i + 1 == samples ? hi : r));
            r *= ratio;
        }
    } else {
        grid_.reserve(data_->nodes.size());
        for (const auto& node : data_->nodes) grid_.push_back(at(node.r / tau_));
    }
}

bool RadialSolution::is_synthetic() const { return data_->synthetic(); }

RadialState RadialSolution::at(double r) const {
    const double rb = r * tau_;
    const double lo = data_->lo(), hi = data_->hi();
    const double pad = 1e-12 * (std::abs(hi) + std::abs(lo));
    if (!(rb >= lo - pad && rb <= hi + pad))
        throw std::out_of_range("r outside grid");
    const double rc = std::clamp(rb, lo, hi);
    Vec4 y, f;
    data_->eval(rc, y, f);
    const double sb = std::pow(tau_, beta_);
    return {r, sb * y[0], sb * tau_ * y[1], sb * tau_ * tau_ * y[2],
            sb * tau_ * tau_ * tau_ * y[3]};
}

std::array<double, 4> RadialSolution::state_derivative(double r) const {
    const double rb = r * tau_;
    const double lo = data_->lo(), hi = data_->hi();
    const double pad = 1e-12 * (std::abs(hi) + std::abs(lo));
    if (!(rb >= lo - pad && rb <= hi + pad))
        throw std::out_of_range("r outside grid");
    const double rc = std::clamp(rb, lo, hi);
    Vec4 y, f;
    data_->eval(rc, y, f);
    const double sb = std::pow(tau_, beta_);
    const double t2 = tau_ * tau_;
    return {sb * tau_ * f[0], sb * t2 * f[1], sb * t2 * tau_ * f[2],
            sb * t2 * t2 * f[3]};
}

double RadialSolution::max_ode_residual(int probes_per_segment) const {
    const Rhs rhs{static_cast<double>(params_.n), params_.a, params_.p};
    double worst = 0.0;
    const auto& g = grid_;
    for (size_t i = 0; i + 1 < g.size(); ++i) {
        for (int j = 1; j <= probes_per_segment; ++j) {
            const double r =
                g[i].r + (g[i + 1].r - g[i].r) * j / (probes_per_segment + 1.0);
            const RadialState st = at(r);
            const Vec4 y{st.u, st.du, st.v, st.dv};
            const Vec4 fexact = rhs(r, y);
            const Vec4 fdense = state_derivative(r);
            double scale = 1.0;
            for (int k = 0; k < 4; ++k)
                scale = std::max(scale, std::abs(fexact[k]));
            for (int k = 0; k < 4; ++k)
                worst = std::max(worst, std::abs(fdense[k] - fexact[k]) / scale);
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with FSAL and quintic-Hermite dense nodes

namespace {

constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

Vec4 axpy(const Vec4& y, double h, std::initializer_list<std::pair<double, const Vec4*>> terms) {
    Vec4 out = y;
    for (const auto& [c, k] : terms)
        for (int i = 0; i < 4; ++i) out[i] += h * c * (*k)[i];
    return out;
}

// full second derivative of the state along a solution
Vec4 state_second_derivative(const Rhs& rhs, double r, const Vec4& y, const Vec4& f) {
    const double n = rhs.n, a = rhs.a, p = rhs.p;
    const double s = spow(y[0], p);
    const double ds = (y[0] == 0.0) ? 0.0 : p * std::pow(std::abs(y[0]), p - 1.0);
    double nl_dr = std::pow(r, a) * ds * y[1];
    if (a != 0.0) nl_dr += a * std::pow(r, a - 1.0) * s;
    Vec4 out;
    out[0] = f[1];
    out[1] = y[3] - (n - 1.0) * (f[1] / r - y[1] / (r * r));
    out[2] = f[3];
    out[3] = nl_dr - (n - 1.0) * (f[3] / r - y[3] / (r * r));
    return out;
}

RadialSolution integrate_system(const ProblemParams& params, const RadialState& init,
                                double r_max, double rel_tol, double abs_tol,
                                double blowup_bound) {
    if (!(init.r > 0.0) || !(r_max > init.r))
        throw std::invalid_argument("integrate: need 0 < r_start < r_max");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("integrate: tolerances must be positive");

    const Rhs rhs{static_cast<double>(params.n), params.a, params.p};
    auto dense = std::make_shared<RadialSolution::Dense>();
    dense->rel_tol = rel_tol;
    dense->abs_tol = abs_tol;

    double r = init.r;
    Vec4 y{init.u, init.du, init.v, init.dv};
    Vec4 k1 = rhs(r, y);
    dense->nodes.push_back({r, y, k1, state_second_derivative(rhs, r, y, k1)});

    Termination term = Termination::reached_horizon;
    double blowup_radius = 0.0;

    double h = std::min(init.r * 0.1, (r_max - init.r) * 0.01);
    const double h_min_factor = 16.0 * std::numeric_limits<double>::epsilon();
    int rejected_in_a_row = 0;

    while (r < r_max) {
        h = std::min(h, r_max - r);
        if (h < h_min_factor * r) throw std::runtime_error("step size underflow");

        const Vec4 k2 = rhs(r + C2 * h, axpy(y, h, {{A21, &k1}}));
        const Vec4 k3 = rhs(r + C3 * h, axpy(y, h, {{A31, &k1}, {A32, &k2}}));
        const Vec4 k4 = rhs(r + C4 * h, axpy(y, h, {{A41, &k1}, {A42, &k2}, {A43, &k3}}));
        const Vec4 k5 = rhs(r + C5 * h,
                            axpy(y, h, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}));
        const Vec4 k6 = rhs(r + h, axpy(y, h, {{A61, &k1}, {A62, &k2}, {A63, &k3},
                                               {A64, &k4}, {A65, &k5}}));
        const Vec4 y1 = axpy(y, h, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
        const Vec4 k7 = rhs(r + h, y1);

        double err = 0.0;
        bool finite = true;
        for (int i = 0; i < 4; ++i) {
            const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] +
                                  E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            const double sc =
                abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
            err += (e / sc) * (e / sc);
            if (!std::isfinite(y1[i])) finite = false;
        }
        err = std::sqrt(err / 4.0);

        if (!finite || err > 1.0) {
            // rejected step
            const double shrink =
                finite ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= shrink;
            if (++rejected_in_a_row > 60)
                throw std::runtime_error("step size underflow");
            continue;
        }
        rejected_in_a_row = 0;

        r += h;
        y = y1;
        k1 = k7; // FSAL
        dense->nodes.push_back({r, y, k1, state_second_derivative(rhs, r, y, k1)});

        if (std::max(std::abs(y[0]), std::abs(y[2])) > blowup_bound) {
            term = Termination::blew_up;
            blowup_radius = r;
            break;
        }

        const double grow =
            (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= grow;
    }

    return RadialSolution(params, std::move(dense), 1.0, term, blowup_radius);
}

} // namespace

RadialState series_start(double alpha, double b, const ProblemParams& params,
                         double r0) {
    if (!(r0 > 0.0)) throw std::invalid_argument("series_start: r0 must be > 0");
    const double n = params.n, a = params.a, p = params.p;
    const double s0 = spow(alpha, p);
    RadialState st{};
    st.r = r0;
    st.u = alpha + b * r0 * r0 / (2.0 * n);
    st.du = b * r0 / n;
    st.v = b + s0 * std::pow(r0, a + 2.0) / ((a + 2.0) * (a + n));
    st.dv = s0 * std::pow(r0, a + 1.0) / (a + n);
    return st;
}

RadialSolution integrate(const ShootingConfig& config, const ProblemParams& params) {
    if (!(config.r_start > 0.0) || !(config.r_start < config.r_max))
        throw std::invalid_argument("integrate: need 0 < r_start < r_max");
    const RadialState init =
        series_start(config.alpha, config.b, params, config.r_start);
    return integrate_system(params, init, config.r_max, config.rel_tol,
                            config.abs_tol, config.blowup_bound);
}

RadialSolution continue_from(const RadialState& init, const ProblemParams& params,
                             double r_max, double rel_tol, double abs_tol,
                             double blowup_bound) {
    return integrate_system(params, init, r_max, rel_tol, abs_tol, blowup_bound);
}

RadialSolution from_profile(const ProblemParams& params,
                            std::function<std::array<double, 6>(double)> profile,
                            double r_lo, double r_hi, int samples) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo))
        throw std::invalid_argument("from_profile: need 0 < r_lo < r_hi");
    if (samples < 2) throw std::invalid_argument("from_profile: samples < 2");
    auto dense = std::make_shared<RadialSolution::Dense>();
    dense->profile = std::move(profile);
    dense->prof_lo = r_lo;
    dense->prof_hi = r_hi;
    return RadialSolution(params, std::move(dense), 1.0,
                          Termination::reached_horizon, 0.0);
}

double estimate_decay(const RadialSolution& sol, double tail_fraction) {
    const auto& g = sol.grid();
    const size_t total = g.size();
    size_t start = total - std::max<size_t>(2, static_cast<size_t>(tail_fraction * total));
    if (start >= total - 1) start = total - 2;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t count = 0;
    const double first_sign = g[start].u;
    for (size_t i = start; i < total; ++i) {
        const double u = g[i].u;
        if (u == 0.0 || (u > 0.0) != (first_sign > 0.0))
            throw std::domain_error("tail contains zeros or sign changes");
        const double x = std::log(g[i].r);
        const double y = std::log(std::abs(u));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double denom = count * sxx - sx * sx;
    return (count * sxy - sx * sy) / denom;
}

void write_grid_csv(const RadialSolution& sol, std::ostream& out) {
    out << "r,u,du,v,dv\n";
    char buf[512];
    for (const auto& st : sol.grid()) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", st.r,
                      st.u, st.du, st.v, st.dv);
        out << buf;
    }
}

} // namespace bilap
