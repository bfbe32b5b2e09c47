#include "bilap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace bilap::quadrature {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kNodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kKronrodW[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kGaussW[4] = {0.1294849661688697, 0.2797053914892767,
                               0.3818300505051189, 0.4179591836734694};

struct Panel {
    double lo, hi;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

// dqk15-style panel evaluation: Kronrod value plus the usual error estimate
// built from |K - G| normalized by the deviation integral resasc.
Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[15];
    fv[7] = f(center);
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(center - half * kNodes[j]);
        fv[14 - j] = f(center + half * kNodes[j]);
    }

    double kronrod = kKronrodW[7] * fv[7];
    double gauss = kGaussW[3] * fv[7];
    double resabs = kKronrodW[7] * std::abs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        const double fsum = fv[j] + fv[14 - j];
        kronrod += kKronrodW[j] * fsum;
        resabs += kKronrodW[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1) gauss += kGaussW[j / 2] * fsum;
    }
    const double mean = kronrod * 0.5;
    double resasc = kKronrodW[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kKronrodW[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    }

    const double habs = std::abs(half);
    kronrod *= half;
    gauss *= half;
    resabs *= habs;
    resasc *= habs;

    double err = std::abs(kronrod - gauss);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    return Panel{lo, hi, kronrod, err};
}

} // namespace

Result integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Options& opts) {
    Result res;
    if (lo == hi) {
        res.converged = true;
        return res;
    }
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    std::priority_queue<Panel> queue;
    queue.push(evaluate_panel(f, lo, hi));
    double total = queue.top().value;
    double total_err = queue.top().error;
    int panels = 1;

    auto tolerance = [&](double value) {
        return std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    };

    while (total_err > tolerance(total) && panels < opts.max_panels) {
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // interval at machine resolution: freeze its contribution
            total_err -= worst.error;
            queue.push(Panel{worst.lo, worst.hi, worst.value, 0.0});
            continue;
        }
        Panel left = evaluate_panel(f, worst.lo, mid);
        Panel right = evaluate_panel(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    res.value = sign * total;
    res.error_estimate = total_err;
    res.panels = panels;
    res.converged = std::isfinite(total) && total_err <= tolerance(total);
    return res;
}

double integrate_or_throw(const std::function<double(double)>& f, double lo,
                          double hi, const Options& opts) {
    Result res = integrate(f, lo, hi, opts);
    if (!res.converged) throw std::runtime_error("quadrature failed to converge");
    return res.value;
}

} // namespace bilap::quadrature
