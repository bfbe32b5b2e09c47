#include "bilap/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bilap {

namespace {

// Trim leading (highest-power) coefficients that are negligible against the
// largest coefficient. Keeps Sturm remainders numerically honest.
std::vector<double> trimmed(std::vector<double> c) {
    double scale = 0.0;
    for (double x : c) scale = std::max(scale, std::abs(x));
    const double cut = scale * 1e3 * std::numeric_limits<double>::epsilon();
    while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
    return c;
}

double eval(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<double> derivative_coeffs(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

// Remainder of polynomial division a / b (ascending coefficients).
std::vector<double> remainder(std::vector<double> a, const std::vector<double>& b) {
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db && a.size() > 1) {
        const int da = static_cast<int>(a.size()) - 1;
        const double q = a.back() / b.back();
        const int shift = da - db;
        for (int i = 0; i <= db; ++i) a[i + shift] -= q * b[i];
        a.pop_back();
        a = trimmed(std::move(a));
        if (a.size() == 1 && a[0] == 0.0) break;
    }
    return a;
}

std::vector<std::vector<double>> sturm_chain(const Polynomial& poly) {
    std::vector<std::vector<double>> chain;
    chain.push_back(trimmed(poly.coefficients()));
    if (chain[0].size() <= 1) return chain;
    chain.push_back(trimmed(derivative_coeffs(chain[0])));
    while (chain.back().size() > 1) {
        std::vector<double> r = remainder(chain[chain.size() - 2], chain.back());
        if (r.size() == 1 && r[0] == 0.0) break;
        for (double& x : r) x = -x;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_changes(const std::vector<std::vector<double>>& chain, double x) {
    int changes = 0;
    int prev = 0;
    for (const auto& c : chain) {
        const double v = eval(c, x);
        const int s = (v > 0.0) - (v < 0.0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

} // namespace

Polynomial::Polynomial(std::vector<double> ascending_coeffs)
    : coeffs_(trimmed(std::move(ascending_coeffs))) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double x) const { return eval(coeffs_, x); }

Polynomial Polynomial::derivative() const {
    return Polynomial(derivative_coeffs(coeffs_));
}

int count_real_roots(const Polynomial& poly, double lo, double hi) {
    const auto chain = sturm_chain(poly);
    return sign_changes(chain, lo) - sign_changes(chain, hi);
}

double largest_real_root(const Polynomial& poly, double lo, double hi,
                         const RootSearchOptions& opts) {
    const auto chain = sturm_chain(poly);
    auto count = [&](double a, double b) {
        return sign_changes(chain, a) - sign_changes(chain, b);
    };
    if (count(lo, hi) <= 0) throw NoRealRootError();

    // Invariant: the largest root lies in (a, b].
    double a = lo, b = hi;
    for (int it = 0; it < opts.max_bisections && b - a > opts.abs_tol; ++it) {
        if (count(a, b) == 1) {
            const double fa = poly(a), fb = poly(b);
            if (fa == 0.0 || fb == 0.0) break;
            if ((fa < 0.0) != (fb < 0.0)) {
                // Isolated sign-changing root: plain bisection from here.
                double sa = a, sb = b, fsa = fa;
                for (int j = 0; j < opts.max_bisections && sb - sa > opts.abs_tol;
                     ++j) {
                    const double m = 0.5 * (sa + sb);
                    const double fm = poly(m);
                    if (fm == 0.0) {
                        sa = sb = m;
                        break;
                    }
                    if ((fsa < 0.0) != (fm < 0.0))
                        sb = m;
                    else {
                        sa = m;
                        fsa = fm;
                    }
                }
                a = sa;
                b = sb;
                break;
            }
        }
        const double m = 0.5 * (a + b);
        if (count(m, b) >= 1)
            a = m;
        else
            b = m;
    }
    double root = 0.5 * (a + b);

    // One guarded Newton polish.
    const Polynomial deriv = poly.derivative();
    const double d = deriv(root);
    if (d != 0.0) {
        const double polished = root - poly(root) / d;
        if (std::abs(polished - root) <= 4.0 * std::max(opts.abs_tol, b - a) &&
            polished > lo && polished <= hi) {
            root = polished;
        }
    }
    return root;
}

} // namespace bilap
