#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace charsum::cheb {

// Chebyshev series on [lo, hi], plain-sum convention:
//   f(x) = sum_{k=0}^{n} a[k] T_k(t),  t = (2x - lo - hi) / (hi - lo).
struct Series {
    double lo = -1.0, hi = 1.0;
    std::vector<double> a;

    double eval(double x) const {
        double t = (2.0 * x - lo - hi) / (hi - lo);
        // Clenshaw
        double b1 = 0.0, b2 = 0.0;
        for (std::size_t k = a.size(); k-- > 1;) {
            double b0 = 2.0 * t * b1 - b2 + a[k];
            b2 = b1;
            b1 = b0;
        }
        return t * b1 - b2 + (a.empty() ? 0.0 : a[0]);
    }

    Series derivative() const {
        Series d;
        d.lo = lo;
        d.hi = hi;
        std::size_t n = a.size();
        if (n <= 1) {
            d.a.assign(1, 0.0);
            return d;
        }
        d.a.assign(n - 1, 0.0);
        double prev2 = 0.0, prev1 = 0.0;  // d coefficients at k+2, k+1 (unscaled in t)
        for (std::size_t k = n - 1; k-- > 0;) {
            double cur = prev2 + 2.0 * static_cast<double>(k + 1) * a[k + 1];
            d.a[k] = cur;
            prev2 = prev1;
            prev1 = cur;
        }
        d.a[0] *= 0.5;
        double scale = 2.0 / (hi - lo);
        for (double& c : d.a) c *= scale;
        return d;
    }

    // Antiderivative F with F(lo) = 0.
    Series antiderivative() const {
        Series F;
        F.lo = lo;
        F.hi = hi;
        std::size_t n = a.size();
        F.a.assign(n + 1, 0.0);
        auto coef = [&](std::size_t k) { return k < n ? a[k] : 0.0; };
        if (n >= 1) F.a[1] = coef(0) - 0.5 * coef(2);
        for (std::size_t k = 2; k <= n; ++k)
            F.a[k] = (coef(k - 1) - coef(k + 1)) / (2.0 * static_cast<double>(k));
        double scale = (hi - lo) / 2.0;
        for (double& c : F.a) c *= scale;
        // T_k(-1) = (-1)^k; fix the constant so F(lo) = 0.
        double at_lo = 0.0;
        double sign = -1.0;
        for (std::size_t k = 1; k < F.a.size(); ++k) {
            at_lo += sign * F.a[k];
            sign = -sign;
        }
        F.a[0] = -at_lo;
        return F;
    }

    double integral() const {
        // integral over [lo, hi]: only even-degree terms survive,
        // int_{-1}^{1} T_k = -2/(k^2-1) for even k, 0 for odd k.
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); k += 2)
            s += a[k] * 2.0 / (1.0 - static_cast<double>(k) * static_cast<double>(k));
        return s * (hi - lo) / 2.0;
    }
};

// Degree-n interpolant through the n+1 Chebyshev-Lobatto points.
inline Series fit(double lo, double hi, int n, const std::function<double(double)>& f) {
    Series s;
    s.lo = lo;
    s.hi = hi;
    s.a.assign(n + 1, 0.0);
    std::vector<double> fv(n + 1);
    for (int i = 0; i <= n; ++i) {
        double t = std::cos(std::numbers::pi_v<double> * i / n);
        fv[i] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * t);
    }
    for (int k = 0; k <= n; ++k) {
        double acc = 0.5 * (fv[0] + (k % 2 == 0 ? fv[n] : -fv[n]));
        for (int i = 1; i < n; ++i)
            acc += fv[i] * std::cos(std::numbers::pi_v<double> * i * k / n);
        double c = 2.0 * acc / n;
        s.a[k] = (k == 0 || k == n) ? 0.5 * c : c;
    }
    return s;
}

}  // namespace charsum::cheb
