#include "charsum/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "charsum/common.hpp"

namespace charsum {

double XiSolver::solve(double u) const {
    if (!(u > 1.0) || !std::isfinite(u)) throw std::domain_error("xi: need u > 1");
    auto f = [u](double x) { return std::expm1(x) - u * x; };
    // root lies right of the stationary point log(u); expand hi until f > 0
    double lo = std::log(u);
    if (lo <= 0.0) lo = 0.0;
    double x = std::max(std::log(u * std::max(std::log(u), 1e-10)), lo + 1e-8);
    if (!(x > lo) || !std::isfinite(x)) x = lo + 1.0;
    double hi = std::max(x, lo + 1.0);
    while (f(hi) <= 0.0) hi = lo + 2.0 * (hi - lo);
    // f(lo) < 0 for u > 1 except when u -> 1+ pushes the root toward 0
    if (f(lo) >= 0.0) lo = 0.0;  // f(0) = 0; root in (0, hi), f < 0 just right of 0
    double a = lo, b = hi;
    x = std::clamp(x, a, b);
    for (int it = 0; it < max_iter; ++it) {
        double fx = f(x);
        if (fx > 0.0)
            b = x;
        else
            a = x;
        double df = std::exp(x) - u;
        double step = (df != 0.0) ? fx / df : 0.0;
        double next = x - step;
        if (!(next > a) || !(next < b)) next = 0.5 * (a + b);
        if (std::abs(next - x) <= tol * (1.0 + std::abs(x))) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

double xi(double u) { return XiSolver{}.solve(u); }

double RhoEvaluator::log_rho_asymptotic(double u) {
    // de Bruijn-shaped surrogate: log rho = -u (log u + loglog u - 1 + (loglog u - 1)/log u)
    double lu = std::log(u);
    double llu = std::log(lu);
    return -u * (lu + llu - 1.0 + (llu - 1.0) / lu);
}

RhoEvaluator::RhoEvaluator(Options opt) : opt_(opt) {
    if (!(opt_.max_u >= 2.0)) throw std::domain_error("RhoEvaluator: max_u must be >= 2");
    if (!(opt_.tail_switch >= 1.0)) throw std::domain_error("RhoEvaluator: tail_switch must be >= 1");
    opt_.tail_switch = std::min(opt_.tail_switch, opt_.max_u);
    int knots = static_cast<int>(std::ceil(opt_.max_u));
    opt_.max_u = knots;
    int deg = std::max(opt_.degree, 8);

    pieces_.reserve(knots);
    log_scale_.reserve(knots);

    // piece 0: rho = 1 on [0, 1]
    cheb::Series one;
    one.lo = 0.0;
    one.hi = 1.0;
    one.a = {1.0};
    pieces_.push_back(one);
    log_scale_.push_back(0.0);

    for (int j = 1; j < knots; ++j) {
        const cheb::Series& prev = pieces_[j - 1];
        // w(u) = p_{j-1}(j) - int_j^u p_{j-1}(t-1)/t dt  equals rho(u)/rho(j-1)
        cheb::Series g = cheb::fit(j, j + 1.0, deg,
                                   [&prev](double t) { return prev.eval(t - 1.0) / t; });
        cheb::Series G = g.antiderivative();
        double left = prev.eval(static_cast<double>(j));  // = rho(j)/rho(j-1)
        cheb::Series p = G;
        for (double& c : p.a) c = -c / left;
        p.a[0] += 1.0;  // p_j = (left - G)/left, normalized so p_j(j) = 1
        pieces_.push_back(p);
        log_scale_.push_back(log_scale_[j - 1] + std::log(left));
    }

    derivs_.reserve(pieces_.size());
    for (const auto& p : pieces_) derivs_.push_back(p.derivative());
    antis_.reserve(pieces_.size());
    for (const auto& p : pieces_) antis_.push_back(p.antiderivative());

    // suffix integrals over whole pieces, accumulated from the far end;
    // beyond max_u use the log-linear envelope rho(M)/xi(M).
    double log_rho_max = log_scale_.back() + std::log(std::max(pieces_.back().eval(knots * 1.0), 1e-300));
    double xi_max = XiSolver{}.solve(static_cast<double>(knots));
    tail_beyond_max_ = std::exp(log_rho_max) / xi_max;
    suffix_integral_.assign(knots + 1, 0.0);
    suffix_integral_[knots] = tail_beyond_max_;
    for (int j = knots - 1; j >= 0; --j) {
        double piece_int = pieces_[j].integral() * std::exp(log_scale_[j]);
        suffix_integral_[j] = suffix_integral_[j + 1] + piece_int;
    }
}

RhoResult RhoEvaluator::rho(double u) const {
    if (!(u >= 0.0) || !std::isfinite(u)) throw std::domain_error("rho: need finite u >= 0");
    if (u <= 1.0) return {1.0, 0.0, false};
    if (u > opt_.tail_switch) {
        double lv = log_rho_asymptotic(u);
        return {std::exp(lv), lv, true};
    }
    std::size_t j = static_cast<std::size_t>(u);
    if (j >= pieces_.size()) j = pieces_.size() - 1;
    double p = pieces_[j].eval(u);
    double lv = log_scale_[j] + std::log(std::max(p, 5e-324));
    return {p * std::exp(log_scale_[j]), lv, false};
}

double RhoEvaluator::deriv(double u) const {
    if (!std::isfinite(u)) throw std::domain_error("rho_deriv: non-finite u");
    if (u < 1.0) return 0.0;
    if (u == 1.0) throw std::domain_error("rho_deriv: kink at u = 1");
    if (u > opt_.max_u) throw std::domain_error("rho_deriv: beyond covered range");
    std::size_t j = static_cast<std::size_t>(u);
    if (j >= pieces_.size()) j = pieces_.size() - 1;
    return derivs_[j].eval(u) * std::exp(log_scale_[j]);
}

double RhoEvaluator::tail_integral(double B) const {
    if (!(B >= 0.0) || !std::isfinite(B)) throw std::domain_error("rho_tail_integral: need B >= 0");
    if (B >= opt_.max_u) return tail_beyond_max_;  // envelope-level estimate
    std::size_t j = static_cast<std::size_t>(B);
    if (j >= pieces_.size()) j = pieces_.size() - 1;
    // int_B^{j+1} rho = full piece integral minus the head [j, B]
    double head = antis_[j].eval(B);  // int_j^B p_j
    double piece_int = pieces_[j].integral();
    return (piece_int - head) * std::exp(log_scale_[j]) + suffix_integral_[j + 1];
}

double RhoEvaluator::perturb_ratio(double u, double v) const {
    if (!(u >= 2.0)) throw std::domain_error("rho_perturb_check: need u >= 2");
    if (std::abs(v) > 1.0 / std::log(u))
        throw std::domain_error("rho_perturb_check: need |v| <= 1/log u");
    if (v == 0.0) return 0.0;
    double d = std::expm1(log_rho(u + v) - log_rho(u));
    return std::abs(d) / (std::abs(v) * std::log(u + 1.0));
}

double RhoEvaluator::eval_piece(int j, double u) const {
    return pieces_.at(j).eval(u) * std::exp(log_scale_.at(j));
}

}  // namespace charsum
