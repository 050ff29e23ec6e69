#include "charsum/expsum.hpp"

#include <cmath>
#include <stdexcept>

#include "charsum/quad.hpp"

namespace charsum {

namespace {

inline cplx e_signed(double phase_cycles, int sign) {
    double t = kTwoPi * phase_cycles;
    return {std::cos(t), sign >= 0 ? std::sin(t) : -std::sin(t)};
}

}  // namespace

cplx head_sum(double alpha, int sign) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("head_sum: alpha in (0,1) required");
    std::uint64_t n0 = static_cast<std::uint64_t>(std::floor(1.0 / alpha));
    KahanCSum acc;
    for (std::uint64_t n = 1; n <= n0; ++n)
        acc.add((cplx(1.0, 0.0) - e_signed(alpha * static_cast<double>(n), sign)) /
                static_cast<double>(n));
    return acc.value();
}

double head_prefix_modulus(double alpha, int sign) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("head_prefix_modulus: alpha in (0,1)");
    double cut = 1.0 / (alpha * std::abs(std::log(alpha)));
    KahanCSum acc;
    for (std::uint64_t n = 1; static_cast<double>(n) <= cut; ++n)
        acc.add((cplx(1.0, 0.0) - e_signed(alpha * static_cast<double>(n), sign)) /
                static_cast<double>(n));
    return std::abs(acc.value());
}

AccelTail exp_log_tail(double alpha, int sign, double N) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("exp_log_tail: alpha in (0,1)");
    double G = 1.0 / (2.0 * std::sin(std::numbers::pi_v<double> * std::min(alpha, 1.0 - alpha)));
    // direct summation until the boundary series converges comfortably
    double start = std::max(N, 0.0);
    double accel_from = std::max({start, 40.0 * G, 64.0});
    KahanCSum direct;
    for (std::uint64_t n = static_cast<std::uint64_t>(start) + 1;
         static_cast<double>(n) <= accel_from; ++n)
        direct.add(e_signed(alpha * static_cast<double>(n), sign) / static_cast<double>(n));
    double M = std::floor(accel_from);  // series starts at n > M

    // Iterated Abel:  S[b] = B*b(M+1) - F*S[db],  B = w^{M+1}/(1-w),  F = w/(1-w),
    // so S = B * sum_m (-F)^m d^m b(M+1) with remainder |F|^D d^{D-1} b(M+1).
    // For b(n) = 1/n the forward differences are d^m b(n) = m!/(n...(n+m)).
    cplx w = e_signed(alpha, sign);
    cplx one_minus_w = cplx(1.0, 0.0) - w;
    cplx minus_F = -w / one_minus_w;
    cplx B = e_signed(alpha * (M + 1.0), sign) / one_minus_w;
    double dmb = 1.0 / (M + 1.0);  // d^m b(M+1), starting at m = 0
    KahanCSum series;
    cplx pow_mF(1.0, 0.0);
    double bound = std::abs(minus_F) * dmb;
    for (int m = 0; m < 60; ++m) {
        series.add(pow_mF * B * dmb);
        pow_mF *= minus_F;
        bound = std::abs(pow_mF) * dmb;  // remainder after the terms added so far
        if (bound < 1e-17) break;
        dmb *= static_cast<double>(m + 1) / (M + 2.0 + m);
    }
    return {direct.value() + series.value(), bound};
}

AccelTail exp_log_tail_direct(double alpha, int sign, double N, std::uint64_t terms) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("exp_log_tail_direct: alpha in (0,1)");
    KahanCSum acc;
    std::uint64_t first = static_cast<std::uint64_t>(std::floor(N)) + 1;
    for (std::uint64_t n = first; n < first + terms; ++n)
        acc.add(e_signed(alpha * static_cast<double>(n), sign) / static_cast<double>(n));
    double G = 1.0 / (2.0 * std::sin(std::numbers::pi_v<double> * std::min(alpha, 1.0 - alpha)));
    double bound = 2.0 * G / static_cast<double>(first + terms);  // partial summation
    return {acc.value(), bound};
}

TailResult tail_sum(double alpha, int sign, double c) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("tail_sum: alpha in (0,1) required");
    double n0 = std::floor(1.0 / alpha);
    AccelTail full = exp_log_tail(alpha, sign, n0);
    double cutoff = std::pow(std::abs(std::log(alpha)), c) / alpha;
    cutoff = std::max(cutoff, n0);
    AccelTail beyond = exp_log_tail(alpha, sign, std::floor(cutoff));
    return {full.value, full.bound, cutoff, beyond.value, beyond.bound};
}

MainConstant main_constant_residual(double alpha, int sign) {
    if (!(alpha > 0.0 && alpha <= 0.1)) throw std::domain_error("main_constant_residual: alpha in (0, 0.1]");
    cplx value = head_sum(alpha, sign) - tail_sum(alpha, sign).value;
    cplx target(std::log(kTwoPi) + kEulerGamma,
                sign >= 0 ? -std::numbers::pi_v<double> / 2.0 : std::numbers::pi_v<double> / 2.0);
    double denom = alpha * std::abs(std::log(alpha));
    return {value, target, std::abs(value - target) / denom};
}

FractionalIntegral fractional_integral_check(double alpha, int sign, double Y) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("fractional_integral_check: alpha in (0,1)");
    if (!(Y >= 1.0)) throw std::domain_error("fractional_integral_check: Y >= 1 required");
    // integrate over unit intervals (integrand is smooth between integers),
    // directly out to T; the dropped tail is oscillatory with 1/t envelope
    double T = Y + std::ceil(3000.0 / alpha);
    static const quad::GaussRule rule = quad::gauss_legendre(12);
    KahanCSum acc;
    double a = Y;
    double b = std::floor(Y) + 1.0;
    while (a < T) {
        if (b > T) b = T;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        cplx s(0.0, 0.0);
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            double t = mid + half * rule.x[i];
            double frac = t - std::floor(t);
            s += rule.w[i] * frac / t * e_signed(alpha * t, sign);
        }
        acc.add(s * half);
        a = b;
        b += 1.0;
    }
    double G = 1.0 / (2.0 * std::sin(std::numbers::pi_v<double> * std::min(alpha, 1.0 - alpha)));
    double tail_bound = 4.0 * G / T;
    double envelope = 1.0 + 1.0 / (alpha * Y);
    cplx v = acc.value();
    return {v, envelope, std::abs(v) / envelope, tail_bound};
}

}  // namespace charsum
