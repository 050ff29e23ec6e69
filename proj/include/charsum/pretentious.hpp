#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/common.hpp"
#include "charsum/dickman.hpp"

namespace charsum {

// h(T) = log log T / N
inline double h_function(double T, double N) { return std::log(std::log(T)) / N; }

// |chi(p)-1| <= eps  <=>  |theta_p| <= asin(eps/2)/pi; these convert between
// the value-based and argument-based thresholds
inline double eps_to_theta(double eps) { return std::asin(std::min(eps, 2.0) / 2.0) / std::numbers::pi_v<double>; }
inline double theta_to_eps(double theta) { return 2.0 * std::sin(std::numbers::pi_v<double> * theta); }

struct PretentiousnessCertificate {
    std::uint32_t q;
    std::uint64_t ell;
    double T;
    double max_dev;  // max over p <= T of |chi(p) - 1|
    bool odd;
    bool principal;
};

enum class SearchStrategy { automatic, exhaustive, pigeonhole };

inline constexpr std::uint32_t kExhaustiveSearchCap = 1'000'000u;

// All characters (by ell, ascending) with max_{p<=T} |chi(p)-1| <= eps and the
// requested parity.  Exhaustive below the cap; above it a pigeonhole bucket
// scan returns a nonempty stream of certified characters instead.
std::vector<PretentiousnessCertificate> search_pretentious(const CharacterGroup& G, double T,
                                                           double eps, Parity parity,
                                                           SearchStrategy strategy = SearchStrategy::automatic);

// Soundness pass: recompute max_dev for a claimed certificate.
double certify_max_dev(const CharacterGroup& G, std::uint64_t ell, double T);

struct CountBound {
    long long count;
    double bound;  // phi(q)/(2 N^{pi(T)})
    bool ok;       // exact integer comparison count*2*N^k >= q-1
};
// #(even chi with max |theta_p| <= 1/N over p <= T) against phi(q)/(2N^{pi(T)})
CountBound count_bound_check(const CharacterGroup& G, double T, long long N);

// sum_{p <= y} (chi(p)-1)/p
cplx prime_log_sum(const CharacterGroup& G, std::uint64_t ell, double y);

struct ChiMinusOneBound {
    double lhs;  // |chi(n)-1|
    double rhs;  // sum over p^k || n of k*|chi(p)-1|
};
ChiMinusOneBound chi_minus_one_bound(const CharacterGroup& G, std::uint64_t ell, std::uint64_t n);

struct EulerProductCheck {
    cplx sum_value;      // sum over y-smooth n <= H of chi(n)/n
    double tail_bound;   // envelope estimate of the dropped n > H part
    cplx product_value;  // prod_{p<=y} (1 - chi(p)/p)^{-1}
    double mertens_ref;  // e^gamma log y
};
EulerProductCheck euler_product_check(const CharacterGroup& G, std::uint64_t ell, double y,
                                      double H, const RhoEvaluator& rho);

struct SmoothCharTail {
    cplx value;         // sum over y-smooth n in (y^B, H] of chi(n)/n
    double tail_bound;  // envelope estimate for n > H
    double reference;   // log y * int_B^inf rho
};
SmoothCharTail smooth_char_tail_sum(const CharacterGroup& G, std::uint64_t ell, double y, double B,
                                    double H, const RhoEvaluator& rho);

struct SwitchReport {
    cplx char_sum;   // sum f(n) chi(n)/n over y-smooth n in [y^u, y^u2]
    cplx unit_sum;   // sum f(n)/n over the same range
    double envelope; // h(T) log y int_w^{w'} rho
};
SwitchReport switch_to_one(const CharacterGroup& G, std::uint64_t ell, double y, double u,
                           double u2, const std::function<cplx(std::uint64_t)>& f, double T,
                           double N, const RhoEvaluator& rho);

}  // namespace charsum
