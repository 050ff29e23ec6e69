#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "charsum/common.hpp"
#include "charsum/dickman.hpp"

namespace charsum {

// Largest-prime-factor table on [1, limit]; P(1) = 1 by convention so that
// 1 counts as y-smooth for every y >= 2.
class SmoothSieve {
public:
    static constexpr std::uint64_t kMaxLimit = 100'000'000ull;

    explicit SmoothSieve(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }

    std::uint32_t largest_prime_factor(std::uint64_t n) const;
    bool is_smooth(std::uint64_t n, double y) const;

    // exact #{n <= x : P(n) <= y}
    std::uint64_t psi(double x, double y) const;

    // (psi(x,y)/x - rho(u)) / (rho(u) log(u+1)/log y), u = log x/log y
    double hildebrand_residual(double x, double y, const RhoEvaluator& rho) const;

    // exact sum of 1/n over y-smooth n with y^s < n <= y^r
    double smooth_log_sum(double y, double s, double r) const;

    // exact sum of 1/n over y-smooth n in (y^{log log y}, z]
    double smooth_tail_check(double y, double z) const;

    // (sum_{n in I, P(n)<=y} f(n)/n, rho(B) * sum_{n in I} f(n)/n) over I = [a, b]
    std::pair<cplx, cplx> remove_smoothness(double y, double B, double a, double b,
                                            const std::function<cplx(double)>& f,
                                            const RhoEvaluator& rho) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> lpf_;
};

// y-smooth integers in (lo, hi], generated from the prime list (no sieve
// table), returned ascending.  Throws capacity_error past max_count.
std::vector<std::uint64_t> smooth_numbers_in(double y, double lo, double hi,
                                             std::uint64_t max_count = 50'000'000ull);

// exact sum of 1/n over y-smooth n in (lo, hi] via generation
double smooth_reciprocal_sum(double y, double lo, double hi);

}  // namespace charsum
