#include "charsum/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace charsum {

SmoothSieve::SmoothSieve(std::uint64_t limit) : limit_(limit) {
    if (limit < 1) throw std::domain_error("SmoothSieve: limit must be >= 1");
    if (limit > kMaxLimit) throw capacity_error("SmoothSieve: limit beyond configured cap");
    lpf_.assign(limit + 1, 0);
    lpf_[1] = 1;
    // ascending primes overwrite, so the final entry is the largest factor
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (lpf_[p] != 0) continue;
        for (std::uint64_t m = p; m <= limit; m += p) lpf_[m] = static_cast<std::uint32_t>(p);
    }
}

std::uint32_t SmoothSieve::largest_prime_factor(std::uint64_t n) const {
    if (n == 0) throw std::domain_error("largest_prime_factor: n must be positive");
    if (n > limit_) throw capacity_error("largest_prime_factor: n beyond sieve limit");
    return lpf_[n];
}

bool SmoothSieve::is_smooth(std::uint64_t n, double y) const {
    return static_cast<double>(largest_prime_factor(n)) <= y;
}

std::uint64_t SmoothSieve::psi(double x, double y) const {
    if (!(x > 0.0) || !(y >= 2.0)) throw std::domain_error("psi: need x > 0, y >= 2");
    if (x > static_cast<double>(limit_)) throw capacity_error("psi: x beyond sieve limit");
    std::uint64_t nx = static_cast<std::uint64_t>(x);
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= nx; ++n)
        if (static_cast<double>(lpf_[n]) <= y) ++count;
    return count;
}

double SmoothSieve::hildebrand_residual(double x, double y, const RhoEvaluator& rho) const {
    double u = std::log(x) / std::log(y);
    double r = rho(u);
    double lhs = static_cast<double>(psi(x, y)) / x - r;
    return lhs / (r * std::log(u + 1.0) / std::log(y));
}

double SmoothSieve::smooth_log_sum(double y, double s, double r) const {
    if (!(y >= 2.0) || !(s >= 0.0) || !(r >= s)) throw std::domain_error("smooth_log_sum: need y >= 2, 0 <= s <= r");
    double hi = std::pow(y, r);
    if (hi > static_cast<double>(limit_) * (1.0 + 1e-12))
        throw capacity_error("smooth_log_sum: y^r beyond sieve limit");
    std::uint64_t lo_n = static_cast<std::uint64_t>(std::pow(y, s));
    std::uint64_t hi_n = std::min(static_cast<std::uint64_t>(hi), limit_);
    KahanSum acc;
    for (std::uint64_t n = lo_n + 1; n <= hi_n; ++n)
        if (static_cast<double>(lpf_[n]) <= y) acc.add(1.0 / static_cast<double>(n));
    return acc.value();
}

double SmoothSieve::smooth_tail_check(double y, double z) const {
    if (!(y >= 2.0)) throw std::domain_error("smooth_tail_check: need y >= 2");
    double lo = std::pow(y, std::log(std::log(y)));
    if (z <= static_cast<double>(limit_)) {
        std::uint64_t lo_n = static_cast<std::uint64_t>(lo);
        std::uint64_t hi_n = static_cast<std::uint64_t>(z);
        KahanSum acc;
        for (std::uint64_t n = lo_n + 1; n <= hi_n; ++n)
            if (static_cast<double>(lpf_[n]) <= y) acc.add(1.0 / static_cast<double>(n));
        return acc.value();
    }
    // beyond the table: generate the (few) smooth integers directly
    return smooth_reciprocal_sum(y, lo, z);
}

std::pair<cplx, cplx> SmoothSieve::remove_smoothness(double y, double B, double a, double b,
                                                     const std::function<cplx(double)>& f,
                                                     const RhoEvaluator& rho) const {
    if (b > static_cast<double>(limit_)) throw capacity_error("remove_smoothness: interval beyond sieve limit");
    if (!(a <= b)) throw std::domain_error("remove_smoothness: empty interval order");
    KahanCSum smooth_acc, all_acc;
    std::uint64_t lo_n = static_cast<std::uint64_t>(std::ceil(a));
    std::uint64_t hi_n = static_cast<std::uint64_t>(std::floor(b));
    for (std::uint64_t n = std::max<std::uint64_t>(lo_n, 1); n <= hi_n; ++n) {
        cplx v = f(static_cast<double>(n));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("remove_smoothness: non-finite f value");
        cplx term = v / static_cast<double>(n);
        all_acc.add(term);
        if (static_cast<double>(lpf_[n]) <= y) smooth_acc.add(term);
    }
    return {smooth_acc.value(), rho(B) * all_acc.value()};
}

namespace {

void gen_smooth(const std::vector<std::uint32_t>& primes, std::size_t i, std::uint64_t cur,
                double lo, double hi, std::uint64_t max_count, std::vector<std::uint64_t>& out) {
    if (static_cast<double>(cur) > lo) {
        if (out.size() >= max_count) throw capacity_error("smooth generation: too many values");
        out.push_back(cur);
    }
    for (std::size_t j = i; j < primes.size(); ++j) {
        // range capped at 9e15 so the product below stays exact in double
        if (static_cast<double>(cur) * primes[j] > hi) break;  // primes ascending
        gen_smooth(primes, j, cur * primes[j], lo, hi, max_count, out);
    }
}

}  // namespace

std::vector<std::uint64_t> smooth_numbers_in(double y, double lo, double hi,
                                             std::uint64_t max_count) {
    if (!(y >= 2.0)) throw std::domain_error("smooth_numbers_in: need y >= 2");
    if (hi > 9.0e15) throw capacity_error("smooth_numbers_in: range too large for exact integers");
    auto primes = primes_up_to(static_cast<std::uint32_t>(y));
    std::vector<std::uint64_t> out;
    gen_smooth(primes, 0, 1, lo, hi, max_count, out);
    std::sort(out.begin(), out.end());
    return out;
}

double smooth_reciprocal_sum(double y, double lo, double hi) {
    auto ns = smooth_numbers_in(y, lo, hi);
    KahanSum acc;
    for (std::uint64_t n : ns) acc.add(1.0 / static_cast<double>(n));
    return acc.value();
}

}  // namespace charsum
