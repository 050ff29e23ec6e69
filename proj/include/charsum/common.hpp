#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace charsum {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;
inline constexpr double kEulerGamma = std::numbers::egamma_v<double>;

// Thrown when a request exceeds a configured table/search capacity, as
// opposed to a mathematically invalid argument (std::domain_error).
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// e(x) = exp(2*pi*i*x)
inline cplx e2pi(double x) {
    double t = kTwoPi * x;
    return {std::cos(t), std::sin(t)};
}

// Kahan compensated accumulators.  All "exact" floating sums in this
// project go through these.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

struct KahanCSum {
    KahanSum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Ascending primes <= n by plain sieve; meant for small n (prime tables,
// character argument vectors, Euler products).
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
    std::vector<std::uint32_t> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (std::uint32_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (std::uint64_t m = static_cast<std::uint64_t>(p) * p; m <= n; m += p) composite[m] = true;
    }
    return primes;
}

}  // namespace charsum
