#pragma once

#include <cstdint>
#include <vector>

#include "charsum/common.hpp"

namespace charsum {

enum class Parity { any, odd, even };

// Character group mod a prime q, realized through the smallest primitive
// root g and the discrete-log table ind[], with chi_ell(n) = e(ell*ind[n]/(q-1)).
class CharacterGroup {
public:
    static constexpr std::uint32_t kMaxModulus = 20'000'000u;

    explicit CharacterGroup(std::uint32_t q);

    std::uint32_t q() const { return q_; }
    std::uint32_t order() const { return q_ - 1; }
    std::uint32_t generator() const { return g_; }

    // discrete log of n (1 <= n mod q <= q-1) to base g
    std::uint32_t index(std::uint64_t n) const;

    // chi_ell(n); 0 when q | n.  Completely multiplicative in n.
    cplx chi(std::uint64_t ell, std::int64_t n) const;

    bool is_even(std::uint64_t ell) const { return ell % 2 == 0; }

    // sum_{n <= x} chi_ell(n), compensated accumulation
    cplx partial_sum(std::uint64_t ell, double x) const;

    // all q-1 partial sums at once, indexed by ell
    std::vector<cplx> all_partial_sums_fft(double x) const;    // length-(q-1) DFT of the index indicator
    std::vector<cplx> all_partial_sums_naive(double x) const;  // per-character reference path

    struct SweepResult {
        double max_abs;
        std::uint32_t argmax_ell;
    };
    SweepResult sweep_max(double x, Parity parity, bool exclude_principal,
                          bool fast_path = true) const;

    // tau(chi_ell), ell != 0; |tau| = sqrt(q)
    cplx gauss_sum(std::uint64_t ell) const;

    // (tau(chi)/2 pi i) * sum_{1<=|n|<=z} conj(chi)(n) (1 - e(-alpha n))/n
    cplx polya_rhs(std::uint64_t ell, double alpha, double z) const;

    // theta_p = centered ell*ind[p]/(q-1) in (-1/2, 1/2] over the first k primes
    std::vector<double> theta_vector(std::uint64_t ell, int k) const;

    // exact centered numerator of theta_p: theta = theta_num(ell, p) / (q-1)
    std::int64_t theta_numerator(std::uint64_t ell, std::uint32_t p) const;

private:
    std::uint32_t q_, g_;
    std::vector<std::uint32_t> ind_;
};

}  // namespace charsum
