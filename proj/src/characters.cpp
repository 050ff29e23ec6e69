#include "charsum/characters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "charsum/fft.hpp"

namespace charsum {

namespace {

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> fs;
    for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p) {
        if (n % p == 0) {
            fs.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

CharacterGroup::CharacterGroup(std::uint32_t q) : q_(q) {
    if (q < 3) throw std::domain_error("CharacterGroup: q must be a prime >= 3");
    if (q > kMaxModulus) throw capacity_error("CharacterGroup: q beyond configured cap");
    if (!is_prime_u64(q)) throw std::domain_error("CharacterGroup: q must be prime");

    auto factors = prime_factors(q - 1);
    g_ = 0;
    for (std::uint32_t g = 2; g < q; ++g) {
        bool primitive = true;
        for (std::uint32_t p : factors) {
            if (powmod_u64(g, (q - 1) / p, q) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g_ = g;
            break;
        }
    }
    if (g_ == 0) throw std::runtime_error("CharacterGroup: no primitive root found");

    ind_.assign(q, 0);
    std::uint64_t pow = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
        ind_[pow] = i;
        pow = (pow * g_) % q;
    }
}

std::uint32_t CharacterGroup::index(std::uint64_t n) const {
    std::uint64_t r = n % q_;
    if (r == 0) throw std::domain_error("index: n divisible by q");
    return ind_[r];
}

cplx CharacterGroup::chi(std::uint64_t ell, std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(q_);
    if (r < 0) r += q_;
    if (r == 0) return {0.0, 0.0};
    std::uint64_t t = (ell % (q_ - 1)) * ind_[r] % (q_ - 1);
    return e2pi(static_cast<double>(t) / static_cast<double>(q_ - 1));
}

cplx CharacterGroup::partial_sum(std::uint64_t ell, double x) const {
    KahanCSum acc;
    std::uint64_t nx = static_cast<std::uint64_t>(x);
    std::uint64_t order = q_ - 1;
    std::uint64_t l = ell % order;
    for (std::uint64_t n = 1; n <= nx; ++n) {
        std::uint64_t r = n % q_;
        if (r == 0) continue;
        std::uint64_t t = l * ind_[r] % order;
        acc.add(e2pi(static_cast<double>(t) / static_cast<double>(order)));
    }
    return acc.value();
}

std::vector<cplx> CharacterGroup::all_partial_sums_fft(double x) const {
    std::uint32_t order = q_ - 1;
    std::vector<cplx> counts(order, cplx(0.0, 0.0));
    std::uint64_t nx = std::min<std::uint64_t>(static_cast<std::uint64_t>(x), q_ - 1);
    for (std::uint64_t n = 1; n <= nx; ++n) counts[ind_[n]] += 1.0;
    // X_ell = sum_j c_j e(+ell j/(q-1))
    return fft::dft(counts, +1);
}

std::vector<cplx> CharacterGroup::all_partial_sums_naive(double x) const {
    std::uint32_t order = q_ - 1;
    std::uint64_t nx = std::min<std::uint64_t>(static_cast<std::uint64_t>(x), q_ - 1);
    std::vector<cplx> roots(order);
    for (std::uint32_t t = 0; t < order; ++t)
        roots[t] = e2pi(static_cast<double>(t) / static_cast<double>(order));
    std::vector<cplx> out(order);
    for (std::uint32_t ell = 0; ell < order; ++ell) {
        KahanCSum acc;
        for (std::uint64_t n = 1; n <= nx; ++n)
            acc.add(roots[static_cast<std::uint64_t>(ell) * ind_[n] % order]);
        out[ell] = acc.value();
    }
    return out;
}

CharacterGroup::SweepResult CharacterGroup::sweep_max(double x, Parity parity,
                                                      bool exclude_principal,
                                                      bool fast_path) const {
    if (x > static_cast<double>(q_)) throw std::domain_error("sweep_max: x > q");
    std::vector<cplx> sums = fast_path ? all_partial_sums_fft(x) : all_partial_sums_naive(x);
    double best = -1.0;
    std::uint32_t best_ell = 0;
    for (std::uint32_t ell = 0; ell < sums.size(); ++ell) {
        if (exclude_principal && ell == 0) continue;
        if (parity == Parity::odd && ell % 2 == 0) continue;
        if (parity == Parity::even && ell % 2 == 1) continue;
        double a = std::abs(sums[ell]);
        if (a > best) {
            best = a;
            best_ell = ell;
        }
    }
    if (best < 0.0) throw std::domain_error("sweep_max: empty character selection");
    return {best, best_ell};
}

cplx CharacterGroup::gauss_sum(std::uint64_t ell) const {
    std::uint64_t order = q_ - 1;
    if (ell % order == 0) throw std::domain_error("gauss_sum: principal character excluded");
    std::uint64_t l = ell % order;
    KahanCSum acc;
    for (std::uint64_t a = 1; a < q_; ++a) {
        std::uint64_t t = l * ind_[a] % order;
        acc.add(e2pi(static_cast<double>(t) / static_cast<double>(order)) *
                e2pi(static_cast<double>(a) / static_cast<double>(q_)));
    }
    return acc.value();
}

cplx CharacterGroup::polya_rhs(std::uint64_t ell, double alpha, double z) const {
    std::uint64_t order = q_ - 1;
    if (ell % order == 0) throw std::domain_error("polya_rhs: principal character excluded");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("polya_rhs: alpha in (0,1)");
    std::uint64_t lbar = (order - ell % order) % order;
    double chi_m1 = (ell % 2 == 0) ? 1.0 : -1.0;  // conj(chi)(-1) = chi(-1)
    KahanCSum acc;
    std::uint64_t nz = static_cast<std::uint64_t>(z);
    for (std::uint64_t n = 1; n <= nz; ++n) {
        std::uint64_t r = n % q_;
        if (r == 0) continue;
        std::uint64_t t = lbar * ind_[r] % order;
        cplx cb = e2pi(static_cast<double>(t) / static_cast<double>(order));
        cplx em = e2pi(-alpha * static_cast<double>(n));
        cplx ep = std::conj(em);
        acc.add(cb * ((1.0 - em) - chi_m1 * (1.0 - ep)) / static_cast<double>(n));
    }
    cplx tau = gauss_sum(ell);
    return tau / cplx(0.0, kTwoPi) * acc.value();
}

std::int64_t CharacterGroup::theta_numerator(std::uint64_t ell, std::uint32_t p) const {
    std::uint64_t order = q_ - 1;
    std::uint64_t t = (ell % order) * ind_[p % q_] % order;
    // centered representative in (-order/2, order/2]
    if (2 * t > order) return static_cast<std::int64_t>(t) - static_cast<std::int64_t>(order);
    return static_cast<std::int64_t>(t);
}

std::vector<double> CharacterGroup::theta_vector(std::uint64_t ell, int k) const {
    if (k < 1) throw std::domain_error("theta_vector: k must be positive");
    std::vector<std::uint32_t> primes;
    std::uint32_t bound = 16;
    while (static_cast<int>((primes = primes_up_to(bound)).size()) < k) bound *= 2;
    primes.resize(k);
    if (primes.back() >= q_) throw std::domain_error("theta_vector: p_k >= q");
    std::vector<double> theta(k);
    for (int j = 0; j < k; ++j)
        theta[j] = static_cast<double>(theta_numerator(ell, primes[j])) /
                   static_cast<double>(q_ - 1);
    return theta;
}

}  // namespace charsum
