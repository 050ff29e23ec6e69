#include "charsum/pretentious.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace charsum {

namespace {

// max over p <= T of the exact deviation 2|sin(pi * ell ind[p]/(q-1))|
double max_dev_over_primes(const CharacterGroup& G, std::uint64_t ell,
                           const std::vector<std::uint32_t>& primes) {
    double dev = 0.0;
    for (std::uint32_t p : primes) {
        double theta = static_cast<double>(G.theta_numerator(ell, p)) / G.order();
        dev = std::max(dev, std::abs(2.0 * std::sin(std::numbers::pi_v<double> * theta)));
    }
    return dev;
}

}  // namespace

double certify_max_dev(const CharacterGroup& G, std::uint64_t ell, double T) {
    if (!(T < G.q())) throw std::domain_error("certify_max_dev: need T < q");
    auto primes = primes_up_to(static_cast<std::uint32_t>(T));
    return max_dev_over_primes(G, ell, primes);
}

std::vector<PretentiousnessCertificate> search_pretentious(const CharacterGroup& G, double T,
                                                           double eps, Parity parity,
                                                           SearchStrategy strategy) {
    if (!(T < G.q())) throw std::domain_error("search_pretentious: need T < q");
    if (!(eps > 0.0 && eps <= 2.0)) throw std::domain_error("search_pretentious: eps in (0, 2]");
    auto primes = primes_up_to(static_cast<std::uint32_t>(T));

    bool exhaustive = strategy == SearchStrategy::exhaustive ||
                      (strategy == SearchStrategy::automatic && G.q() <= kExhaustiveSearchCap);

    auto matches_parity = [&](std::uint64_t ell) {
        if (parity == Parity::odd) return ell % 2 == 1;
        if (parity == Parity::even) return ell % 2 == 0;
        return true;
    };
    auto make_cert = [&](std::uint64_t ell, double dev) {
        return PretentiousnessCertificate{G.q(), ell, T, dev, ell % 2 == 1, ell == 0};
    };

    std::vector<PretentiousnessCertificate> out;
    if (exhaustive) {
        for (std::uint64_t ell = 0; ell < G.order(); ++ell) {
            if (!matches_parity(ell)) continue;
            double dev = max_dev_over_primes(G, ell, primes);
            if (dev <= eps) out.push_back(make_cert(ell, dev));
        }
        return out;
    }

    // Pigeonhole stream: bucket the argument vectors on an N^k grid; two
    // multipliers in one cell differ by a multiplier with all components
    // within 1/N, which converts back to |chi(p)-1| <= eps.
    long long N = static_cast<long long>(std::ceil(1.0 / eps_to_theta(eps)));
    std::uint64_t order = G.order();
    std::map<std::vector<long long>, std::uint64_t> cells;
    std::vector<long long> key(primes.size());
    std::vector<bool> seen(order, false);
    for (std::uint64_t ell = 0; ell < order; ++ell) {
        for (std::size_t j = 0; j < primes.size(); ++j) {
            std::uint64_t t = ell * G.index(primes[j]) % order;
            key[j] = static_cast<long long>(static_cast<unsigned __int128>(t) * N / order);
        }
        auto [it, fresh] = cells.try_emplace(key, ell);
        if (!fresh) {
            std::uint64_t diff = (ell - it->second) % order;
            for (std::uint64_t cand : {diff, order - diff}) {
                std::uint64_t c = cand % order;
                if (seen[c] || !matches_parity(c)) continue;
                double dev = max_dev_over_primes(G, c, primes);
                if (dev <= eps) {
                    seen[c] = true;
                    out.push_back(make_cert(c, dev));
                }
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.ell < b.ell; });
    return out;
}

CountBound count_bound_check(const CharacterGroup& G, double T, long long N) {
    if (!(N >= 1)) throw std::domain_error("count_bound_check: N >= 1 required");
    if (!(T >= 3.0)) throw std::domain_error("count_bound_check: T >= 3 required");
    auto primes = primes_up_to(static_cast<std::uint32_t>(T));
    if (primes.empty() || primes.back() >= G.q())
        throw std::domain_error("count_bound_check: p_{pi(T)} must be below q");
    std::uint64_t order = G.order();
    long long count = 0;
    for (std::uint64_t ell = 0; ell < order; ell += 2) {
        bool ok = true;
        for (std::uint32_t p : primes) {
            std::int64_t t = G.theta_numerator(ell, p);
            if (t < 0) t = -t;
            // |theta| <= 1/N  <=>  N |t| <= q-1
            if (static_cast<unsigned __int128>(t) * N > order) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    int k = static_cast<int>(primes.size());
    double bound = static_cast<double>(order) / (2.0 * std::pow(static_cast<double>(N), k));
    // exact: count * 2 * N^k >= q-1
    __int128 lhs = 2 * static_cast<__int128>(count);
    for (int i = 0; i < k && lhs < (static_cast<__int128>(1) << 100); ++i) lhs *= N;
    return {count, bound, lhs >= order};
}

cplx prime_log_sum(const CharacterGroup& G, std::uint64_t ell, double y) {
    if (!(y < G.q())) throw std::domain_error("prime_log_sum: need y < q");
    auto primes = primes_up_to(static_cast<std::uint32_t>(y));
    KahanCSum acc;
    for (std::uint32_t p : primes)
        acc.add((G.chi(ell, p) - cplx(1.0, 0.0)) / static_cast<double>(p));
    return acc.value();
}

ChiMinusOneBound chi_minus_one_bound(const CharacterGroup& G, std::uint64_t ell, std::uint64_t n) {
    if (n % G.q() == 0) throw std::domain_error("chi_minus_one_bound: need gcd(n, q) = 1");
    double lhs = std::abs(G.chi(ell, static_cast<std::int64_t>(n)) - cplx(1.0, 0.0));
    double rhs = 0.0;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        int mult = 0;
        while (m % p == 0) {
            m /= p;
            ++mult;
        }
        rhs += mult * std::abs(G.chi(ell, static_cast<std::int64_t>(p)) - cplx(1.0, 0.0));
    }
    if (m > 1) rhs += std::abs(G.chi(ell, static_cast<std::int64_t>(m)) - cplx(1.0, 0.0));
    return {lhs, rhs};
}

namespace {

// sum of chi(n)/n (and optionally f(n) chi(n)/n) over y-smooth n in (lo, hi],
// generated from primes with the discrete log carried along so no modular
// reduction of n is ever needed.
struct SmoothCharSummer {
    const CharacterGroup& G;
    std::vector<std::uint32_t> primes;
    std::vector<std::uint32_t> prime_index;  // ind[p]
    std::uint64_t order;

    SmoothCharSummer(const CharacterGroup& g, double y) : G(g), order(g.order()) {
        primes = primes_up_to(static_cast<std::uint32_t>(y));
        prime_index.reserve(primes.size());
        for (std::uint32_t p : primes) prime_index.push_back(g.index(p));
    }

    // collect (n, ind[n mod q]) pairs
    void gen(std::size_t i, std::uint64_t n, std::uint64_t idx, double lo, double hi,
             std::vector<std::pair<std::uint64_t, std::uint64_t>>& out) const {
        if (static_cast<double>(n) > lo) out.push_back({n, idx});
        if (out.size() > 80'000'000ull) throw capacity_error("smooth character sum: too many terms");
        for (std::size_t j = i; j < primes.size(); ++j) {
            if (static_cast<double>(n) * primes[j] > hi) break;
            gen(j, n * primes[j], (idx + prime_index[j]) % order, lo, hi, out);
        }
    }

    std::vector<std::pair<std::uint64_t, std::uint64_t>> collect(double lo, double hi) const {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        if (hi > 9.0e15) throw capacity_error("smooth character sum: range too large");
        gen(0, 1, 0, lo, hi, out);
        std::sort(out.begin(), out.end());
        return out;
    }

    cplx sum(std::uint64_t ell, double lo, double hi,
             const std::function<cplx(std::uint64_t)>* f = nullptr) const {
        auto terms = collect(lo, hi);
        KahanCSum acc;
        for (auto& [n, idx] : terms) {
            cplx c = e2pi(static_cast<double>(ell % order * idx % order) / static_cast<double>(order));
            if (f) c *= (*f)(n);
            acc.add(c / static_cast<double>(n));
        }
        return acc.value();
    }
};

double smooth_tail_envelope(double y, double H, const RhoEvaluator& rho) {
    double uH = std::log(H) / std::log(y);
    return std::log(y) * rho.tail_integral(uH) + rho(uH);
}

}  // namespace

EulerProductCheck euler_product_check(const CharacterGroup& G, std::uint64_t ell, double y,
                                      double H, const RhoEvaluator& rho) {
    if (!(y < G.q())) throw std::domain_error("euler_product_check: need y < q");
    SmoothCharSummer summer(G, y);
    cplx sum = summer.sum(ell, 0.0, H);  // includes n = 1
    cplx prod(1.0, 0.0);
    for (std::uint32_t p : summer.primes)
        prod *= 1.0 / (cplx(1.0, 0.0) - G.chi(ell, p) / static_cast<double>(p));
    return {sum, smooth_tail_envelope(y, H, rho), prod, std::exp(kEulerGamma) * std::log(y)};
}

SmoothCharTail smooth_char_tail_sum(const CharacterGroup& G, std::uint64_t ell, double y, double B,
                                    double H, const RhoEvaluator& rho) {
    if (!(y < G.q())) throw std::domain_error("smooth_char_tail_sum: need y < q");
    SmoothCharSummer summer(G, y);
    double lo = std::pow(y, B);
    cplx value = lo >= H ? cplx(0.0, 0.0) : summer.sum(ell, lo, H);
    return {value, smooth_tail_envelope(y, H, rho), std::log(y) * rho.tail_integral(B)};
}

SwitchReport switch_to_one(const CharacterGroup& G, std::uint64_t ell, double y, double u,
                           double u2, const std::function<cplx(std::uint64_t)>& f, double T,
                           double N, const RhoEvaluator& rho) {
    if (!(0.0 <= u && u <= u2)) throw std::domain_error("switch_to_one: need 0 <= u <= u'");
    SmoothCharSummer summer(G, y);
    // [y^u, y^u2] inclusive on both ends: integers n >= ceil(y^u)
    double lo = std::ceil(std::pow(y, u)) - 1.0, hi = std::pow(y, u2);
    auto terms = summer.collect(lo, hi);
    KahanCSum char_acc, unit_acc;
    std::uint64_t order = G.order();
    for (auto& [n, idx] : terms) {
        cplx fv = f(n);
        cplx c = e2pi(static_cast<double>(ell % order * idx % order) / static_cast<double>(order));
        char_acc.add(fv * c / static_cast<double>(n));
        unit_acc.add(fv / static_cast<double>(n));
    }
    double w = std::max(0.0, u - 1.0);
    double w2 = std::max(u2 - u, u2 - 1.0);
    double envelope = h_function(T, N) * std::log(y) *
                      (rho.tail_integral(w) - rho.tail_integral(w2));
    return {char_acc.value(), unit_acc.value(), envelope};
}

}  // namespace charsum
