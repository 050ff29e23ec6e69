#include "charsum/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "charsum/common.hpp"
#include "charsum/quad.hpp"

namespace charsum {

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

LatticeInstance::LatticeInstance(long long order, std::vector<long long> numerators)
    : M(order), k(static_cast<int>(numerators.size())), u(std::move(numerators)) {
    if (M < 1) throw std::domain_error("LatticeInstance: order must be positive");
    if (u.empty()) throw std::domain_error("LatticeInstance: empty vector");
    long long g = M;
    for (auto& x : u) {
        x %= M;
        if (x < 0) x += M;
        g = std::gcd(g, x);
    }
    if (g > 1) {  // reduce to the exact order M/g
        M /= g;
        for (auto& x : u) x /= g;
    }
}

long long LatticeInstance::centered(long long ell, int j) const {
    long long r = static_cast<long long>((static_cast<__int128>(ell) * u[j]) % M);
    if (r < 0) r += M;
    if (2 * r > M) r -= M;
    return r;
}

Rational LatticeInstance::dist(long long ell, int j) const {
    long long c = centered(ell, j);
    return Rational(c < 0 ? -c : c, M);
}

bool LatticeInstance::within(long long ell, const Rational& eta) const {
    for (int j = 0; j < k; ++j) {
        long long c = centered(ell, j);
        if (c < 0) c = -c;
        // |c|/M <= eta.num/eta.den
        if (static_cast<__int128>(c) * eta.den > static_cast<__int128>(eta.num) * M) return false;
    }
    return true;
}

MultiplierSet enumerate_small_multiples(const LatticeInstance& inst, long long n, Rational eta,
                                        bool plus) {
    if (n < 1) throw std::domain_error("enumerate_small_multiples: n >= 1 required");
    // eta = 0 is allowed and selects the exact-zero multiples
    if (eta < Rational(0) || Rational(1, 2) < eta)
        throw std::domain_error("enumerate_small_multiples: eta in [0, 1/2] required");
    if (inst.M > kLatticeEnumCap / std::max(inst.k, 1))
        throw capacity_error("enumerate_small_multiples: M beyond enumeration cap");
    MultiplierSet out{eta, n, plus, {}};
    for (long long ell = 0; ell < inst.M; ++ell) {
        bool residue_ok = plus ? (ell % n == 0) : (ell % n != 0);
        if (!residue_ok) continue;
        if (inst.within(ell, eta)) out.members.push_back(ell);
    }
    return out;
}

namespace {

Rational clamp_eta(const Rational& eta) {
    return Rational(1, 2) < eta ? Rational(1, 2) : eta;
}

// count >= M/(n N^k) decided exactly: count * n * N_num^k >= M * N_den^k
bool count_meets_bound(long long count, long long M, long long n, const Rational& N, int k) {
    __int128 lhs = count;
    lhs *= n;
    __int128 rhs = M;
    for (int i = 0; i < k; ++i) {
        lhs *= N.num;
        rhs *= N.den;
        if (lhs > (static_cast<__int128>(1) << 110)) break;  // already astronomically larger
    }
    return lhs >= rhs;
}

}  // namespace

PigeonholeWitness pigeonhole_witness(const LatticeInstance& inst, long long n, const Rational& N) {
    if (!(Rational(0) < N)) throw std::domain_error("pigeonhole_witness: N > 0 required");
    double bound = static_cast<double>(inst.M) / (static_cast<double>(n) * std::pow(N.to_double(), inst.k));
    if (!(static_cast<double>(n) < static_cast<double>(inst.M) / std::pow(N.to_double(), inst.k)))
        throw std::domain_error("pigeonhole_witness: need n < M/N^k");
    Rational eta = clamp_eta(Rational(N.den, N.num));  // 1/N capped at 1/2
    auto set = enumerate_small_multiples(inst, n, eta, true);
    long long count = static_cast<long long>(set.members.size());
    return {count, bound, count_meets_bound(count, inst.M, n, N, inst.k)};
}

ShiftReport shift_construction(const LatticeInstance& inst, long long n, const Rational& eta,
                               const Rational& nu) {
    auto witness_set = enumerate_small_multiples(inst, n, clamp_eta(nu), false);
    if (witness_set.members.empty())
        throw std::domain_error("shift_construction: C_{n^-}(nu, k) is empty");
    long long r = witness_set.members.front();
    auto plus_set = enumerate_small_multiples(inst, n, clamp_eta(eta), true);
    Rational eta_nu = clamp_eta(eta + nu);
    auto minus_set = enumerate_small_multiples(inst, n, eta_nu, false);
    bool injection_ok = true;
    for (long long s : plus_set.members) {
        long long ell = (r - s) % inst.M;
        if (ell < 0) ell += inst.M;
        if (ell % n == 0 || !inst.within(ell, eta_nu)) {
            injection_ok = false;
            break;
        }
    }
    long long cp = static_cast<long long>(plus_set.members.size());
    long long cm = static_cast<long long>(minus_set.members.size());
    return {r, cp, cm, injection_ok, cm >= cp};
}

namespace {

Rational residue_of(const LatticeInstance& inst, long long n, const std::vector<long long>& r) {
    __int128 dot = 0;
    for (int j = 0; j < inst.k; ++j) dot += static_cast<__int128>(r[j]) * inst.u[j];
    __int128 v = (static_cast<__int128>(n) * dot) % inst.M;
    if (v < 0) v += inst.M;
    return Rational(static_cast<long long>(v), inst.M);
}

// expects w[j] = (n*u_j) mod M; finds nonzero r, |r_j| <= L, sum r_j w_j = 0 mod M
std::optional<std::vector<long long>> exhaustive_relation(const std::vector<long long>& w,
                                                          long long M, long long L) {
    int k = static_cast<int>(w.size());
    std::vector<long long> r(k, -L);
    // partial sums to avoid recomputing the dot product per leaf
    std::vector<long long> partial(k + 1, 0);
    auto reduce = [M](long long v) {
        v %= M;
        if (v < 0) v += M;
        return v;
    };
    for (int j = 0; j < k; ++j)
        partial[j + 1] = reduce(partial[j] + reduce(-L % M * (w[j] % M)));
    while (true) {
        bool zero = std::all_of(r.begin(), r.end(), [](long long x) { return x == 0; });
        if (!zero && partial[k] == 0) return r;
        int j = k - 1;
        while (j >= 0 && r[j] == L) --j;
        if (j < 0) return std::nullopt;
        ++r[j];
        partial[j + 1] = reduce(partial[j] + reduce((r[j] % M) * (w[j] % M)));
        for (int i = j + 1; i < k; ++i) {
            r[i] = -L;
            partial[i + 1] = reduce(partial[i] + reduce(-L % M * (w[i] % M)));
        }
    }
}

}  // namespace

RelationSearchResult relation_search(const LatticeInstance& inst, long long n, long long L,
                                     SearchLimits limits) {
    if (inst.M % n != 0) throw std::domain_error("relation_search: n must divide M");
    if (L < 0) throw std::domain_error("relation_search: L must be nonnegative");
    const long long M = inst.M;
    const int k = inst.k;
    std::vector<long long> w(k);
    for (int j = 0; j < k; ++j) w[j] = static_cast<long long>((static_cast<__int128>(n) * inst.u[j]) % M);

    double space = std::pow(2.0 * static_cast<double>(L) + 1.0, k);
    if (space <= static_cast<double>(limits.exhaustive_cap)) {
        auto r = exhaustive_relation(w, M, L);
        if (!r) return {std::nullopt, true};
        return {RelationVector{*r, n, residue_of(inst, n, *r)}, true};
    }

    // meet in the middle over a coordinate split
    int k1 = k / 2;
    double left_space = std::pow(2.0 * L + 1.0, k1);
    double right_space = std::pow(2.0 * L + 1.0, k - k1);
    if (left_space > static_cast<double>(limits.meet_in_middle_cap) ||
        right_space > static_cast<double>(limits.meet_in_middle_cap))
        throw capacity_error("relation_search: search space beyond both strategies");

    auto reduce = [M](long long v) {
        v %= M;
        if (v < 0) v += M;
        return v;
    };
    // value -> first left assignment in iteration order; keep the all-zero
    // left separately so the nonzero-overall constraint stays checkable
    std::unordered_map<long long, std::vector<long long>> first_nonzero_left;
    first_nonzero_left.reserve(static_cast<std::size_t>(left_space));
    std::vector<long long> left(k1, 0);
    bool done = k1 == 0;
    std::vector<long long> cur(k1, -L);
    if (k1 == 0) cur.clear();
    auto left_value = [&](const std::vector<long long>& v) {
        long long s = 0;
        for (int j = 0; j < k1; ++j) s = reduce(s + reduce(v[j] % M * (w[j] % M)));
        return s;
    };
    if (!done) {
        while (true) {
            bool zero = std::all_of(cur.begin(), cur.end(), [](long long x) { return x == 0; });
            if (!zero) {
                long long v = left_value(cur);
                auto it = first_nonzero_left.find(v);
                if (it == first_nonzero_left.end()) first_nonzero_left.emplace(v, cur);
            }
            int j = k1 - 1;
            while (j >= 0 && cur[j] == L) --j;
            if (j < 0) break;
            ++cur[j];
            for (int i = j + 1; i < k1; ++i) cur[i] = -L;
        }
    }
    // iterate right side; for each right value, look for complementary left
    std::vector<long long> rcur(k - k1, -L);
    auto right_value = [&](const std::vector<long long>& v) {
        long long s = 0;
        for (int j = 0; j < k - k1; ++j) s = reduce(s + reduce(v[j] % M * (w[k1 + j] % M)));
        return s;
    };
    while (true) {
        long long rv = right_value(rcur);
        long long need = reduce(-rv);
        bool rzero = std::all_of(rcur.begin(), rcur.end(), [](long long x) { return x == 0; });
        auto it = first_nonzero_left.find(need);
        std::optional<std::vector<long long>> found;
        if (it != first_nonzero_left.end()) {
            found = it->second;
        } else if (need == 0 && !rzero) {
            found = std::vector<long long>(k1, 0);
        }
        if (found) {
            std::vector<long long> r = *found;
            r.insert(r.end(), rcur.begin(), rcur.end());
            return {RelationVector{r, n, residue_of(inst, n, r)}, true};
        }
        int j = k - k1 - 1;
        while (j >= 0 && rcur[j] == L) --j;
        if (j < 0) break;
        ++rcur[j];
        for (int i = j + 1; i < k - k1; ++i) rcur[i] = -L;
    }
    return {std::nullopt, true};
}

double bump_normalizer() {
    static std::once_flag flag;
    static double c0 = 0.0;
    std::call_once(flag, [] {
        // int_{-1/2}^{1/2} exp(-1/(1-(2x)^2)) dx, flat at the endpoints
        double I = quad::composite_gauss(-0.5, 0.5, 64, 16, [](double x) {
            double s = 1.0 - 4.0 * x * x;
            return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
        });
        c0 = 1.0 / I;
    });
    return c0;
}

double counting_function_S(const LatticeInstance& inst, long long n, const Rational& N) {
    if (inst.M > kLatticeEnumCap / std::max(inst.k, 1))
        throw capacity_error("counting_function_S: M beyond enumeration cap");
    double Nd = N.to_double();
    double c0 = bump_normalizer();
    auto phi = [c0](double x) {
        double s = 1.0 - 4.0 * x * x;
        return s > 0.0 ? c0 * std::exp(-1.0 / s) : 0.0;
    };
    KahanSum acc;
    for (long long ell = 1; ell < inst.M; ++ell) {
        if (ell % n == 0) continue;
        double prod = 1.0;
        for (int j = 0; j < inst.k && prod != 0.0; ++j) {
            long long c = inst.centered(ell, j);
            double x = static_cast<double>(c) / static_cast<double>(inst.M);
            prod *= Nd * phi(Nd * x);  // F_N reduces to the nearest-integer term
        }
        acc.add(prod);
    }
    return acc.value();
}

bool has_strict_interior_member(const LatticeInstance& inst, long long n, const Rational& N) {
    for (long long ell = 1; ell < inst.M; ++ell) {
        if (ell % n == 0) continue;
        bool inside = true;
        for (int j = 0; j < inst.k; ++j) {
            long long c = inst.centered(ell, j);
            if (c < 0) c = -c;
            // strict: |c|/M < 1/(2N)  <=>  2 N_num |c| < N_den M
            if (!(static_cast<__int128>(2) * N.num * c < static_cast<__int128>(N.den) * inst.M)) {
                inside = false;
                break;
            }
        }
        if (inside) return true;
    }
    return false;
}

DichotomyResult dichotomy_check(const LatticeInstance& inst, long long n, const Rational& N,
                                SearchLimits limits) {
    if (inst.M % n != 0) throw std::domain_error("dichotomy_check: n must divide M");
    double Nd = N.to_double();
    double logN = std::log(Nd);
    double Lreal = std::pow(static_cast<double>(inst.k), 4) * Nd * logN * logN;
    long long L = static_cast<long long>(std::floor(std::max(Lreal, 0.0)));
    DichotomyResult out;
    out.L = L;
    auto found = relation_search(inst, n, L, limits);
    if (found.relation) {
        out.relation = found.relation;
        return out;
    }
    // no relation up to L (covered): the count branch must carry the bound
    Rational two_over_N = clamp_eta(Rational(2 * N.den, N.num));
    auto set = enumerate_small_multiples(inst, n, two_over_N, false);
    long long count = static_cast<long long>(set.members.size());
    double bound = static_cast<double>(inst.M) / (static_cast<double>(n) * std::pow(Nd, inst.k));
    out.count = PigeonholeWitness{count, bound, count_meets_bound(count, inst.M, n, N, inst.k)};
    return out;
}

ObstructionReport obstruction_check(const LatticeInstance& inst, long long n,
                                    const std::vector<long long>& r, long long t) {
    if (inst.M % n != 0) throw std::domain_error("obstruction_check: n must divide M");
    if (static_cast<int>(r.size()) != inst.k)
        throw std::domain_error("obstruction_check: dimension mismatch");
    if (std::gcd(t < 0 ? -t : t, n) != 1) throw std::domain_error("obstruction_check: need gcd(t, n) = 1");
    // verify r.u = t/n (mod 1):  n * sum r_j u_j = t M (mod n M)
    __int128 dot = 0;
    for (int j = 0; j < inst.k; ++j) dot += static_cast<__int128>(r[j]) * inst.u[j];
    __int128 lhs = (static_cast<__int128>(n) * dot - static_cast<__int128>(t) * inst.M) %
                   (static_cast<__int128>(n) * inst.M);
    if (lhs != 0) throw std::domain_error("obstruction_check: r.u != t/n (mod 1)");

    ObstructionReport rep;
    if (n == 1) {
        rep.vacuous = true;
        rep.min_dot_dist = Rational(1, 2);
        rep.dot_ok = true;
        rep.min_norm_sq = Rational(1, 2);
        rep.euclid_ok = true;
        return rep;
    }
    rep.vacuous = false;
    if (inst.M > kLatticeEnumCap / std::max(inst.k, 1))
        throw capacity_error("obstruction_check: M beyond enumeration cap");
    long long dot_mod = static_cast<long long>(((dot % inst.M) + inst.M) % inst.M);
    __int128 r_norm_sq = 0;
    for (long long rj : r) r_norm_sq += static_cast<__int128>(rj) * rj;

    long long min_d = inst.M;          // min over ell of the centered |r.(ell u)| numerator
    __int128 min_norm_num = -1;        // min over ell of sum of squared centered components
    bool euclid_all = true;
    for (long long ell = 1; ell < inst.M; ++ell) {
        if (ell % n == 0) continue;
        long long s = static_cast<long long>((static_cast<__int128>(ell) * dot_mod) % inst.M);
        long long d = std::min(s, inst.M - s);
        min_d = std::min(min_d, d);
        __int128 norm_num = 0;
        for (int j = 0; j < inst.k; ++j) {
            long long c = inst.centered(ell, j);
            norm_num += static_cast<__int128>(c) * c;
        }
        if (min_norm_num < 0 || norm_num < min_norm_num) min_norm_num = norm_num;
        // |x|^2 >= 1/(n|r|)^2  <=>  norm_num * n^2 * |r|^2 >= M^2
        if (norm_num * n * n * r_norm_sq < static_cast<__int128>(inst.M) * inst.M)
            euclid_all = false;
    }
    rep.min_dot_dist = Rational(min_d, inst.M);
    rep.dot_ok = static_cast<__int128>(min_d) * n >= inst.M;
    rep.min_norm_sq = Rational(static_cast<long long>(min_norm_num), inst.M * inst.M);
    rep.euclid_ok = euclid_all;
    return rep;
}

}  // namespace charsum
