#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "charsum/rational.hpp"

namespace charsum {

// u = (u_1/M, ..., u_k/M) in (R/Z)^k of order exactly M; construction divides
// out gcd(u_1, ..., u_k, M) so the stored order is always exact.
struct LatticeInstance {
    long long M;
    int k;
    std::vector<long long> u;  // numerators in [0, M)

    LatticeInstance(long long order, std::vector<long long> numerators);

    // centered numerator of the j-th component of ell*u: in (-M/2, M/2]
    long long centered(long long ell, int j) const;

    // exact distance of (ell*u)_j to the nearest integer, as |centered|/M
    Rational dist(long long ell, int j) const;

    // max_j dist(ell*u_j) <= eta, decided in integers
    bool within(long long ell, const Rational& eta) const;
};

struct MultiplierSet {
    Rational eta;
    long long n;
    bool plus;  // true: ell = 0 mod n, false: ell != 0 mod n
    std::vector<long long> members;
};

inline constexpr long long kLatticeEnumCap = 100'000'000;

// C_{n^+}(eta,k) / C_{n^-}(eta,k) of the small-multiple definitions; exact,
// members sorted ascending.
MultiplierSet enumerate_small_multiples(const LatticeInstance& inst, long long n, Rational eta,
                                        bool plus);

struct PigeonholeWitness {
    long long count;
    double bound;  // M/(n N^k)
    bool ok;       // count >= bound (exact comparison)
};
// #C_{n^+}(1/N, k) against the pigeonhole lower bound M/(n N^k)
PigeonholeWitness pigeonhole_witness(const LatticeInstance& inst, long long n, const Rational& N);

struct ShiftReport {
    long long witness;          // an element of C_{n^-}(nu, k)
    long long count_plus;       // #C_{n^+}(eta, k)
    long long count_minus;      // #C_{n^-}(eta+nu, k)
    bool injection_verified;    // every shifted element landed in C_{n^-}(eta+nu, k)
    bool ok;                    // count_minus >= count_plus
};
// s -> (witness - s mod M) mapping from C_{n^+}(eta) into C_{n^-}(eta+nu)
ShiftReport shift_construction(const LatticeInstance& inst, long long n, const Rational& eta,
                               const Rational& nu);

struct RelationVector {
    std::vector<long long> r;
    long long n;
    Rational residue;  // n*(r.u) mod 1
};

struct RelationSearchResult {
    std::optional<RelationVector> relation;
    bool covered;  // search space fully enumerated; absence is definitive only if true
};

struct SearchLimits {
    long long exhaustive_cap = 100'000'000;    // max (2L+1)^k for direct enumeration
    long long meet_in_middle_cap = 20'000'000; // max entries per side
};

// nonzero r with |r_j| <= L and n*(r.u) = 0 (mod 1), exact arithmetic
RelationSearchResult relation_search(const LatticeInstance& inst, long long n, long long L,
                                     SearchLimits limits = {});

// S(N) = sum over ell != 0 mod n of the periodized bump product at ell*u;
// spatial-side evaluation.  S(N) > 0 forces C_{n^-}(1/N, k) nonempty.
double counting_function_S(const LatticeInstance& inst, long long n, const Rational& N);

// exists ell != 0 mod n with every component strictly inside the bump support
// (dist < 1/(2N)); the exact predicate matching sign(S(N))
bool has_strict_interior_member(const LatticeInstance& inst, long long n, const Rational& N);

struct DichotomyResult {
    std::optional<RelationVector> relation;       // branch (i), |r_j| <= k^4 N log^2 N
    std::optional<PigeonholeWitness> count;       // branch (ii), #C_{n^-}(2/N, k) vs M/(n N^k)
    long long L;                                  // the relation bound used
};
DichotomyResult dichotomy_check(const LatticeInstance& inst, long long n, const Rational& N,
                                SearchLimits limits = {});

struct ObstructionReport {
    bool vacuous;           // n = 1: no ell to check
    Rational min_dot_dist;  // min over ell of dist(r . (ell u))
    bool dot_ok;            // min_dot_dist >= 1/n
    Rational min_norm_sq;   // min over ell of |centered(ell u)|^2
    bool euclid_ok;         // |x| >= 1/(n|r|) for every ell, exact comparison
};
// Requires r.u = t/n (mod 1) with gcd(t,n) = 1 and n | M; checked.
ObstructionReport obstruction_check(const LatticeInstance& inst, long long n,
                                    const std::vector<long long>& r, long long t);

// normalizing constant of the bump c0*exp(-1/(1-(2x)^2)) on [-1/2,1/2]
double bump_normalizer();

}  // namespace charsum
