#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/common.hpp"
#include "charsum/dickman.hpp"
#include "charsum/smooth.hpp"

namespace charsum {

// One (q, chi, B) instance of the S1 + S2 + S3 split of
// sum_{1<=n<=z, P(n)<=y} chi(n)(1 - e(sigma alpha n))/n  with y = log q,
// alpha = 1/y^B, z = round(q^{11/21}).  The paper-scale cut points
// y^B/log y <= y^B <= y^B (log y)^5 <= y^{log log y} are clamped into
// monotone order within [1, z] so the regrouping stays an exact partition
// at desk scale.
struct DecompositionReport {
    std::uint32_t q;
    std::uint64_t ell;
    double B;
    double y, alpha;
    long long z;
    cplx S1;                    // sum_{n > y^B, P<=y} chi/n, truncated at z
    double S1_tail_bound;       // envelope estimate for the > z part
    cplx S2_plus, S2_minus;
    cplx S3_plus, S3_minus;     // truncated at z (the n > z piece is in the tail bound)
    cplx direct_plus, direct_minus;  // the left-hand sums, computed term by term
    cplx polya_lhs;             // sum_{n <= alpha q} chi(n)
    double main_term;           // log y int_B^inf rho
    double ratio;               // |S1| / main_term
};

DecompositionReport decompose(const CharacterGroup& G, std::uint64_t ell, double B,
                              const RhoEvaluator& rho);

// signed rough-part sum  sum_{1<=|n|<=z, P(|n|)>y} chi(n)(1 - e(-alpha n))/n
cplx rough_polya_sum(const CharacterGroup& G, std::uint64_t ell, double alpha, double z, double y);

struct ADeltaResult {
    double lhs;        // |rough_polya_sum|
    double threshold;  // e^gamma * delta
    bool member;
};
ADeltaResult a_delta_test(const CharacterGroup& G, std::uint64_t ell, double delta, double alpha,
                          double z);

// default delta = log log y / sqrt(log y), y = log q
double default_delta(std::uint32_t q);

struct TheoremProbe {
    std::uint32_t q;
    double B;
    bool odd;
    double x;          // q/(log q)^B
    double measured;   // sweep max over the parity class
    std::uint32_t argmax_ell;
    double predicted;  // (1/pi) int_B^inf rho * sqrt(q) loglog q  (odd)
                       // rho(B)/2 * sqrt(q)                      (even)
    double ratio;      // measured/predicted; trend data, not pass/fail
};
TheoremProbe theorem_probe(const CharacterGroup& G, double B, Parity parity,
                           const RhoEvaluator& rho);

struct ConjectureProbe {
    double max_modulus;
    std::vector<double> per_alpha;
};
ConjectureProbe conjecture_probe(const CharacterGroup& G, std::uint64_t ell, double x, double y,
                                 const std::vector<double>& alpha_grid, const SmoothSieve& sieve);

// Declarative experiment runner; config documented in the README.  Writes
// JSON lines (header with config hash, then one record per probe result);
// identical configs produce byte-identical record payloads, and a rerun onto
// an existing file with the same hash is a no-op.
struct ExperimentOutcome {
    std::string config_hash;
    bool skipped;  // output already contained this config's records
    int records;
};
ExperimentOutcome run_experiment(const std::string& config_json, const std::string& output_path);

// Render a JSON-lines record file as CSV (one table per record type).
void render_report_csv(std::istream& records, std::ostream& csv);

std::string config_hash_hex(const std::string& canonical_config);

}  // namespace charsum
