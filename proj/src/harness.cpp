#include "charsum/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace charsum {

namespace {

// trial-division P(n) <= y; n here is at most z ~ q^{11/21}
bool is_smooth_small(std::uint64_t n, double y) {
    std::uint64_t m = n, largest = 1;
    for (std::uint64_t p = 2; p * p <= m; ++p)
        while (m % p == 0) {
            m /= p;
            largest = p;
        }
    if (m > 1) largest = m;
    return static_cast<double>(largest) <= y;
}

}  // namespace

DecompositionReport decompose(const CharacterGroup& G, std::uint64_t ell, double B,
                              const RhoEvaluator& rho) {
    if (!(B >= 0.0)) throw std::domain_error("decompose: B >= 0 required");
    DecompositionReport rep{};
    rep.q = G.q();
    rep.ell = ell;
    rep.B = B;
    double y = std::log(static_cast<double>(G.q()));
    double ly = std::log(y);
    rep.y = y;
    rep.alpha = std::pow(y, -B);
    rep.z = std::llround(std::pow(static_cast<double>(G.q()), 11.0 / 21.0));
    double zd = static_cast<double>(rep.z);

    // cut points, clamped monotone into [1, z]
    double c1 = std::pow(y, B) / ly;
    double c2 = std::pow(y, B);
    double c3 = std::pow(y, B) * std::pow(ly, 5.0);
    double c4 = std::pow(y, std::log(ly));
    double t1 = std::min(std::max(c1, 0.0), zd);
    double t2 = std::min(std::max(c2, t1), zd);
    double t3 = std::min(std::max(c3, t2), zd);
    double t4 = std::min(std::max(c4, t3), zd);

    double alpha = rep.alpha;
    KahanCSum s1, s2p, s2m, s3p, s3m, dp, dm;
    for (long long n = 1; n <= rep.z; ++n) {
        if (!is_smooth_small(n, y)) continue;
        cplx ch = G.chi(ell, n);
        double nd = static_cast<double>(n);
        cplx em = e2pi(-alpha * nd);       // e(-alpha n)
        cplx ep = std::conj(em);           // e(+alpha n)
        cplx base = ch / nd;
        dp.add(base * (cplx(1.0, 0.0) - ep));
        dm.add(base * (cplx(1.0, 0.0) - em));
        if (nd <= t1) {
            s3p.add(base * (cplx(1.0, 0.0) - ep));
            s3m.add(base * (cplx(1.0, 0.0) - em));
        } else if (nd <= t2) {
            s2p.add(base * (cplx(1.0, 0.0) - ep));
            s2m.add(base * (cplx(1.0, 0.0) - em));
        } else {
            s1.add(base);
            if (nd <= t3) {
                s2p.add(-base * ep);
                s2m.add(-base * em);
            } else {
                s3p.add(-base * ep);
                s3m.add(-base * em);
            }
        }
    }
    rep.S1 = s1.value();
    rep.S2_plus = s2p.value();
    rep.S2_minus = s2m.value();
    rep.S3_plus = s3p.value();
    rep.S3_minus = s3m.value();
    rep.direct_plus = dp.value();
    rep.direct_minus = dm.value();

    double uz = std::log(zd) / std::log(y);
    rep.S1_tail_bound = y * rho.tail_integral(std::max(uz, 0.0)) + rho(std::max(uz, 1.0));
    rep.polya_lhs = G.partial_sum(ell, alpha * static_cast<double>(G.q()));
    rep.main_term = y * rho.tail_integral(B);
    rep.ratio = std::abs(rep.S1) / rep.main_term;
    return rep;
}

cplx rough_polya_sum(const CharacterGroup& G, std::uint64_t ell, double alpha, double z, double y) {
    KahanCSum acc;
    long long nz = static_cast<long long>(z);
    double chi_m1 = (ell % 2 == 0) ? 1.0 : -1.0;
    for (long long n = 1; n <= nz; ++n) {
        if (is_smooth_small(n, y)) continue;
        cplx ch = G.chi(ell, n);
        double nd = static_cast<double>(n);
        cplx em = e2pi(-alpha * nd);
        cplx ep = std::conj(em);
        // n and -n terms: chi(-n) = chi(-1) chi(n), 1/(-n) flips the sign
        acc.add(ch * ((cplx(1.0, 0.0) - em) - chi_m1 * (cplx(1.0, 0.0) - ep)) / nd);
    }
    return acc.value();
}

ADeltaResult a_delta_test(const CharacterGroup& G, std::uint64_t ell, double delta, double alpha,
                          double z) {
    double y = std::log(static_cast<double>(G.q()));
    double lhs = std::abs(rough_polya_sum(G, ell, alpha, z, y));
    double threshold = std::exp(kEulerGamma) * delta;
    return {lhs, threshold, lhs <= threshold};
}

double default_delta(std::uint32_t q) {
    double y = std::log(static_cast<double>(q));
    return std::log(std::log(y)) / std::sqrt(std::log(y));
}

TheoremProbe theorem_probe(const CharacterGroup& G, double B, Parity parity,
                           const RhoEvaluator& rho) {
    bool odd = parity != Parity::even;
    if (parity == Parity::even && !(B >= 1.0))
        throw std::domain_error("theorem_probe: even-character probe requires B >= 1");
    double q = static_cast<double>(G.q());
    double x = q / std::pow(std::log(q), B);
    if (!(x >= 1.0)) throw std::domain_error("theorem_probe: q/(log q)^B below 1");
    auto sweep = G.sweep_max(x, parity, /*exclude_principal=*/true);
    double predicted = odd ? rho.tail_integral(B) / std::numbers::pi_v<double> * std::sqrt(q) *
                                 std::log(std::log(q))
                           : 0.5 * rho(B) * std::sqrt(q);
    return {G.q(), B, odd, x, sweep.max_abs, sweep.argmax_ell, predicted, sweep.max_abs / predicted};
}

ConjectureProbe conjecture_probe(const CharacterGroup& G, std::uint64_t ell, double x, double y,
                                 const std::vector<double>& alpha_grid, const SmoothSieve& sieve) {
    if (x > 1e7) throw capacity_error("conjecture_probe: x beyond cap");
    if (x > static_cast<double>(sieve.limit())) throw capacity_error("conjecture_probe: sieve too small");
    ConjectureProbe out{0.0, {}};
    std::uint64_t nx = static_cast<std::uint64_t>(x);
    // collect rough n once
    std::vector<std::uint64_t> rough;
    for (std::uint64_t n = 1; n <= nx; ++n)
        if (static_cast<double>(sieve.largest_prime_factor(n)) > y) rough.push_back(n);
    for (double alpha : alpha_grid) {
        KahanCSum acc;
        for (std::uint64_t n : rough)
            acc.add(G.chi(ell, static_cast<std::int64_t>(n)) * e2pi(alpha * static_cast<double>(n)) /
                    static_cast<double>(n));
        double v = std::abs(acc.value());
        out.per_alpha.push_back(v);
        out.max_modulus = std::max(out.max_modulus, v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// experiment persistence

namespace {

using nlohmann::json;

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::string config_hash_hex(const std::string& canonical_config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_config)));
    return buf;
}

ExperimentOutcome run_experiment(const std::string& config_json, const std::string& output_path) {
    json cfg = json::parse(config_json);
    std::string canonical = cfg.dump();  // nlohmann objects are key-sorted
    std::string hash = config_hash_hex(canonical);

    // idempotence: same config hash already on disk -> no-op
    {
        std::ifstream existing(output_path);
        std::string first;
        if (existing && std::getline(existing, first) && !first.empty()) {
            json head = json::parse(first, nullptr, false);
            if (!head.is_discarded() && head.value("config_hash", "") == hash)
                return {hash, true, 0};
        }
    }

    RhoEvaluator rho;
    std::vector<json> records;
    auto probes = cfg.value("probes", std::vector<std::string>{});
    auto qs = cfg.value("qs", std::vector<std::uint32_t>{});
    auto Bs = cfg.value("Bs", std::vector<double>{});
    std::string parity_str = cfg.value("parity", std::string("any"));
    Parity parity = parity_str == "odd"    ? Parity::odd
                    : parity_str == "even" ? Parity::even
                                           : Parity::any;

    for (std::uint32_t q : qs) {
        CharacterGroup G(q);
        for (const std::string& probe : probes) {
            if (probe == "theorem") {
                for (double B : Bs) {
                    std::vector<Parity> ps;
                    if (parity == Parity::any) {
                        ps = {Parity::odd, Parity::even};
                    } else {
                        ps = {parity};
                    }
                    for (Parity p : ps) {
                        if (p == Parity::even && B < 1.0) continue;
                        auto t = theorem_probe(G, B, p, rho);
                        records.push_back(json{{"type", "theorem"},
                                               {"q", t.q},
                                               {"B", t.B},
                                               {"parity", t.odd ? "odd" : "even"},
                                               {"x", t.x},
                                               {"measured", t.measured},
                                               {"argmax_ell", t.argmax_ell},
                                               {"predicted", t.predicted},
                                               {"ratio", t.ratio}});
                    }
                }
            } else if (probe == "decompose") {
                auto ells = cfg.value("ells", std::vector<std::uint64_t>{});
                for (std::uint64_t ell : ells) {
                    for (double B : Bs) {
                        auto d = decompose(G, ell, B, rho);
                        records.push_back(json{{"type", "decompose"},
                                               {"q", d.q},
                                               {"ell", d.ell},
                                               {"B", d.B},
                                               {"z", d.z},
                                               {"S1", cplx_json(d.S1)},
                                               {"S2_plus", cplx_json(d.S2_plus)},
                                               {"S2_minus", cplx_json(d.S2_minus)},
                                               {"S3_plus", cplx_json(d.S3_plus)},
                                               {"S3_minus", cplx_json(d.S3_minus)},
                                               {"polya_lhs", cplx_json(d.polya_lhs)},
                                               {"main_term", d.main_term},
                                               {"ratio", d.ratio}});
                    }
                }
            } else if (probe == "adelta") {
                double delta = cfg.value("delta", default_delta(q));
                double y = std::log(static_cast<double>(q));
                double B = Bs.empty() ? 0.0 : Bs.front();
                double alpha = std::pow(y, -B);
                double z = std::round(std::pow(static_cast<double>(q), 11.0 / 21.0));
                int members = 0, total = 0;
                for (std::uint64_t ell = 1; ell < G.order(); ++ell) {
                    auto r = a_delta_test(G, ell, delta, alpha, z);
                    ++total;
                    if (r.member) ++members;
                }
                records.push_back(json{{"type", "adelta"},
                                       {"q", q},
                                       {"delta", delta},
                                       {"alpha", alpha},
                                       {"z", z},
                                       {"members", members},
                                       {"total", total}});
            }
        }
    }

    std::ofstream out(output_path, std::ios::trunc);
    if (!out) throw std::runtime_error("run_experiment: cannot open output path");
    out << json{{"config_hash", hash}, {"config", cfg}}.dump() << "\n";
    for (const auto& r : records) out << r.dump() << "\n";
    return {hash, false, static_cast<int>(records.size())};
}

void render_report_csv(std::istream& records, std::ostream& csv) {
    std::string line;
    std::map<std::string, std::vector<json>> by_type;
    while (std::getline(records, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("type")) continue;
        by_type[j["type"]].push_back(j);
    }
    for (auto& [type, rows] : by_type) {
        // header from the first row's keys
        std::vector<std::string> keys;
        for (auto it = rows.front().begin(); it != rows.front().end(); ++it) keys.push_back(it.key());
        csv << "# " << type << "\n";
        for (std::size_t i = 0; i < keys.size(); ++i) csv << keys[i] << (i + 1 < keys.size() ? "," : "\n");
        for (auto& row : rows) {
            for (std::size_t i = 0; i < keys.size(); ++i) {
                const json& v = row.contains(keys[i]) ? row[keys[i]] : json();
                if (v.is_array() && v.size() == 2)
                    csv << v[0].get<double>() << "+" << v[1].get<double>() << "i";
                else if (v.is_string())
                    csv << v.get<std::string>();
                else
                    csv << v.dump();
                csv << (i + 1 < keys.size() ? "," : "\n");
            }
        }
    }
}

}  // namespace charsum
