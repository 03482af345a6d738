#ifndef VLENC_VERIFY_HPP
#define VLENC_VERIFY_HPP

// Run configuration and the verification suites behind `verify --suite`.
// Each suite appends "PASS|FAIL <check> ..." lines to a plain-text report;
// the report depends only on the configuration, never on time or threads.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vlenc/analysis.hpp"
#include "vlenc/cipher.hpp"
#include "vlenc/codec.hpp"
#include "vlenc/keycomp.hpp"
#include "vlenc/report.hpp"

namespace vlenc {

struct RunConfig {
    unsigned q = 2;
    unsigned n = 8;
    double rate = 0.8;
    Mode mode = Mode::practical;
    KeyMethod keycomp = KeyMethod::balanced;
    std::vector<double> p_X{0.9, 0.1};
    std::vector<double> p_K{}; // empty means uniform
    double delta = 1.0;
    double delta0 = 1.0; // upper cap on delta
    std::uint64_t seed = 1;

    Distribution source() const { return Distribution(p_X); }
    Distribution key() const { return p_K.empty() ? Distribution::uniform(q) : Distribution(p_K); }

    void validate() const
    {
        require(q >= 2, errc::invalid_argument, "q must be >= 2");
        require(n >= 1, errc::invalid_argument, "n must be >= 1");
        require(p_X.size() == q, errc::invalid_argument, "p_X must have q entries");
        require(p_K.empty() || p_K.size() == q, errc::invalid_argument, "p_K must have q entries");
        (void)source();
        (void)key();
        require(delta > 0.0, errc::invalid_argument, "delta must be > 0");
        require(delta <= delta0, errc::invalid_argument, "delta must not exceed delta0");
    }

    SchemeParams params() const { return scheme_params(q, n, rate, mode); }
    CipherScheme scheme() const { return CipherScheme(params(), keycomp, seed); }
};

/// "0.9,0.1" -> {0.9, 0.1}
inline std::vector<double> parse_probabilities(std::string_view text)
{
    std::vector<double> out;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            fail(errc::invalid_argument, "bad probability '" + item + "'");
        }
        require(used == item.size(), errc::invalid_argument, "bad probability '" + item + "'");
        out.push_back(v);
    }
    return out;
}

enum class Suite { theorem1, prop1, prop2, prop3, lemmas, roundtrip, all };

inline Suite parse_suite(std::string_view s)
{
    if (s == "theorem1") return Suite::theorem1;
    if (s == "prop1") return Suite::prop1;
    if (s == "prop2") return Suite::prop2;
    if (s == "prop3") return Suite::prop3;
    if (s == "lemmas") return Suite::lemmas;
    if (s == "roundtrip") return Suite::roundtrip;
    if (s == "all") return Suite::all;
    fail(errc::invalid_argument, "unknown suite '" + std::string(s) + "'");
}

struct VerifyOutcome {
    std::string report;
    bool passed = true;
};

namespace detail {

class SuiteLog {
public:
    void record(const BoundRecord& b, const std::string& where)
    {
        const bool ok = !b.asserted || b.holds;
        passed_ = passed_ && ok;
        os_ << (b.asserted ? (b.holds ? "PASS " : "FAIL ") : "INFO ") << b.name << ' ' << where
            << " lhs=" << format_real(b.lhs) << " rhs=" << format_real(b.rhs) << '\n';
    }
    void check(bool ok, const std::string& line)
    {
        passed_ = passed_ && ok;
        os_ << (ok ? "PASS " : "FAIL ") << line << '\n';
    }
    void note(const std::string& line) { os_ << "# " << line << '\n'; }

    VerifyOutcome finish() const { return {os_.str(), passed_}; }

private:
    std::ostringstream os_;
    bool passed_ = true;
};

inline std::string where(unsigned q, unsigned n, double R)
{
    return "[q=" + std::to_string(q) + " n=" + std::to_string(n) + " R=" + format_real(R) + "]";
}

/// Rate grid 0.2, 0.4, ... below log q, then log q itself.
inline std::vector<double> rate_grid(unsigned q)
{
    const double log_q = std::log2(static_cast<double>(q));
    std::vector<double> g;
    for (int i = 1; 0.2 * i < log_q - 1e-9; ++i)
        g.push_back(0.2 * i);
    g.push_back(log_q);
    return g;
}

/// Random full-support distribution on q symbols.
inline Distribution random_distribution(unsigned q, std::mt19937_64& rng)
{
    std::vector<double> w(q);
    double total = 0.0;
    for (double& x : w) {
        x = 0.05 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
        total += x;
    }
    for (double& x : w)
        x /= total;
    // push rounding residue into the last entry so the sum is 1 to the ulp
    double head = 0.0;
    for (unsigned i = 0; i + 1 < q; ++i)
        head += w[i];
    w[q - 1] = 1.0 - head;
    return Distribution(std::move(w));
}

inline void suite_theorem1(const RunConfig& cfg, SuiteLog& log)
{
    const SchemeParams sp = scheme_params(cfg.q, cfg.n, cfg.rate, Mode::paper);
    const CipherScheme sch(sp, KeyMethod::balanced);
    const LeakageReport r = exact_leakage(sch, cfg.source(), cfg.key(), cfg.delta);
    for (const auto& b : theorem1_check(sp, cfg.source(), cfg.key(), r.avg_len, r.mi_total))
        log.record(b, where(cfg.q, cfg.n, cfg.rate));
    log.record(r.bounds.front(), where(cfg.q, cfg.n, cfg.rate)); // chain rule
}

inline void suite_prop1(const RunConfig& cfg, SuiteLog& log)
{
    for (Mode mode : {Mode::paper, Mode::practical}) {
        const SchemeParams sp = scheme_params(cfg.q, cfg.n, cfg.rate, mode, false);
        const UniversalCode code(sp);
        const double avg = length_statistics(code, cfg.source()).avg_len;
        log.record(prop1_check(sp, cfg.source(), avg),
                   where(cfg.q, cfg.n, cfg.rate) + " mode=" + to_string(mode));
    }
}

inline void suite_prop2(const RunConfig& cfg, SuiteLog& log)
{
    std::mt19937_64 rng(cfg.seed);
    std::vector<Distribution> sources{cfg.source()};
    for (int i = 0; i < 4; ++i)
        sources.push_back(random_distribution(cfg.q, rng));
    for (unsigned n = 1; n <= cfg.n; ++n) {
        for (double R : rate_grid(cfg.q)) {
            const UniversalCode code(scheme_params(cfg.q, n, R, Mode::paper, false));
            log.record(upbcr_check(code), where(cfg.q, n, R));
            for (std::size_t s = 0; s < sources.size(); ++s)
                for (const auto& b : prop2_check(code, sources[s]))
                    log.record(b, where(cfg.q, n, R) + " source=" + std::to_string(s));
        }
    }
}

inline void suite_prop3(const RunConfig& cfg, SuiteLog& log)
{
    for (unsigned n = 1; n <= cfg.n; ++n) {
        const SchemeParams sp = scheme_params(cfg.q, n, cfg.rate, Mode::paper, false);
        const KeyCompressor comp(sp, KeyMethod::balanced);
        log.record(prop3_check(comp, cfg.key()), where(cfg.q, n, cfg.rate));
    }
}

inline void suite_lemmas(const RunConfig& cfg, SuiteLog& log)
{
    const LemmaSummary s = lemma_checks(10000, cfg.seed);
    log.check(s.binary_entropy_failures == 0,
              "lemma_binary_entropy trials=" + std::to_string(s.trials) +
                  " failures=" + std::to_string(s.binary_entropy_failures) +
                  " min_slack=" + format_real(s.min_binary_entropy_slack));
    log.check(s.length_entropy_failures == 0,
              "lemma_length_entropy trials=" + std::to_string(s.trials) +
                  " failures=" + std::to_string(s.length_entropy_failures) +
                  " min_slack=" + format_real(s.min_length_entropy_slack));
}

inline void suite_roundtrip(const RunConfig& cfg, SuiteLog& log)
{
    const CipherScheme sch = cfg.scheme();
    const auto xs = all_sequences(cfg.n, cfg.q);
    require(static_cast<double>(xs.size()) * xs.size() <= static_cast<double>(max_exact_entries),
            errc::instance_too_large, "q^(2n) too large for exhaustive round trip");
    std::size_t codec_failures = 0, cipher_failures = 0, length_failures = 0;
    for (const auto& x : xs)
        codec_failures += decode_source(sch.code(), encode_source(sch.code(), x)) != x;
    for (const auto& x : xs) {
        std::size_t len = 0;
        for (const auto& k : xs) {
            const Ciphertext c = sch.encrypt(k, x);
            cipher_failures += sch.decrypt(k, c) != x;
            if (len == 0)
                len = c.bits.size();
            length_failures += c.bits.size() != len;
        }
    }
    const std::string at = where(cfg.q, cfg.n, cfg.rate) + " mode=" + to_string(cfg.mode) +
                           " keycomp=" + to_string(cfg.keycomp);
    log.check(codec_failures == 0, "codec_roundtrip " + at + " failures=" + std::to_string(codec_failures));
    log.check(cipher_failures == 0,
              "cipher_roundtrip " + at + " pairs=" + std::to_string(xs.size() * xs.size()) +
                  " failures=" + std::to_string(cipher_failures));
    log.check(length_failures == 0,
              "key_independent_length " + at + " failures=" + std::to_string(length_failures));
}

} // namespace detail

inline VerifyOutcome run_verify(Suite suite, const RunConfig& cfg)
{
    cfg.validate();
    detail::SuiteLog log;
    log.note("vlenc verify " + detail::where(cfg.q, cfg.n, cfg.rate) + " p_X=" +
             format_real(cfg.p_X.front()) + "... seed=" + std::to_string(cfg.seed));
    auto run = [&](Suite s, const char* name, auto&& fn) {
        if (suite == s || suite == Suite::all) {
            log.note(std::string("suite ") + name);
            fn(cfg, log);
        }
    };
    run(Suite::theorem1, "theorem1", detail::suite_theorem1);
    run(Suite::prop1, "prop1", detail::suite_prop1);
    run(Suite::prop2, "prop2", detail::suite_prop2);
    run(Suite::prop3, "prop3", detail::suite_prop3);
    run(Suite::lemmas, "lemmas", detail::suite_lemmas);
    run(Suite::roundtrip, "roundtrip", detail::suite_roundtrip);
    VerifyOutcome out = log.finish();
    out.report += out.passed ? "RESULT PASS\n" : "RESULT FAIL\n";
    return out;
}

} // namespace vlenc

#endif // VLENC_VERIFY_HPP
