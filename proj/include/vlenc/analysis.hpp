#ifndef VLENC_ANALYSIS_HPP
#define VLENC_ANALYSIS_HPP

// Exact leakage and length statistics of a CipherScheme, and checkers for
// every finite-n inequality of the scheme: the average-length and leakage
// upper bounds, the average-length lower bound, the code-size and
// error-probability bounds, the compressed-key deficit bound, and the two
// entropy lemmas the leakage bound is built from.
//
// Every BoundRecord reads "lhs <= rhs".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "vlenc/cipher.hpp"
#include "vlenc/codec.hpp"
#include "vlenc/error.hpp"
#include "vlenc/exponents.hpp"
#include "vlenc/keycomp.hpp"
#include "vlenc/numeric.hpp"
#include "vlenc/typespace.hpp"

namespace vlenc {

struct BoundRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    bool asserted = true; // informational records do not gate verification
};

struct LengthStats {
    double avg_len = 0.0;
    double p_raw = 0.0;
    std::map<unsigned, double> histogram; // codeword bits -> probability
};

struct LeakageReport {
    double mi_total = 0.0;  // I(C;X)
    double mi_length = 0.0; // I(C;L')
    double mi_cond = 0.0;   // I(C;X|L')
    double avg_len = 0.0;
    double p_raw = 0.0;
    double delta = 1.0;
    DeficitReport key;
    std::vector<BoundRecord> bounds;

    bool asserted_bounds_hold() const
    {
        return std::all_of(bounds.begin(), bounds.end(),
                           [](const BoundRecord& b) { return !b.asserted || b.holds; });
    }
};

/// Average codeword length from per-type probabilities (no enumeration).
inline LengthStats length_statistics(const UniversalCode& code, const Distribution& p_X)
{
    const auto& sp = code.params();
    require(p_X.size() == sp.q, errc::invalid_argument, "source distribution alphabet mismatch");
    CompensatedSum p_in;
    for (const auto& t : code.admitted_types())
        p_in += type_probability(t, p_X);
    LengthStats st;
    st.p_raw = sp.single_branch ? 0.0 : std::clamp(1.0 - p_in.value(), 0.0, 1.0);
    const double in = 1.0 - st.p_raw;
    st.avg_len = sp.L1 * in + sp.L2 * st.p_raw;
    st.histogram[sp.L1] += in;
    if (!sp.single_branch)
        st.histogram[sp.L2] += st.p_raw;
    return st;
}

inline LengthStats length_statistics(const CipherScheme& sch, const Distribution& p_X)
{
    return length_statistics(sch.code(), p_X);
}

/// Same quantities by summing over every x in X^n.
inline LengthStats length_statistics_enumerated(const UniversalCode& code, const Distribution& p_X)
{
    const auto& sp = code.params();
    CompensatedSum raw, in;
    for (const auto& x : all_sequences(sp.n, sp.q)) {
        double pr = 1.0;
        for (Symbol s : x)
            pr *= p_X[s];
        (code.contains(x) ? in : raw) += pr;
    }
    LengthStats st;
    st.p_raw = raw.value();
    st.avg_len = sp.L1 * in.value() + sp.L2 * raw.value();
    st.histogram[sp.L1] += in.value();
    if (raw.value() > 0.0 || !sp.single_branch)
        st.histogram[sp.L2] += raw.value();
    return st;
}

namespace detail {

/// Digitwise (a + b) mod q of two width-digit base-q numbers.
inline std::uint64_t add_digits(std::uint64_t a, std::uint64_t b, unsigned q, unsigned width)
{
    if (q == 2)
        return a ^ b;
    std::uint64_t out = 0, place = 1;
    for (unsigned i = 0; i < width; ++i) {
        out += ((a % q + b % q) % q) * place;
        a /= q;
        b /= q;
        place *= q;
    }
    return out;
}

inline std::vector<double> block_probabilities(const std::vector<Sequence>& xs, const Distribution& p)
{
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double pr = 1.0;
        for (Symbol s : xs[i])
            pr *= p[s];
        out[i] = pr;
    }
    return out;
}

} // namespace detail

inline constexpr double chain_rule_tol = 1e-10;

/// Exact I(C;X) by accumulating p_X^n(x) p_K^n(k) over every (k, x) pair,
/// together with the split I(C;X) = I(C;L') + I(C;X|L') computed by
/// separate sums; the two must agree to 1e-10.
inline LeakageReport exact_leakage(const CipherScheme& sch, const Distribution& p_X,
                                   const Distribution& p_K, double delta = 1.0)
{
    const auto& sp = sch.params();
    require(p_X.size() == sp.q && p_K.size() == sp.q, errc::invalid_argument,
            "distribution alphabet mismatch");
    require(std::pow(static_cast<double>(sp.q), 2.0 * sp.n) <= static_cast<double>(max_exact_entries),
            errc::instance_too_large, "q^(2n) exceeds 2^24 joint entries");
    const BigInt short_space = big_pow(sp.q, sp.m);
    require(short_space <= BigInt(1) << 24, errc::instance_too_large,
            "q^m too large for the exact ciphertext table");

    const auto xs = all_sequences(sp.n, sp.q);
    const std::size_t N = xs.size();
    const std::uint64_t M = short_space.convert_to<std::uint64_t>();
    const std::vector<double> px = detail::block_probabilities(xs, p_X);
    const std::vector<double> pk = detail::block_probabilities(xs, p_K);

    // per-plaintext encoder output and per-key compressed key, as base-q values
    std::vector<std::uint64_t> payload(N), key_short(N);
    std::vector<char> is_short(N);
    for (std::size_t i = 0; i < N; ++i) {
        const CodecOutput y = encode_source(sch.code(), xs[i]);
        is_short[i] = y.branch == Branch::compressed;
        payload[i] = from_digits(y.payload, sp.q).convert_to<std::uint64_t>();
        key_short[i] = from_digits(sch.compressor().compress(xs[i]), sp.q).convert_to<std::uint64_t>();
    }
    auto cipher_id = [&](std::size_t k, std::size_t x) -> std::uint64_t {
        if (is_short[x])
            return detail::add_digits(key_short[k], payload[x], sp.q, sp.m);
        return M + detail::add_digits(k, payload[x], sp.q, sp.n);
    };

    CompensatedSum p_short_acc, p_long_acc;
    for (std::size_t x = 0; x < N; ++x)
        (is_short[x] ? p_short_acc : p_long_acc) += px[x];
    const double p_short = p_short_acc.value(), p_long = p_long_acc.value();

    const std::size_t space = static_cast<std::size_t>(M + N);
    std::vector<long double> pc(space, 0.0L);
    for (std::size_t x = 0; x < N; ++x) {
        if (px[x] == 0.0)
            continue;
        for (std::size_t k = 0; k < N; ++k)
            if (pk[k] > 0.0)
                pc[cipher_id(k, x)] += static_cast<long double>(px[x]) * pk[k];
    }

    CompensatedSum total, cond, length;
    for (std::size_t c = 0; c < space; ++c) {
        if (pc[c] <= 0.0L)
            continue;
        const double pl = c < M ? p_short : p_long;
        length += -static_cast<double>(pc[c]) * std::log2(pl);
    }

    std::vector<double> given_x(space, 0.0);
    std::vector<std::uint64_t> touched;
    touched.reserve(N);
    for (std::size_t x = 0; x < N; ++x) {
        if (px[x] == 0.0)
            continue;
        touched.clear();
        for (std::size_t k = 0; k < N; ++k) {
            if (pk[k] <= 0.0)
                continue;
            const std::uint64_t c = cipher_id(k, x);
            if (given_x[c] == 0.0)
                touched.push_back(c);
            given_x[c] += pk[k];
        }
        const double pl = is_short[x] ? p_short : p_long;
        for (std::uint64_t c : touched) {
            const double w = given_x[c];
            const double ratio = w / static_cast<double>(pc[c]);
            total += px[x] * w * std::log2(ratio);
            cond += px[x] * w * std::log2(ratio * pl);
            given_x[c] = 0.0;
        }
    }

    LeakageReport r;
    r.mi_total = total.value();
    r.mi_cond = cond.value();
    r.mi_length = length.value();
    r.delta = delta;
    const LengthStats st = length_statistics(sch.code(), p_X);
    r.avg_len = st.avg_len;
    r.p_raw = st.p_raw;
    r.key = compressed_key_distribution(sch.compressor(), p_K);

    const double gap = std::fabs(r.mi_total - (r.mi_length + r.mi_cond));
    r.bounds.push_back({"chain_rule", gap, chain_rule_tol, gap <= chain_rule_tol});
    return r;
}

// ---------------------------------------------------------------------------
// Bound verifiers

namespace detail {

/// a * 2^(-n e), with a finite coefficient killed by e = +inf.
inline double decay(double coeff, unsigned n, const ExtReal& e)
{
    if (e.is_infinite())
        return 0.0;
    return coeff * std::exp2(-static_cast<double>(n) * e.value());
}

} // namespace detail

/// Average-length lower bound: nH(X) - log n - log(2e log q) <= E[L].
inline BoundRecord prop1_check(const SchemeParams& sp, const Distribution& p_X, double avg_len)
{
    const double rhs_formula = sp.n * entropy(p_X) - std::log2(static_cast<double>(sp.n)) -
                               std::log2(2.0 * std::exp(1.0) * sp.log_q());
    return {"prop1_avg_len_lower", rhs_formula, avg_len, rhs_formula <= avg_len};
}

inline BoundRecord prop1_check(const CipherScheme& sch, const Distribution& p_X)
{
    return prop1_check(sch.params(), p_X, length_statistics(sch, p_X).avg_len);
}

/// |C| <= (n+1)^q 2^(nR) (exact) and Pr{X not in C} <= (n+1)^q 2^(-n E(R|p_X)) (+1e-9).
inline std::vector<BoundRecord> prop2_check(const UniversalCode& code, const Distribution& p_X)
{
    const auto& sp = code.params();
    const double poly = std::pow(sp.n + 1.0, static_cast<double>(sp.q));
    std::vector<BoundRecord> out;
    out.push_back({"prop2_code_size", static_cast<double>(code.size()),
                   poly * std::exp2(sp.n * sp.R),
                   within_type_count_bound(code.size(), sp.n, sp.q, sp.R)});
    const double p_raw = length_statistics(code, p_X).p_raw;
    const double rhs = detail::decay(poly, sp.n, exponent_E(sp.R, p_X).value);
    out.push_back({"prop2_error_prob", p_raw, rhs, p_raw <= rhs + 1e-9});
    return out;
}

/// |C| <= q^m, exact.
inline BoundRecord upbcr_check(const UniversalCode& code)
{
    const auto& sp = code.params();
    const BigInt cap = big_pow(sp.q, sp.m);
    return {"code_fits_short_block", static_cast<double>(code.size()), static_cast<double>(cap),
            code.size() <= cap};
}

/// m log q - H(compressed key) <= (R_n + 1/2)(n+1)^{3q} 2^{-n[F(R|p_K) - gamma_n]}.
inline BoundRecord prop3_check(const KeyCompressor& comp, const Distribution& p_K)
{
    const DeficitReport d = compressed_key_distribution(comp, p_K);
    return {"prop3_key_deficit", d.deficit, d.prop3_rhs, d.deficit <= d.prop3_rhs};
}

/// Direct-theorem upper bounds on E[L] and I(C;X). The length bound is
/// evaluated with E(R|p_X), which is what bounds Pr{X not in C}; the
/// variant with E(R|p_K) is reported as information only.
inline std::vector<BoundRecord> theorem1_check(const SchemeParams& sp, const Distribution& p_X,
                                               const Distribution& p_K, double avg_len,
                                               double mi_total)
{
    require(sp.mode == Mode::paper, errc::invalid_argument,
            "the direct-theorem constants presuppose paper-mode parameters");
    const unsigned n = sp.n;
    const double log_q = sp.log_q();
    const double poly = std::pow(n + 1.0, static_cast<double>(sp.q));
    const ExtReal E_X = exponent_E(sp.R, p_X).value;
    const ExtReal E_K = exponent_E(sp.R, p_K).value;
    const ExtReal F_K = exponent_F(sp.R, p_K).value;

    const double len_base = n * sp.R_n + 1.0;
    const double len_coeff = n * (log_q - sp.R) * poly;
    const double len_rhs = len_base + detail::decay(len_coeff, n, E_X);
    const double len_rhs_pk = len_base + detail::decay(len_coeff, n, E_K);

    double mi_rhs = (sp.R_n + 1.0) * sp.q * std::pow(n + 1.0, 4.0 * sp.q) *
                    std::exp2(-static_cast<double>(n) * F_K.value());
    if (E_X.is_finite())
        mi_rhs += (n * (E_X.value() + log_q) + log2_e) * poly *
                  std::exp2(-static_cast<double>(n) * E_X.value());

    std::vector<BoundRecord> out;
    out.push_back({"theorem1_avg_len", avg_len, len_rhs, avg_len <= len_rhs});
    out.push_back({"theorem1_avg_len_pk_exponent_info", avg_len, len_rhs_pk,
                   avg_len <= len_rhs_pk, false});
    out.push_back({"theorem1_mi", mi_total, mi_rhs, mi_total <= mi_rhs});
    return out;
}

inline std::vector<BoundRecord> theorem1_check(const CipherScheme& sch, const Distribution& p_X,
                                               const Distribution& p_K)
{
    const LeakageReport r = exact_leakage(sch, p_X, p_K);
    return theorem1_check(sch.params(), p_X, p_K, r.avg_len, r.mi_total);
}

/// Converse ingredient: I(C;X) >= n(H(X) - H(K)) whenever H(K) < H(X).
inline BoundRecord converse_check(const SchemeParams& sp, const Distribution& p_X,
                                  const Distribution& p_K, double mi_total)
{
    const double lower = sp.n * (entropy(p_X) - entropy(p_K)) - 1e-9;
    return {"converse_mi_lower", lower, mi_total, lower <= mi_total};
}

/// exact_leakage plus every bound that applies to the configuration.
inline LeakageReport analyze(const CipherScheme& sch, const Distribution& p_X,
                             const Distribution& p_K, double delta = 1.0)
{
    const auto& sp = sch.params();
    LeakageReport r = exact_leakage(sch, p_X, p_K, delta);
    r.bounds.push_back(prop1_check(sp, p_X, r.avg_len));
    for (auto& b : prop2_check(sch.code(), p_X))
        r.bounds.push_back(std::move(b));
    r.bounds.push_back(upbcr_check(sch.code()));
    if (sp.mode == Mode::paper) {
        for (auto& b : theorem1_check(sp, p_X, p_K, r.avg_len, r.mi_total))
            r.bounds.push_back(std::move(b));
        if (sch.compressor().method() == KeyMethod::balanced)
            r.bounds.push_back({"prop3_key_deficit", r.key.deficit, r.key.prop3_rhs,
                                r.key.deficit <= r.key.prop3_rhs});
    }
    if (entropy(p_K) < entropy(p_X))
        r.bounds.push_back(converse_check(sp, p_X, p_K, r.mi_total));
    r.bounds.push_back({"delta_leakage_info", r.mi_total, delta, r.mi_total <= delta, false});
    return r;
}

// ---------------------------------------------------------------------------
// Lemma suites

/// h(q) <= (omega + log e) * Omega, Omega = eta 2^-omega, for q <= min(Omega, 1).
inline BoundRecord lemma_binary_entropy(double q, double eta, double omega)
{
    require(q >= 0.0 && q <= 1.0 && eta >= 1.0 && omega >= 0.0, errc::invalid_argument,
            "lemma needs q in [0,1], eta >= 1, omega >= 0");
    const double Omega = eta * std::exp2(-omega);
    require(q <= Omega * (1.0 + 1e-15), errc::invalid_argument, "lemma needs q <= eta 2^-omega");
    const double lhs = binary_entropy(q);
    const double rhs = (omega + log2_e) * Omega;
    // relative slack of a few ulps for the two transcendental evaluations
    return {"lemma_binary_entropy", lhs, rhs, lhs <= rhs * (1.0 + 1e-12) + 1e-300};
}

struct LengthEntropyCheck {
    double H = 0.0;         // H(L)
    double mu = 0.0;        // E[L]
    double mu_h = 0.0;      // mu log mu - (mu-1) log(mu-1) = mu h(1/mu)
    double log_e_mu = 0.0;  // log(e mu)
    bool holds = false;     // H <= mu_h < log_e_mu
};

/// Entropy bound for a positive-integer-valued length variable.
inline LengthEntropyCheck lemma_length_entropy(const std::vector<unsigned>& values,
                                               const std::vector<double>& probs)
{
    require(values.size() == probs.size() && !values.empty(), errc::invalid_argument,
            "values and probabilities must pair up");
    std::map<unsigned, double> law;
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(values[i] >= 1, errc::invalid_argument, "lengths must be positive integers");
        law[values[i]] += probs[i];
    }
    LengthEntropyCheck c;
    std::vector<double> p;
    for (const auto& [v, pr] : law) {
        c.mu += v * pr;
        p.push_back(pr);
    }
    c.H = entropy(p);
    c.mu_h = xlog2x(c.mu) - xlog2x(c.mu - 1.0);
    c.log_e_mu = std::log2(std::exp(1.0) * c.mu);
    c.holds = c.H <= c.mu_h + 1e-12 && c.mu_h < c.log_e_mu;
    return c;
}

struct LemmaSummary {
    int trials = 0;
    int binary_entropy_failures = 0;
    int length_entropy_failures = 0;
    double min_binary_entropy_slack = 0.0; // min over trials of rhs - lhs
    double min_length_entropy_slack = 0.0; // min over trials of mu_h - H

    bool passed() const { return binary_entropy_failures == 0 && length_entropy_failures == 0; }
};

inline LemmaSummary lemma_checks(int trials, std::uint64_t seed)
{
    require(trials >= 1, errc::invalid_argument, "need at least one trial");
    std::mt19937_64 rng(seed);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    LemmaSummary s;
    s.trials = trials;
    s.min_binary_entropy_slack = s.min_length_entropy_slack = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const double eta = 1.0 + 200.0 * std::pow(unit(), 3.0);
        const double omega = 30.0 * unit();
        const double cap = std::min(eta * std::exp2(-omega), 1.0);
        // a tenth of the trials sit exactly on the constraint boundary
        const double q = (rng() % 10 == 0) ? cap : cap * unit();
        const BoundRecord b = lemma_binary_entropy(q, eta, omega);
        s.binary_entropy_failures += !b.holds;
        s.min_binary_entropy_slack = std::min(s.min_binary_entropy_slack, b.rhs - b.lhs);

        const unsigned support = 1 + static_cast<unsigned>(rng() % 8);
        std::vector<unsigned> values(support);
        std::vector<double> probs(support);
        double total = 0.0;
        for (unsigned i = 0; i < support; ++i) {
            values[i] = 1 + static_cast<unsigned>(rng() % 64);
            probs[i] = unit() + 1e-3;
            total += probs[i];
        }
        for (double& p : probs)
            p /= total;
        const LengthEntropyCheck c = lemma_length_entropy(values, probs);
        s.length_entropy_failures += !c.holds;
        s.min_length_entropy_slack = std::min(s.min_length_entropy_slack, c.mu_h - c.H);
    }
    return s;
}

} // namespace vlenc

#endif // VLENC_ANALYSIS_HPP
