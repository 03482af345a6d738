#ifndef VLENC_KEYCOMP_HPP
#define VLENC_KEYCOMP_HPP

// Key compression X^n -> X^m and the exact law of the compressed key.
//
// The balanced compressor walks X^n in (canonical type, in-class rank)
// order and deals sequences round-robin onto X^m: the g-th sequence goes to
// g mod q^m. Every type class is a run of consecutive g, so its preimage
// counts per target differ by at most one; this is what makes the
// compressed key close to uniform for any key distribution.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vlenc/codec.hpp"
#include "vlenc/error.hpp"
#include "vlenc/exponents.hpp"
#include "vlenc/typespace.hpp"

namespace vlenc {

enum class KeyMethod { balanced, linear };

inline const char* to_string(KeyMethod m) { return m == KeyMethod::balanced ? "balanced" : "linear"; }

inline KeyMethod parse_key_method(std::string_view s)
{
    if (s == "balanced")
        return KeyMethod::balanced;
    if (s == "linear")
        return KeyMethod::linear;
    fail(errc::invalid_argument, "key compression must be 'balanced' or 'linear'");
}

class KeyCompressor {
public:
    explicit KeyCompressor(SchemeParams params, KeyMethod method = KeyMethod::balanced,
                           std::uint64_t seed = 0)
        : params_(std::move(params)), method_(method), seed_(seed),
          modulus_(big_pow(params_.q, params_.m))
    {
        if (method_ == KeyMethod::balanced) {
            BigInt offset = 0;
            for (auto& t : enumerate_types(params_.n, params_.q)) {
                const BigInt size = class_size(t);
                type_offsets_.emplace(std::move(t), offset);
                offset += size;
            }
        } else {
            // raw engine output keeps the matrix identical across standard
            // libraries; the mod-q bias is irrelevant here
            std::mt19937_64 rng(seed_);
            matrix_.resize(static_cast<std::size_t>(params_.m) * params_.n);
            for (auto& a : matrix_)
                a = static_cast<Symbol>(rng() % params_.q);
        }
    }

    const SchemeParams& params() const { return params_; }
    KeyMethod method() const { return method_; }
    std::uint64_t seed() const { return seed_; }

    /// Position of k in the global (type, rank) order of X^n.
    BigInt global_index(const Sequence& k) const
    {
        require(method_ == KeyMethod::balanced, errc::invalid_argument,
                "global index is defined for the balanced compressor only");
        return type_offsets_.at(type_of(k, params_.q)) + rank_in_class(k, params_.q);
    }

    /// Global offset of a type class in the (type, rank) order.
    const BigInt& type_offset(const TypeVector& t) const { return type_offsets_.at(t); }

    Sequence compress(const Sequence& k) const
    {
        require(k.size() == params_.n, errc::invalid_argument, "key block must have length n");
        check_sequence(k, params_.q);
        if (method_ == KeyMethod::balanced)
            return to_digits(global_index(k) % modulus_, params_.q, params_.m);

        Sequence out(params_.m, 0);
        for (unsigned r = 0; r < params_.m; ++r) {
            std::uint64_t acc = 0;
            for (unsigned c = 0; c < params_.n; ++c)
                acc += static_cast<std::uint64_t>(matrix_[r * params_.n + c]) * k[c];
            out[r] = static_cast<Symbol>(acc % params_.q);
        }
        return out;
    }

private:
    SchemeParams params_;
    KeyMethod method_;
    std::uint64_t seed_;
    BigInt modulus_;
    std::map<TypeVector, BigInt> type_offsets_;
    std::vector<Symbol> matrix_;
};

inline Sequence compress_key(const KeyCompressor& comp, const Sequence& k) { return comp.compress(k); }

struct DeficitReport {
    double h_tilde = 0.0;   // H(compressed key), bits
    double deficit = 0.0;   // m log q - h_tilde
    double prop3_rhs = 0.0; // (R_n + 1/2)(n+1)^{3q} 2^{-n[F(R|p_K) - gamma_n]}
};

enum class PushforwardMethod { automatic, per_type, enumeration };

inline constexpr std::uint64_t max_exact_entries = std::uint64_t{1} << 24;

/// Upper bound on the compressed-key uniformity deficit.
inline double prop3_rhs(const SchemeParams& sp, const Distribution& p_K)
{
    const double F = exponent_F(sp.R, p_K).value.as_double();
    return (sp.R_n + 0.5) * std::pow(sp.n + 1.0, 3.0 * sp.q) *
           std::exp2(-static_cast<double>(sp.n) * (F - sp.gamma_n));
}

namespace detail {

inline std::uint64_t as_u64(const BigInt& v) { return v.convert_to<std::uint64_t>(); }

/// Exact law of the compressed key by enumerating every key sequence.
inline double compressed_entropy_by_enumeration(const KeyCompressor& comp, const Distribution& p_K)
{
    const auto& sp = comp.params();
    const BigInt total = big_pow(sp.q, sp.n);
    require(total <= max_exact_entries, errc::instance_too_large,
            "q^n too large for exact key enumeration");
    std::unordered_map<std::uint64_t, CompensatedSum> mass;
    const std::uint64_t count = as_u64(total);
    Sequence k(sp.n, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        double pr = 1.0;
        for (Symbol s : k)
            pr *= p_K[s];
        if (pr > 0.0)
            mass[as_u64(from_digits(comp.compress(k), sp.q))] += pr;
        // next sequence, last symbol fastest
        for (unsigned pos = sp.n; pos-- > 0;) {
            if (++k[pos] < sp.q)
                break;
            k[pos] = 0;
        }
    }
    std::vector<double> probs;
    probs.reserve(mass.size());
    for (const auto& [target, acc] : mass)
        probs.push_back(acc.value());
    return entropy(probs);
}

/// Per-type law for the balanced compressor: a type class occupying global
/// indices [o, o+S) gives floor(S/M) preimages to every target plus one
/// more to the cyclic window starting at o mod M of length S mod M.
inline double compressed_entropy_per_type(const KeyCompressor& comp, const Distribution& p_K)
{
    const auto& sp = comp.params();
    const BigInt M = big_pow(sp.q, sp.m);
    if (M >= big_pow(sp.q, sp.n)) {
        // the round-robin never wraps: the compressor is injective
        return sp.n * entropy(p_K);
    }
    require(M <= max_exact_entries, errc::instance_too_large,
            "q^m too large for the per-type key law");
    const std::size_t targets = static_cast<std::size_t>(as_u64(M));
    std::vector<double> diff(targets + 1, 0.0);
    CompensatedSum base;
    for (const auto& t : enumerate_types(sp.n, sp.q)) {
        const double pr = sequence_probability(t, p_K);
        if (pr == 0.0)
            continue;
        const BigInt S = class_size(t);
        base += static_cast<double>(S / M) * pr;
        std::size_t len = static_cast<std::size_t>(as_u64(S % M));
        std::size_t start = static_cast<std::size_t>(as_u64(comp.type_offset(t) % M));
        const std::size_t first = std::min(len, targets - start);
        diff[start] += pr;
        diff[start + first] -= pr;
        if (len > first) {
            diff[0] += pr;
            diff[len - first] -= pr;
        }
    }
    std::vector<double> probs(targets);
    CompensatedSum run;
    for (std::size_t y = 0; y < targets; ++y) {
        run += diff[y];
        probs[y] = base.value() + run.value();
    }
    return entropy(probs);
}

} // namespace detail

inline DeficitReport compressed_key_distribution(const KeyCompressor& comp, const Distribution& p_K,
                                                 PushforwardMethod how = PushforwardMethod::automatic)
{
    const auto& sp = comp.params();
    require(p_K.size() == sp.q, errc::invalid_argument, "key distribution alphabet mismatch");
    if (how == PushforwardMethod::automatic)
        how = comp.method() == KeyMethod::balanced ? PushforwardMethod::per_type
                                                   : PushforwardMethod::enumeration;
    require(!(how == PushforwardMethod::per_type && comp.method() != KeyMethod::balanced),
            errc::invalid_argument, "per-type key law exists only for the balanced compressor");

    DeficitReport r;
    r.h_tilde = how == PushforwardMethod::per_type
                    ? detail::compressed_entropy_per_type(comp, p_K)
                    : detail::compressed_entropy_by_enumeration(comp, p_K);
    const double cap = sp.m * sp.log_q();
    r.deficit = std::clamp(cap - r.h_tilde, 0.0, cap);
    r.prop3_rhs = prop3_rhs(sp, p_K);
    return r;
}

} // namespace vlenc

#endif // VLENC_KEYCOMP_HPP
