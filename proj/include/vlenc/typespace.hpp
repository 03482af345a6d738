#ifndef VLENC_TYPESPACE_HPP
#define VLENC_TYPESPACE_HPP

// Alphabet arithmetic, distributions and the method-of-types toolkit:
// enumeration of compositions, type-class sizes and in-class ranking.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vlenc/error.hpp"
#include "vlenc/numeric.hpp"

namespace vlenc {

using BigInt = boost::multiprecision::cpp_int;
using Symbol = std::uint32_t;
using Sequence = std::vector<Symbol>;

/// The additive group Z_q standing in for the source/key alphabet.
class Alphabet {
public:
    explicit Alphabet(unsigned q) : q_(q)
    {
        require(q >= 2, errc::invalid_argument, "alphabet size q must be >= 2");
    }

    unsigned size() const { return q_; }
    double log_size() const { return std::log2(static_cast<double>(q_)); }
    bool contains(Symbol s) const { return s < q_; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    unsigned q_;
};

enum class GroupOp { add, sub };

inline Symbol group_op(Symbol a, Symbol b, GroupOp op, unsigned q)
{
    require(a < q && b < q, errc::symbol_out_of_range,
            "group operands must lie in [0, q)");
    return op == GroupOp::add ? (a + b) % q : (a + q - b) % q;
}

/// Componentwise a (+/-) b over Z_q.
inline Sequence group_op(const Sequence& a, const Sequence& b, GroupOp op, unsigned q)
{
    require(a.size() == b.size(), errc::invalid_argument,
            "componentwise group operation needs equal lengths");
    Sequence out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = group_op(a[i], b[i], op, q);
    return out;
}

class Distribution {
public:
    explicit Distribution(std::vector<double> probs) : probs_(std::move(probs))
    {
        require(probs_.size() >= 2, errc::invalid_argument,
                "distribution needs at least two entries");
        double total = 0.0;
        for (double p : probs_) {
            require(p >= 0.0 && p <= 1.0, errc::invalid_argument,
                    "probabilities must lie in [0,1]");
            total += p;
        }
        require(std::fabs(total - 1.0) <= 1e-12, errc::invalid_argument,
                "probabilities must sum to 1 (within 1e-12)");
    }

    static Distribution uniform(unsigned q)
    {
        return Distribution(std::vector<double>(q, 1.0 / q));
    }

    static Distribution point_mass(unsigned q, Symbol s)
    {
        std::vector<double> p(q, 0.0);
        p.at(s) = 1.0;
        return Distribution(std::move(p));
    }

    unsigned size() const { return static_cast<unsigned>(probs_.size()); }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const { return probs_; }

    unsigned support_size() const
    {
        return static_cast<unsigned>(
            std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }));
    }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    std::vector<double> probs_;
};

inline double entropy(std::span<const double> p)
{
    CompensatedSum acc;
    for (double x : p)
        acc += -xlog2x(x);
    return std::max(0.0, acc.value());
}

inline double entropy(const Distribution& p) { return entropy(p.probs()); }

/// D(p||r) in bits; +inf when p charges a symbol r does not.
inline ExtReal kl_divergence(std::span<const double> p, std::span<const double> r)
{
    require(p.size() == r.size(), errc::invalid_argument,
            "divergence needs distributions on the same alphabet");
    CompensatedSum acc;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0)
            continue;
        if (r[i] <= 0.0)
            return ExtReal::infinity();
        acc += p[i] * std::log2(p[i] / r[i]);
    }
    return std::max(0.0, acc.value());
}

inline ExtReal kl_divergence(const Distribution& p, const Distribution& r)
{
    return kl_divergence(p.probs(), r.probs());
}

/// Symbol counts of a length-n sequence.
class TypeVector {
public:
    explicit TypeVector(std::vector<unsigned> counts) : counts_(std::move(counts))
    {
        require(counts_.size() >= 2, errc::invalid_argument,
                "type vector needs at least two entries");
        n_ = std::accumulate(counts_.begin(), counts_.end(), 0u);
        require(n_ >= 1, errc::invalid_argument, "type vector must have n >= 1");
    }

    unsigned n() const { return n_; }
    unsigned q() const { return static_cast<unsigned>(counts_.size()); }
    std::span<const unsigned> counts() const { return counts_; }
    unsigned operator[](std::size_t s) const { return counts_[s]; }

    /// Empirical distribution counts/n.
    std::vector<double> frequencies() const
    {
        std::vector<double> f(counts_.size());
        for (std::size_t s = 0; s < counts_.size(); ++s)
            f[s] = static_cast<double>(counts_[s]) / n_;
        return f;
    }

    double entropy() const
    {
        const auto f = frequencies();
        return vlenc::entropy(f);
    }

    friend bool operator==(const TypeVector&, const TypeVector&) = default;
    friend auto operator<=>(const TypeVector& a, const TypeVector& b)
    {
        return a.counts_ <=> b.counts_;
    }

private:
    std::vector<unsigned> counts_;
    unsigned n_ = 0;
};

inline void check_sequence(const Sequence& x, unsigned q)
{
    require(!x.empty(), errc::invalid_argument, "sequence must have length >= 1");
    for (Symbol s : x)
        require(s < q, errc::symbol_out_of_range, "sequence symbol out of range [0, q)");
}

inline TypeVector type_of(const Sequence& x, unsigned q)
{
    check_sequence(x, q);
    std::vector<unsigned> counts(q, 0);
    for (Symbol s : x)
        ++counts[s];
    return TypeVector(std::move(counts));
}

/// Number of compositions of n into q parts, C(n+q-1, q-1).
inline BigInt count_types(unsigned n, unsigned q)
{
    BigInt c = 1;
    for (unsigned i = 1; i < q; ++i)
        c = c * (n + i) / i;
    return c;
}

/// All types of length n over q symbols, lexicographically descending on
/// the count vector: (n,0,..,0) first, (0,..,0,n) last.
inline std::vector<TypeVector> enumerate_types(unsigned n, unsigned q)
{
    require(n >= 1, errc::invalid_argument, "enumerate_types needs n >= 1");
    require(q >= 2, errc::invalid_argument, "enumerate_types needs q >= 2");
    require(count_types(n, q) <= BigInt(1) << 26, errc::instance_too_large,
            "too many types to enumerate");

    std::vector<TypeVector> out;
    std::vector<unsigned> counts(q, 0);
    auto rec = [&](auto&& self, unsigned pos, unsigned rem) -> void {
        if (pos + 1 == q) {
            counts[pos] = rem;
            out.emplace_back(counts);
            return;
        }
        for (unsigned c = rem + 1; c-- > 0;) {
            counts[pos] = c;
            self(self, pos + 1, rem - c);
        }
    };
    rec(rec, 0, n);
    return out;
}

/// |T| = n! / prod counts[s]!, exact.
inline BigInt class_size(const TypeVector& t)
{
    BigInt size = 1;
    unsigned placed = 0;
    for (unsigned c : t.counts()) {
        // multiply by C(placed + c, c) one factor at a time; each partial
        // quotient is itself a binomial coefficient, so division is exact
        for (unsigned i = 1; i <= c; ++i)
            size = size * (placed + i) / i;
        placed += c;
    }
    return size;
}

/// Lexicographic rank of x among the sequences of its own type.
inline BigInt rank_in_class(const Sequence& x, unsigned q)
{
    const TypeVector t = type_of(x, q);
    std::vector<unsigned> counts(t.counts().begin(), t.counts().end());
    BigInt remaining = class_size(t);
    unsigned left = t.n();
    BigInt rank = 0;
    for (Symbol s : x) {
        for (Symbol a = 0; a < s; ++a)
            if (counts[a] > 0)
                rank += remaining * counts[a] / left;
        remaining = remaining * counts[s] / left;
        --counts[s];
        --left;
    }
    return rank;
}

inline Sequence unrank_in_class(const TypeVector& t, BigInt r)
{
    BigInt remaining = class_size(t);
    require(r >= 0 && r < remaining, errc::index_out_of_range,
            "rank outside [0, class_size)");
    std::vector<unsigned> counts(t.counts().begin(), t.counts().end());
    unsigned left = t.n();
    Sequence x;
    x.reserve(left);
    while (left > 0) {
        for (Symbol a = 0; a < counts.size(); ++a) {
            if (counts[a] == 0)
                continue;
            BigInt block = remaining * counts[a] / left;
            if (r < block) {
                x.push_back(a);
                remaining = block;
                --counts[a];
                --left;
                break;
            }
            r -= block;
        }
    }
    return x;
}

/// Pr{x} for an i.i.d. source, which depends on x only through its type.
inline double sequence_probability(const TypeVector& t, const Distribution& p)
{
    require(t.q() == p.size(), errc::invalid_argument, "type/distribution alphabet mismatch");
    double pr = 1.0;
    for (unsigned s = 0; s < t.q(); ++s)
        if (t[s] > 0)
            pr *= std::pow(p[s], static_cast<double>(t[s]));
    return pr;
}

/// Pr{type_of(X) = t} = |T| * Pr{x in T}.
inline double type_probability(const TypeVector& t, const Distribution& p)
{
    const double per_seq = sequence_probability(t, p);
    if (per_seq == 0.0)
        return 0.0;
    return static_cast<double>(class_size(t)) * per_seq;
}

/// Every sequence of X^n in lexicographic order (last symbol fastest);
/// position i is the base-q value of the sequence.
inline std::vector<Sequence> all_sequences(unsigned n, unsigned q)
{
    require(std::pow(static_cast<double>(q), n) <= static_cast<double>(1 << 24),
            errc::instance_too_large, "q^n too large to enumerate");
    std::vector<Sequence> out;
    Sequence x(n, 0);
    while (true) {
        out.push_back(x);
        unsigned pos = n;
        while (pos > 0 && ++x[pos - 1] == q)
            x[--pos] = 0;
        if (pos == 0)
            break;
    }
    return out;
}

/// q^e as a big integer.
inline BigInt big_pow(unsigned q, unsigned e)
{
    return boost::multiprecision::pow(BigInt(q), e);
}

// Text forms: sequences as digit strings, types as comma-separated counts.
// Digits above 9 use lowercase letters, so q <= 36 round-trips.

inline Sequence parse_sequence(std::string_view text, unsigned q)
{
    Sequence x;
    x.reserve(text.size());
    for (char ch : text) {
        unsigned d;
        if (ch >= '0' && ch <= '9')
            d = static_cast<unsigned>(ch - '0');
        else if (ch >= 'a' && ch <= 'z')
            d = static_cast<unsigned>(ch - 'a') + 10;
        else
            fail(errc::invalid_argument, std::string("bad symbol character '") + ch + "'");
        require(d < q, errc::symbol_out_of_range,
                std::string("symbol '") + ch + "' not in [0, q)");
        x.push_back(d);
    }
    check_sequence(x, q);
    return x;
}

inline std::string format_sequence(const Sequence& x)
{
    std::string s;
    s.reserve(x.size());
    for (Symbol d : x)
        s.push_back(d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10));
    return s;
}

inline TypeVector parse_type(std::string_view text)
{
    std::vector<unsigned> counts;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        require(!item.empty() && item.find_first_not_of("0123456789") == std::string::npos,
                errc::invalid_argument, "type entries must be nonnegative integers");
        counts.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    return TypeVector(std::move(counts));
}

inline std::string format_type(const TypeVector& t)
{
    std::string s;
    for (std::size_t i = 0; i < t.q(); ++i) {
        if (i)
            s.push_back(',');
        s += std::to_string(t[i]);
    }
    return s;
}

/// Integer <-> base-q digit vector of fixed width, most significant first.
inline Sequence to_digits(BigInt value, unsigned q, unsigned width)
{
    Sequence d(width, 0);
    for (unsigned i = width; i-- > 0;) {
        d[i] = static_cast<Symbol>(value % q);
        value /= q;
    }
    require(value == 0, errc::capacity_exceeded, "value does not fit in the digit width");
    return d;
}

inline BigInt from_digits(const Sequence& d, unsigned q)
{
    BigInt v = 0;
    for (Symbol s : d) {
        require(s < q, errc::symbol_out_of_range, "digit out of range [0, q)");
        v = v * q + s;
    }
    return v;
}

} // namespace vlenc

#endif // VLENC_TYPESPACE_HPP
