#ifndef VLENC_CODEC_HPP
#define VLENC_CODEC_HPP

// Scheme parameters, the universal code C^n(R) = { x : H(type(x)) <= R },
// the two-branch source encoder/decoder and the bit-string maps.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "vlenc/error.hpp"
#include "vlenc/typespace.hpp"

namespace vlenc {

enum class Mode { paper, practical };

inline const char* to_string(Mode m) { return m == Mode::paper ? "paper" : "practical"; }

inline Mode parse_mode(std::string_view s)
{
    if (s == "paper")
        return Mode::paper;
    if (s == "practical")
        return Mode::practical;
    fail(errc::invalid_argument, "mode must be 'paper' or 'practical'");
}

/// Types with entropy up to R (plus this slack) are admitted, so boundary
/// types with H(type) = R survive floating-point rounding.
inline constexpr double admission_tol = 1e-12;

inline bool type_admitted(const TypeVector& t, double R)
{
    return t.entropy() <= R + admission_tol;
}

struct SchemeParams {
    unsigned q = 2;
    unsigned n = 1;
    double R = 0.0;
    Mode mode = Mode::paper;
    double gamma_n = 0.0; // (q log(n+1) + log q) / n
    double R_n = 0.0;     // R + gamma_n
    unsigned m = 0;       // compressed length in symbols
    unsigned L1 = 0;      // short (compressed) codeword bits
    unsigned L2 = 0;      // long (raw) codeword bits = ceil(n log q)
    BigInt code_size;     // |C^n(R)|
    bool single_branch = false; // C^n(R) = X^n, raw branch unreachable

    double log_q() const { return std::log2(static_cast<double>(q)); }

    friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

namespace detail {

/// Smallest L with 2^L >= v (v >= 1).
inline unsigned bits_for(const BigInt& v)
{
    if (v <= 1)
        return 0;
    const BigInt w = v - 1;
    return static_cast<unsigned>(boost::multiprecision::msb(w)) + 1;
}

/// Smallest e with q^e >= v.
inline unsigned digits_for(const BigInt& v, unsigned q)
{
    unsigned e = 0;
    BigInt p = 1;
    while (p < v) {
        p *= q;
        ++e;
    }
    return e;
}

} // namespace detail

/// Exact test of size <= (n+1)^q * 2^(n*R), with R taken as its exact
/// binary value; 100-digit floating point is far beyond any rounding here.
inline bool within_type_count_bound(const BigInt& size, unsigned n, unsigned q, double R)
{
    using Big = boost::multiprecision::cpp_bin_float_100;
    const Big rhs = boost::multiprecision::pow(Big(n + 1), static_cast<int>(q)) *
                    boost::multiprecision::pow(Big(2), Big(n) * Big(R));
    return Big(size) <= rhs;
}

inline BigInt code_size_for(unsigned n, unsigned q, double R)
{
    BigInt size = 0;
    for (const auto& t : enumerate_types(n, q))
        if (type_admitted(t, R))
            size += class_size(t);
    return size;
}

/// Derives (gamma_n, R_n, m, L1, L2) for the mode. With check_wire_format
/// the two codeword lengths must differ whenever the raw branch is
/// reachable; bound-only callers may turn that off.
inline SchemeParams scheme_params(unsigned q, unsigned n, double R, Mode mode,
                                  bool check_wire_format = true)
{
    require(q >= 2, errc::invalid_argument, "q must be >= 2");
    require(n >= 1, errc::invalid_argument, "n must be >= 1");
    const double log_q = std::log2(static_cast<double>(q));
    require(std::isfinite(R) && R >= 0.0 && R <= log_q + admission_tol,
            errc::invalid_argument, "rate must satisfy 0 <= R <= log q");

    SchemeParams sp;
    sp.q = q;
    sp.n = n;
    sp.R = R;
    sp.mode = mode;
    sp.gamma_n = (q * std::log2(n + 1.0) + log_q) / n;
    sp.R_n = R + sp.gamma_n;
    sp.code_size = code_size_for(n, q, R);
    const BigInt space = big_pow(q, n);
    sp.single_branch = sp.code_size == space;
    sp.L2 = detail::bits_for(space);

    if (mode == Mode::paper) {
        // 1e-9 guards floor/ceil against rounding when n*R_n is an integer
        const double nRn = n * sp.R_n;
        sp.m = static_cast<unsigned>(std::floor(nRn / log_q + 1e-9));
        sp.L1 = static_cast<unsigned>(std::ceil(nRn - 1e-9));
        const double lo = sp.m * log_q / n, hi = (sp.m + 1) * log_q / n;
        require(lo <= sp.R_n + 1e-9 && sp.R_n <= hi + 1e-9, errc::invalid_argument,
                "m violates (m/n) log q <= R_n <= ((m+1)/n) log q");
        require(big_pow(q, sp.m) <= BigInt(1) << sp.L1, errc::capacity_exceeded,
                "q^m does not fit in ceil(n R_n) bits");
    } else {
        sp.m = detail::digits_for(sp.code_size, q);
        sp.L1 = detail::bits_for(big_pow(q, sp.m));
    }

    require(sp.code_size <= big_pow(q, sp.m), errc::injection_impossible,
            "|C^n(R)| = " + sp.code_size.str() + " exceeds q^m with m = " +
                std::to_string(sp.m));
    if (check_wire_format && sp.L1 == sp.L2 && !sp.single_branch)
        fail(errc::length_collision,
             "short and long codewords both have " + std::to_string(sp.L1) +
                 " bits while the raw branch is reachable");
    return sp;
}

enum class Branch { compressed, raw };

struct CodecOutput {
    Branch branch = Branch::compressed;
    Sequence payload; // X^m when compressed, X^n when raw

    friend bool operator==(const CodecOutput&, const CodecOutput&) = default;
};

class UniversalCode {
public:
    explicit UniversalCode(SchemeParams params) : params_(std::move(params))
    {
        BigInt offset = 0;
        for (auto& t : enumerate_types(params_.n, params_.q)) {
            if (!type_admitted(t, params_.R))
                continue;
            index_.emplace(t, types_.size());
            offsets_.push_back(offset);
            offset += class_size(t);
            types_.push_back(std::move(t));
        }
        size_ = offset;

        require(size_ == params_.code_size, errc::invalid_argument,
                "code size disagrees with scheme parameters");
        require(within_type_count_bound(size_, params_.n, params_.q, params_.R),
                errc::injection_impossible, "|C^n(R)| exceeds (n+1)^q 2^(nR)");
        require(size_ <= big_pow(params_.q, params_.m), errc::injection_impossible,
                "|C^n(R)| exceeds q^m");
    }

    const SchemeParams& params() const { return params_; }
    const std::vector<TypeVector>& admitted_types() const { return types_; }
    const std::vector<BigInt>& offsets() const { return offsets_; }
    const BigInt& size() const { return size_; }

    bool admits(const TypeVector& t) const { return index_.count(t) != 0; }
    bool contains(const Sequence& x) const { return admits(type_of(x, params_.q)); }

    /// Position of x in the code (type offset + in-class rank).
    BigInt index_of(const Sequence& x) const
    {
        const auto it = index_.find(type_of(x, params_.q));
        require(it != index_.end(), errc::invalid_argument, "sequence is not a codeword");
        return offsets_[it->second] + rank_in_class(x, params_.q);
    }

    Sequence sequence_at(const BigInt& index) const
    {
        require(index >= 0 && index < size_, errc::index_out_of_range,
                "code index " + index.str() + " >= |C| = " + size_.str());
        const auto pos = std::upper_bound(offsets_.begin(), offsets_.end(), index) - offsets_.begin() - 1;
        return unrank_in_class(types_[pos], index - offsets_[pos]);
    }

private:
    SchemeParams params_;
    std::vector<TypeVector> types_;
    std::vector<BigInt> offsets_;
    std::map<TypeVector, std::size_t> index_;
    BigInt size_;
};

inline UniversalCode build_code(const SchemeParams& params) { return UniversalCode(params); }

inline CodecOutput encode_source(const UniversalCode& code, const Sequence& x)
{
    const auto& sp = code.params();
    require(x.size() == sp.n, errc::invalid_argument, "source block must have length n");
    check_sequence(x, sp.q);
    if (!code.contains(x))
        return {Branch::raw, x};
    return {Branch::compressed, to_digits(code.index_of(x), sp.q, sp.m)};
}

inline Sequence decode_source(const UniversalCode& code, const CodecOutput& y)
{
    const auto& sp = code.params();
    if (y.branch == Branch::raw) {
        require(y.payload.size() == sp.n, errc::bad_length, "raw payload must have length n");
        check_sequence(y.payload, sp.q);
        return y.payload;
    }
    require(y.payload.size() == sp.m, errc::bad_length, "compressed payload must have length m");
    return code.sequence_at(from_digits(y.payload, sp.q));
}

/// '0'/'1' text, most significant bit first.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::string bits) : bits_(std::move(bits))
    {
        require(bits_.find_first_not_of("01") == std::string::npos, errc::invalid_argument,
                "bit strings may contain only '0' and '1'");
    }

    std::size_t size() const { return bits_.size(); }
    const std::string& str() const { return bits_; }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    std::string bits_;
};

/// Base-q value of the payload written as exactly L bits.
inline BitString to_bits(const Sequence& payload, unsigned q, unsigned L)
{
    require(big_pow(q, static_cast<unsigned>(payload.size())) <= BigInt(1) << L,
            errc::capacity_exceeded, "q^t exceeds 2^L");
    BigInt v = from_digits(payload, q);
    std::string bits(L, '0');
    for (unsigned i = L; i-- > 0;) {
        if (boost::multiprecision::bit_test(v, 0))
            bits[i] = '1';
        v >>= 1;
    }
    return BitString(std::move(bits));
}

inline Sequence from_bits(const BitString& bits, unsigned t, unsigned q)
{
    BigInt v = 0;
    for (char c : bits.str())
        v = (v << 1) | (c == '1' ? 1 : 0);
    require(v < big_pow(q, t), errc::value_out_of_range, "bit value is not below q^t");
    return to_digits(v, q, t);
}

} // namespace vlenc

#endif // VLENC_CODEC_HPP
