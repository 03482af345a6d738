#ifndef VLENC_CIPHER_HPP
#define VLENC_CIPHER_HPP

#include <string>

#include "vlenc/codec.hpp"
#include "vlenc/error.hpp"
#include "vlenc/keycomp.hpp"
#include "vlenc/typespace.hpp"

namespace vlenc {

/// Ciphertext bits; the length alone tells the decrypter which branch
/// (L1: compressed, L2: raw) produced it.
struct Ciphertext {
    BitString bits;

    friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

class CipherScheme {
public:
    CipherScheme(UniversalCode code, KeyCompressor comp)
        : code_(std::move(code)), comp_(std::move(comp))
    {
        require(code_.params() == comp_.params(), errc::invalid_argument,
                "code and key compressor were built for different parameters");
    }

    CipherScheme(const SchemeParams& sp, KeyMethod method, std::uint64_t seed = 0)
        : CipherScheme(UniversalCode(sp), KeyCompressor(sp, method, seed))
    {
    }

    const UniversalCode& code() const { return code_; }
    const KeyCompressor& compressor() const { return comp_; }
    const SchemeParams& params() const { return code_.params(); }

    Ciphertext encrypt(const Sequence& k, const Sequence& x) const
    {
        const auto& sp = params();
        require(k.size() == sp.n && x.size() == sp.n, errc::invalid_argument,
                "key and plaintext must both have length n");
        check_sequence(k, sp.q);
        const CodecOutput y = encode_source(code_, x);
        if (y.branch == Branch::compressed) {
            const Sequence masked = group_op(comp_.compress(k), y.payload, GroupOp::add, sp.q);
            return {to_bits(masked, sp.q, sp.L1)};
        }
        return {to_bits(group_op(k, x, GroupOp::add, sp.q), sp.q, sp.L2)};
    }

    Sequence decrypt(const Sequence& k, const Ciphertext& c) const
    {
        const auto& sp = params();
        require(k.size() == sp.n, errc::invalid_argument, "key must have length n");
        check_sequence(k, sp.q);
        const std::size_t len = c.bits.size();
        if (len == sp.L1) {
            const Sequence masked = from_bits(c.bits, sp.m, sp.q);
            const Sequence payload = group_op(masked, comp_.compress(k), GroupOp::sub, sp.q);
            return decode_source(code_, {Branch::compressed, payload});
        }
        if (len == sp.L2) {
            const Sequence masked = from_bits(c.bits, sp.n, sp.q);
            return group_op(masked, k, GroupOp::sub, sp.q);
        }
        fail(errc::bad_length, "ciphertext has " + std::to_string(len) + " bits, expected " +
                                   std::to_string(sp.L1) + " or " + std::to_string(sp.L2));
    }

private:
    UniversalCode code_;
    KeyCompressor comp_;
};

inline Ciphertext encrypt(const CipherScheme& sch, const Sequence& k, const Sequence& x)
{
    return sch.encrypt(k, x);
}

inline Sequence decrypt(const CipherScheme& sch, const Sequence& k, const Ciphertext& c)
{
    return sch.decrypt(k, c);
}

} // namespace vlenc

#endif // VLENC_CIPHER_HPP
