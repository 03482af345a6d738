#include <map>
#include <set>

#include <gtest/gtest.h>

#include "vlenc/cipher.hpp"

using namespace vlenc;

namespace {

Sequence seq(const char* s, unsigned q = 2) { return parse_sequence(s, q); }

CipherScheme small_scheme() { return CipherScheme(scheme_params(2, 3, 0.0, Mode::practical), KeyMethod::balanced); }

} // namespace

TEST(Cipher, Examples)
{
    const CipherScheme sch = small_scheme();
    ASSERT_EQ(sch.params().m, 1u);
    EXPECT_EQ(format_sequence(sch.compressor().compress(seq("010"))), "0");

    const Ciphertext c1 = encrypt(sch, seq("010"), seq("000"));
    EXPECT_EQ(c1.bits.str(), "0");
    const Ciphertext c2 = encrypt(sch, seq("010"), seq("011"));
    EXPECT_EQ(c2.bits.str(), "001");

    EXPECT_EQ(format_sequence(decrypt(sch, seq("010"), Ciphertext{BitString("0")})), "000");
    EXPECT_EQ(format_sequence(decrypt(sch, seq("010"), Ciphertext{BitString("001")})), "011");
}

TEST(Cipher, ZeroKeyExposesCodeword)
{
    const CipherScheme sch(scheme_params(2, 8, 0.8, Mode::practical), KeyMethod::balanced);
    const auto& sp = sch.params();
    const Sequence zero(sp.n, 0);
    for (const auto& x : all_sequences(sp.n, 2))
        if (sch.code().contains(x)) {
            EXPECT_EQ(sch.encrypt(zero, x).bits, to_bits(encode_source(sch.code(), x).payload, 2, sp.L1));
        }
}

TEST(Cipher, BadLengthAndBadInput)
{
    const CipherScheme sch = small_scheme();
    try {
        sch.decrypt(seq("010"), Ciphertext{BitString("01")});
        FAIL() << "expected BadLength";
    } catch (const Error& e) {
        EXPECT_EQ(e.name(), "BadLength");
    }
    EXPECT_THROW(sch.encrypt(seq("01"), seq("000")), Error);
    EXPECT_THROW(sch.encrypt(Sequence{0, 2, 0}, seq("000")), Error);
    EXPECT_THROW(CipherScheme(UniversalCode(scheme_params(2, 3, 0.0, Mode::practical)),
                              KeyCompressor(scheme_params(2, 4, 0.0, Mode::practical))),
                 Error);
}

TEST(Cipher, ExhaustiveRoundTripAndLengths)
{
    struct Case {
        unsigned q, n;
        double R;
    };
    for (const Case c : {Case{2, 6, 0.8}, Case{3, 4, 0.9}, Case{2, 5, 0.5}, Case{3, 3, 0.5}})
        for (Mode mode : {Mode::paper, Mode::practical})
            for (KeyMethod method : {KeyMethod::balanced, KeyMethod::linear}) {
                SchemeParams sp;
                try {
                    sp = scheme_params(c.q, c.n, c.R, mode);
                } catch (const Error& e) {
                    ASSERT_EQ(e.name(), "LengthCollision");
                    continue;
                }
                const CipherScheme sch(sp, method, 3);
                const auto xs = all_sequences(c.n, c.q);
                for (const auto& x : xs) {
                    const std::size_t expect = sch.code().contains(x) ? sp.L1 : sp.L2;
                    std::set<BitString> seen;
                    for (const auto& k : xs) {
                        const Ciphertext ct = sch.encrypt(k, x);
                        ASSERT_EQ(ct.bits.size(), expect);
                        ASSERT_EQ(sch.decrypt(k, ct), x);
                        seen.insert(ct.bits);
                    }
                    // the raw branch is a one-time pad: every key gives a distinct ciphertext
                    if (expect == sp.L2 && !sp.single_branch) {
                        ASSERT_EQ(seen.size(), xs.size());
                    }
                }
            }
}

TEST(Cipher, InjectiveForFixedKey)
{
    const CipherScheme sch(scheme_params(3, 4, 0.9, Mode::practical), KeyMethod::balanced);
    for (const auto& k : all_sequences(4, 3)) {
        std::set<BitString> images;
        for (const auto& x : all_sequences(4, 3))
            images.insert(sch.encrypt(k, x).bits);
        ASSERT_EQ(images.size(), 81u);
    }
}
