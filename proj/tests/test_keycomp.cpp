#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "vlenc/keycomp.hpp"

using namespace vlenc;

namespace {

SchemeParams params_with_m(unsigned q, unsigned n, unsigned m)
{
    // only (q, n, m) matter to the compressor
    SchemeParams sp = scheme_params(q, n, std::log2(static_cast<double>(q)), Mode::practical);
    sp.m = m;
    return sp;
}

} // namespace

TEST(KeyCompressor, GlobalOrderExample)
{
    const KeyCompressor comp(params_with_m(2, 3, 2));
    const char* order[] = {"000", "001", "010", "100", "011", "101", "110", "111"};
    const char* target[] = {"00", "01", "10", "11", "00", "01", "10", "11"};
    for (int g = 0; g < 8; ++g) {
        const Sequence k = parse_sequence(order[g], 2);
        EXPECT_EQ(comp.global_index(k), g);
        EXPECT_EQ(format_sequence(comp.compress(k)), target[g]);
    }
    EXPECT_EQ(format_sequence(compress_key(comp, parse_sequence("011", 2))), "00");
}

TEST(KeyCompressor, BalancedWithinEveryTypeClass)
{
    for (unsigned q = 2; q <= 3; ++q)
        for (unsigned n = 1; n <= 10; ++n) {
            if (q == 3 && n > 9)
                continue; // 3^10 keys with BigInt ranks is slow in debug builds
            for (unsigned m = 1; m <= n; m += (n > 4 ? 2 : 1)) {
                const KeyCompressor comp(params_with_m(q, n, m));
                std::map<TypeVector, std::map<Sequence, unsigned>> hits;
                for (const auto& k : all_sequences(n, q))
                    ++hits[type_of(k, q)][comp.compress(k)];
                const std::size_t targets = static_cast<std::size_t>(std::pow(q, m));
                for (const auto& [t, per_target] : hits) {
                    unsigned lo = per_target.size() < targets ? 0u : ~0u, hi = 0;
                    for (const auto& [y, c] : per_target) {
                        lo = std::min(lo, c);
                        hi = std::max(hi, c);
                    }
                    ASSERT_LE(hi - lo, 1u) << "q=" << q << " n=" << n << " m=" << m;
                }
            }
        }
}

TEST(KeyCompressor, BalancedWithinTypeClassQ3N10)
{
    const KeyCompressor comp(params_with_m(3, 10, 7));
    std::map<TypeVector, std::map<Sequence, unsigned>> hits;
    for (const auto& k : all_sequences(10, 3))
        ++hits[type_of(k, 3)][comp.compress(k)];
    for (const auto& [t, per_target] : hits) {
        unsigned lo = per_target.size() < 2187 ? 0u : ~0u, hi = 0;
        for (const auto& [y, c] : per_target) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        ASSERT_LE(hi - lo, 1u);
    }
}

TEST(Deficit, UniformKeyIsExactlyUniform)
{
    for (unsigned q = 2; q <= 3; ++q)
        for (unsigned n = 1; n <= 8; ++n)
            for (unsigned m = 1; m <= n; ++m) {
                const KeyCompressor comp(params_with_m(q, n, m));
                const auto r = compressed_key_distribution(comp, Distribution::uniform(q));
                EXPECT_NEAR(r.deficit, 0.0, 1e-12) << q << ' ' << n << ' ' << m;
                const auto e = compressed_key_distribution(comp, Distribution::uniform(q),
                                                           PushforwardMethod::enumeration);
                EXPECT_NEAR(e.deficit, 0.0, 1e-12);
            }
}

TEST(Deficit, PointMassKey)
{
    const KeyCompressor comp(params_with_m(2, 8, 5));
    const auto r = compressed_key_distribution(comp, Distribution::point_mass(2, 1));
    EXPECT_NEAR(r.h_tilde, 0.0, 1e-15);
    EXPECT_NEAR(r.deficit, 5.0, 1e-15);
}

TEST(Deficit, FrozenExample)
{
    const KeyCompressor comp(scheme_params(2, 8, 0.8, Mode::practical));
    ASSERT_EQ(comp.params().m, 5u);
    const Distribution pk({0.6, 0.4});
    EXPECT_NEAR(compressed_key_distribution(comp, pk).deficit, 0.0084689166662003889637, 1e-12);
    EXPECT_NEAR(compressed_key_distribution(comp, pk, PushforwardMethod::enumeration).deficit,
                0.0084689166662003889637, 1e-12);
}

TEST(Deficit, PerTypeMatchesEnumeration)
{
    const Distribution dists[] = {Distribution({0.6, 0.4}), Distribution({0.9, 0.1}),
                                  Distribution({0.5, 0.3, 0.2}), Distribution({0.2, 0.2, 0.6})};
    for (const auto& p : dists) {
        const unsigned q = p.size();
        for (unsigned n = 1; n <= (q == 2 ? 12u : 8u); ++n)
            for (unsigned m = 1; m <= n + 1; ++m) {
                const KeyCompressor comp(params_with_m(q, n, m));
                const auto a = compressed_key_distribution(comp, p, PushforwardMethod::per_type);
                const auto b = compressed_key_distribution(comp, p, PushforwardMethod::enumeration);
                EXPECT_NEAR(a.h_tilde, b.h_tilde, 1e-12) << q << ' ' << n << ' ' << m;
            }
    }
}

TEST(Deficit, PracticalModeValuesAcrossN)
{
    // frozen from an independent enumeration of the (type, rank) round robin
    const Distribution pk({0.6, 0.4});
    auto deficit = [&](unsigned n) {
        return compressed_key_distribution(KeyCompressor(scheme_params(2, n, 0.8, Mode::practical)), pk)
            .deficit;
    };
    EXPECT_NEAR(deficit(4), 0.00781622056126885, 1e-12);
    EXPECT_NEAR(deficit(10), 0.013721621119842986, 1e-12);
    EXPECT_NEAR(deficit(12), 0.006236941231783533, 1e-12);
}

TEST(Deficit, WithinBoundInPaperMode)
{
    for (const auto& pk : {Distribution::uniform(2), Distribution({0.6, 0.4}), Distribution({0.9, 0.1})})
        for (unsigned n = 1; n <= 12; ++n) {
            const KeyCompressor comp(scheme_params(2, n, 0.8, Mode::paper, false));
            const auto r = compressed_key_distribution(comp, pk);
            EXPECT_LE(r.deficit, r.prop3_rhs);
            EXPECT_GE(r.deficit, 0.0);
            EXPECT_LE(r.deficit, comp.params().m + 1e-12);
        }
}

TEST(KeyCompressor, LinearIsSeededAndDeterministic)
{
    const auto sp = scheme_params(2, 8, 0.8, Mode::practical);
    const KeyCompressor a(sp, KeyMethod::linear, 5), b(sp, KeyMethod::linear, 5), c(sp, KeyMethod::linear, 6);
    bool differs = false;
    for (const auto& k : all_sequences(8, 2)) {
        EXPECT_EQ(a.compress(k), b.compress(k));
        differs = differs || a.compress(k) != c.compress(k);
    }
    EXPECT_TRUE(differs);
    EXPECT_THROW(a.global_index(Sequence(8, 0)), Error);
    EXPECT_THROW(compressed_key_distribution(a, Distribution::uniform(2), PushforwardMethod::per_type), Error);
    EXPECT_EQ(parse_key_method("linear"), KeyMethod::linear);
    EXPECT_THROW(parse_key_method("xor"), Error);
}
