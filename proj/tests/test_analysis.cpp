#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "vlenc/analysis.hpp"

using namespace vlenc;

namespace {

const Distribution p91({0.9, 0.1});

// I(C;X) from a joint table filled through the public encrypt() call.
double reference_mi(const CipherScheme& sch, const Distribution& p_X, const Distribution& p_K)
{
    const auto& sp = sch.params();
    const auto xs = all_sequences(sp.n, sp.q);
    const auto px = detail::block_probabilities(xs, p_X);
    const auto pk = detail::block_probabilities(xs, p_K);
    std::map<std::pair<std::string, std::size_t>, double> joint;
    std::map<std::string, double> pc;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const double w = px[i] * pk[j];
            if (w == 0.0)
                continue;
            const std::string c = sch.encrypt(xs[j], xs[i]).bits.str();
            joint[{c, i}] += w;
            pc[c] += w;
        }
    double mi = 0.0;
    for (const auto& [key, w] : joint)
        mi += w * std::log2(w / (pc[key.first] * px[key.second]));
    return mi;
}

} // namespace

TEST(LengthStats, FrozenPracticalExample)
{
    const UniversalCode code(scheme_params(2, 8, 0.8, Mode::practical));
    const auto st = length_statistics(code, p91);
    EXPECT_NEAR(st.p_raw, 0.18689454, 1e-14);
    EXPECT_NEAR(st.avg_len, 5.56068362, 1e-12);
    const auto en = length_statistics_enumerated(code, p91);
    EXPECT_NEAR(en.p_raw, st.p_raw, 1e-14);
    EXPECT_NEAR(en.avg_len, st.avg_len, 1e-12);
}

TEST(Leakage, MatchesReferenceJointTable)
{
    struct Case {
        unsigned q, n;
        double R;
        Mode mode;
        KeyMethod method;
    };
    const Case cases[] = {
        {2, 6, 0.8, Mode::practical, KeyMethod::balanced},
        {2, 6, 0.8, Mode::paper, KeyMethod::balanced},
        {2, 5, 0.5, Mode::practical, KeyMethod::linear},
        {3, 4, 0.9, Mode::practical, KeyMethod::balanced},
        {3, 3, 1.0, Mode::paper, KeyMethod::linear},
    };
    for (const auto& c : cases) {
        const CipherScheme sch(scheme_params(c.q, c.n, c.R, c.mode), c.method, 9);
        const Distribution px = c.q == 2 ? p91 : Distribution({0.7, 0.2, 0.1});
        const Distribution pk = c.q == 2 ? Distribution({0.6, 0.4}) : Distribution({0.5, 0.3, 0.2});
        const auto r = exact_leakage(sch, px, pk);
        EXPECT_NEAR(r.mi_total, reference_mi(sch, px, pk), 1e-10) << c.q << ' ' << c.n;
        EXPECT_NEAR(r.mi_total, r.mi_length + r.mi_cond, chain_rule_tol);
        EXPECT_TRUE(r.bounds.front().holds);
    }
}

TEST(Leakage, PointMassKeyLeaksEverything)
{
    const CipherScheme sch(scheme_params(2, 8, 0.8, Mode::practical), KeyMethod::balanced);
    const auto r = exact_leakage(sch, p91, Distribution::point_mass(2, 0));
    EXPECT_NEAR(r.mi_total, 8 * entropy(p91), 1e-9);
}

TEST(Leakage, UniformKeyFullCodeLeaksNothing)
{
    const CipherScheme sch(scheme_params(2, 8, 1.0, Mode::practical), KeyMethod::balanced);
    ASSERT_TRUE(sch.params().single_branch);
    const auto r = exact_leakage(sch, p91, Distribution::uniform(2));
    EXPECT_LE(r.mi_total, 1e-10);
    EXPECT_NEAR(r.key.deficit, 0.0, 1e-12);
}

TEST(Leakage, LengthOnlyWithUniformKey)
{
    // a uniform key masks the payload completely; only the branch leaks
    const CipherScheme sch(scheme_params(2, 8, 0.8, Mode::practical), KeyMethod::balanced);
    const auto r = exact_leakage(sch, p91, Distribution::uniform(2));
    EXPECT_NEAR(r.mi_cond, 0.0, 1e-12);
    EXPECT_NEAR(r.mi_length, binary_entropy(r.p_raw), 1e-12);
}

TEST(Leakage, ConverseLowerBound)
{
    const Distribution px({0.5, 0.5});
    for (const auto& pk : {Distribution({0.9, 0.1}), Distribution({0.8, 0.2}), Distribution({0.97, 0.03})})
        for (unsigned n : {4u, 6u, 8u}) {
            const CipherScheme sch(scheme_params(2, n, 0.8, Mode::practical), KeyMethod::balanced);
            const auto r = exact_leakage(sch, px, pk);
            const auto b = converse_check(sch.params(), px, pk, r.mi_total);
            EXPECT_TRUE(b.holds) << n << ' ' << b.lhs << ' ' << b.rhs;
        }
}

TEST(Leakage, SizeLimits)
{
    const CipherScheme sch(scheme_params(2, 13, 0.5, Mode::practical), KeyMethod::balanced);
    try {
        exact_leakage(sch, p91, Distribution::uniform(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.name(), "InstanceTooLarge");
    }
}

TEST(Bounds, TheoremOneGrid)
{
    for (unsigned n : {4u, 6u, 8u})
        for (const auto& px : {p91, Distribution({0.8, 0.2})})
            for (const auto& pk : {Distribution::uniform(2), Distribution({0.6, 0.4})}) {
                const CipherScheme sch(scheme_params(2, n, 0.8, Mode::paper), KeyMethod::balanced);
                for (const auto& b : theorem1_check(sch, px, pk))
                    if (b.asserted) {
                        EXPECT_TRUE(b.holds) << b.name << " n=" << n;
                    }
                const auto r = analyze(sch, px, pk);
                EXPECT_TRUE(r.asserted_bounds_hold());
            }
    EXPECT_THROW(theorem1_check(CipherScheme(scheme_params(2, 8, 0.8, Mode::practical), KeyMethod::balanced),
                                p91, Distribution::uniform(2)),
                 Error);
}

TEST(Bounds, PropOneExample)
{
    const auto sp = scheme_params(2, 8, 0.8, Mode::practical);
    const auto b = prop1_check(sp, p91, 5.56068362);
    EXPECT_NEAR(b.lhs, -1.69073029217471, 1e-12);
    EXPECT_TRUE(b.holds);
}

TEST(Bounds, PropTwoAcrossGrid)
{
    for (unsigned q = 2; q <= 3; ++q)
        for (unsigned n = 1; n <= 12; ++n)
            for (double R = 0.2; R < std::log2(q) + 0.2; R += 0.2) {
                const UniversalCode code(
                    scheme_params(q, n, std::min(R, std::log2(static_cast<double>(q))), Mode::paper, false));
                const Distribution px = q == 2 ? p91 : Distribution({0.6, 0.3, 0.1});
                for (const auto& b : prop2_check(code, px))
                    EXPECT_TRUE(b.holds) << b.name << " q=" << q << " n=" << n << " R=" << R;
                EXPECT_TRUE(upbcr_check(code).holds);
            }
}

TEST(Lemmas, BinaryEntropyExample)
{
    const auto b = lemma_binary_entropy(0.5, 1.0, 1.0);
    EXPECT_NEAR(b.lhs, 1.0, 1e-15);
    EXPECT_NEAR(b.rhs, 1.22134752044448, 1e-13);
    EXPECT_TRUE(b.holds);
    EXPECT_THROW(lemma_binary_entropy(0.6, 1.0, 1.0), Error);
}

TEST(Lemmas, LengthEntropyExample)
{
    const auto c = lemma_length_entropy({7, 8}, {0.7, 0.3});
    EXPECT_NEAR(c.H, 0.881290899230693, 1e-13);
    EXPECT_NEAR(c.mu_h, 4.20692766688729, 1e-12);
    EXPECT_NEAR(c.log_e_mu, 4.31059150488162, 1e-12);
    EXPECT_TRUE(c.holds);
}

TEST(Lemmas, RandomInstances)
{
    const auto s = lemma_checks(10000, 42);
    EXPECT_EQ(s.binary_entropy_failures, 0);
    EXPECT_EQ(s.length_entropy_failures, 0);
    EXPECT_GE(s.min_binary_entropy_slack, 0.0);
}

TEST(Trend, LeakageFallsOverBlockLength)
{
    // H(X) < R < H(K); the practical-mode curve is a sawtooth in n because
    // m and the admitted types jump, so only the long-range trend is checked
    const Distribution pk({0.6, 0.4});
    auto mi = [&](unsigned n) {
        return exact_leakage(CipherScheme(scheme_params(2, n, 0.8, Mode::practical), KeyMethod::balanced), p91,
                             pk)
            .mi_total;
    };
    EXPECT_GT(mi(4), mi(8));
    EXPECT_GT(mi(8), mi(12));
    EXPECT_GT(mi(5), mi(9));
    EXPECT_LT(mi(5), mi(6)); // documents the non-monotone step
}
