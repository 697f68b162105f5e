#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace contextuality;

namespace {

Scalar q(long n, long d = 1) { return make_scalar(n, d); }

}  // namespace

TEST(SignalingFamily, Examples) {
    const auto pr = gen::pr_signaling_family(1, 0);
    EXPECT_TRUE(bell::no_signaling(pr));
    EXPECT_EQ(bell::chsh_statistic(pr), 4);

    const auto t = gen::pr_signaling_family(q(17, 24), 0);
    EXPECT_EQ(bell::chsh_statistic(t), q(17, 6));
    EXPECT_EQ(bell::degree(t), q(5, 12));

    const auto quarter = gen::pr_signaling_family(q(1, 4), 0);
    EXPECT_EQ(bell::chsh_statistic(quarter), 1);
    EXPECT_TRUE(bell::is_noncontextual(quarter));
}

TEST(SignalingFamily, NoSignalingIffEpsilonZero) {
    for (long k = -4; k <= 4; ++k) EXPECT_EQ(bell::no_signaling(gen::pr_signaling_family(q(1, 2), q(k, 8))), k == 0);
}

TEST(SignalingFamily, OutOfWindowParametersAreRejected) {
    EXPECT_THROW(gen::pr_signaling_family(q(3, 2), 0), InvalidParameter);
    EXPECT_THROW(gen::pr_signaling_family(0, 2), InvalidParameter);
}

TEST(CanonicalSystems, Deterministic) {
    const auto same = gen::deterministic_bell(1, 1);
    for (const auto& p : bell::products(same)) EXPECT_EQ(p, 1);
    EXPECT_EQ(bell::degree(same), 0);

    const auto opposite = gen::deterministic_bell(1, -1);
    for (const auto& p : bell::products(opposite)) EXPECT_EQ(p, -1);
    EXPECT_EQ(bell::chsh_statistic(opposite), 2);
    EXPECT_EQ(bell::degree(opposite), 0);

    const auto lg_up = gen::deterministic_lg(1);
    for (const auto& p : lg::products(lg_up)) EXPECT_EQ(p, 1);
    EXPECT_EQ(lg::degree(lg_up), 0);
}

TEST(CanonicalSystems, LgAnticorrelated) {
    const auto s = gen::lg_anticorrelated();
    EXPECT_EQ(lg::lg_statistic(s), 3);
    EXPECT_EQ(lg::degree(s), 1);
    EXPECT_EQ(oracle::oracle_degree(s), 1);
    const auto classic = lg::classic_lgsz_check(s);
    EXPECT_TRUE(classic.no_signaling);
    EXPECT_FALSE(classic.inequality_holds);
}

TEST(RandomSystems, SameSeedSameSystem) {
    for (std::uint64_t i = 0; i < 50; ++i) {
        EXPECT_EQ(gen::random_bell(gen::Seed{i}).pairs, gen::random_bell(gen::Seed{i}).pairs);
        EXPECT_EQ(gen::random_lg(gen::Seed{i}).pairs, gen::random_lg(gen::Seed{i}).pairs);
    }
    EXPECT_NE(gen::random_bell(gen::Seed{1}).pairs, gen::random_bell(gen::Seed{2}).pairs);
}

TEST(RandomSystems, SplitStreamsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(gen::split(gen::Seed{42}, i).value);
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(gen::split(gen::Seed{42}, 7), gen::split(gen::Seed{42}, 7));
}

TEST(RandomSystems, NoSignalingModeHasZeroMarginalDifferences) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto b = gen::random_bell(gen::Seed{i}, gen::SamplingMode::NoSignaling);
        for (const auto& c : BellSystem::connections()) EXPECT_EQ(marginal(b, c.first) - marginal(b, c.second), 0);
        const auto l = gen::random_lg(gen::Seed{i}, gen::SamplingMode::NoSignaling);
        for (const auto& c : LGSystem::connections()) EXPECT_EQ(marginal(l, c.first) - marginal(l, c.second), 0);
    }
}

TEST(RandomSystems, SignalingOnlyModeAlwaysSignals) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        EXPECT_FALSE(bell::no_signaling(gen::random_bell(gen::Seed{i}, gen::SamplingMode::SignalingOnly)));
        EXPECT_FALSE(lg::no_signaling(gen::random_lg(gen::Seed{i}, gen::SamplingMode::SignalingOnly)));
    }
}

TEST(RandomSystems, ThousandBellSamplesAreValid) {
    int contextual = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto s = gen::random_bell(gen::Seed{i}, static_cast<gen::SamplingMode>(i % 3));
        EXPECT_TRUE(validate(s).empty()) << i;
        contextual += !bell::is_noncontextual(s);
    }
    // Both verdicts must be represented for the equivalence suites to mean anything.
    EXPECT_GT(contextual, 20);
    EXPECT_LT(contextual, 980);
}

TEST(RandomConnections, StayInsideFrechetWindows) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto s = gen::random_bell(gen::Seed{i});
        const auto e = gen::random_connection_expectations(s, gen::Seed{i + 1});
        const auto conns = BellSystem::connections();
        for (std::size_t k = 0; k < 4; ++k)
            EXPECT_TRUE(oracle::frechet_ok(marginal(s, conns[k].first), marginal(s, conns[k].second), e[k]));
    }
}
