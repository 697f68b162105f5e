#include <gtest/gtest.h>

#include <random>

#include "contextuality/harness.hpp"
#include "test_support.hpp"

using namespace contextuality;
using fme::InequalitySystem;
using fme::Row;
using fme::RowKind;

namespace {

Scalar q(long n, long d = 1) { return make_scalar(n, d); }

InequalitySystem system_over(std::vector<std::string> vars) {
    InequalitySystem s;
    s.variables = std::move(vars);
    return s;
}

}  // namespace

TEST(Eliminate, PairsUpperWithLowerBounds) {
    auto s = system_over({"x", "y"});
    s.add({0, 1}, RowKind::LessEqual, 2);
    s.add({0, -1}, RowKind::LessEqual, 0);
    s.add({1, -1}, RowKind::LessEqual, 1);
    const auto out = fme::eliminate(s, "y");
    EXPECT_EQ(out.variables, std::vector<std::string>{"x"});
    ASSERT_EQ(out.rows.size(), 1u);
    EXPECT_EQ(out.rows[0], (Row{{1}, RowKind::LessEqual, 3}));
    // y <= 2 paired with -y <= 0 leaves 0 <= 2.
    EXPECT_EQ(out.vacuous_dropped, 1u);
}

TEST(Eliminate, OpposedRowsCollapseToTautology) {
    auto s = system_over({"x", "y"});
    s.add({1, 1}, RowKind::LessEqual, 1);
    s.add({-1, -1}, RowKind::LessEqual, -1);
    const auto out = fme::eliminate(s, "y");
    EXPECT_TRUE(out.rows.empty());
    EXPECT_EQ(out.vacuous_dropped, 1u);
}

TEST(Eliminate, RefusesVariableInEquality) {
    auto s = system_over({"x", "y"});
    s.add({1, 1}, RowKind::Equal, 1);
    EXPECT_THROW(fme::eliminate(s, "y"), UnusablePivot);
    EXPECT_THROW(fme::eliminate(s, "z"), UnknownVariable);
}

TEST(Eliminate, ProjectionAgreesWithLpOnRandomSystems) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = system_over({"x0", "x1", "x2", "x3", "x4", "x5"});
        for (int r = 0; r < 14; ++r) {
            std::vector<Scalar> c(6);
            for (auto& v : c) v = make_scalar(static_cast<long>(rng() % 5) - 2);
            s.add(c, RowKind::LessEqual, make_scalar(static_cast<long>(rng() % 7) + 1));
        }
        // Keep the region bounded in the eliminated directions.
        for (std::size_t j = 2; j < 6; ++j) {
            std::vector<Scalar> e(6);
            e[j] = 1;
            s.add(e, RowKind::LessEqual, 4);
            e[j] = -1;
            s.add(e, RowKind::LessEqual, 4);
        }
        auto projected = s;
        for (const char* v : {"x5", "x4", "x3", "x2"}) projected = fme::remove_redundant(fme::eliminate(projected, v));
        ASSERT_EQ(projected.variables.size(), 2u);
        for (int point = 0; point < 100; ++point) {
            const Scalar x0 = testing_support::random_unit(rng, 2) * 3, x1 = testing_support::random_unit(rng, 2) * 3;
            auto fixed = s;
            for (std::size_t j = 0; j < 2; ++j) {
                std::vector<Scalar> e(6);
                e[j] = 1;
                fixed.add(e, RowKind::Equal, j == 0 ? x0 : x1);
            }
            const bool lp_feasible = lp::is_feasible(fme::to_program(fixed));
            EXPECT_EQ(projected.satisfied_by({x0, x1}), lp_feasible) << "trial " << trial << " point " << point;
        }
    }
}

TEST(Eliminate, ProjectionIsIdempotentAfterPruning) {
    const auto sys = fme::compatibility_system(gen::pr_signaling_family(q(3, 4), q(1, 8)));
    auto once = fme::remove_redundant(sys);
    auto twice = fme::remove_redundant(once);
    EXPECT_EQ(once.rows, twice.rows);
}

TEST(SubstituteEquality, Example) {
    auto s = system_over({"x", "y"});
    s.add({1, 1}, RowKind::Equal, 3);
    s.add({1, 0}, RowKind::LessEqual, 1);
    const auto out = fme::substitute_equality(s, 0, "x");
    EXPECT_EQ(out.variables, std::vector<std::string>{"y"});
    ASSERT_EQ(out.rows.size(), 1u);
    EXPECT_EQ(out.rows[0], (Row{{-1}, RowKind::LessEqual, -2}));

    // Back-solving any y that satisfies the result gives a point of the input.
    for (long y = 2; y <= 5; ++y) {
        const Scalar x = fme::back_solve(s.rows[0], 0, {Scalar(y)});
        EXPECT_TRUE(s.satisfied_by({x, Scalar(y)}));
    }
    EXPECT_THROW(fme::substitute_equality(s, 1, "x"), UnusablePivot);
}

TEST(SubstituteEquality, DeltaDefinitionMatchesHandExpansion) {
    const auto sys = gen::random_bell(gen::Seed{77});
    auto s = fme::compatibility_system(sys);
    const std::size_t before = s.rows.size();
    s.add({1, q(1, 2), q(1, 2), q(1, 2), q(1, 2)}, RowKind::Equal, 2);
    const auto out = fme::substitute_equality(s, s.rows.size() - 1, "A1");
    ASSERT_EQ(out.rows.size(), before);
    // e_A1 = 4 - 2 delta - e_A2 - e_B1 - e_B2.
    for (std::size_t i = 0; i < before; ++i) {
        const auto& in = s.rows[i].coefficients;
        const Scalar a = in[1];
        const std::vector<Scalar> expect{in[0] - 2 * a, in[2] - a, in[3] - a, in[4] - a};
        EXPECT_EQ(out.rows[i].coefficients, expect) << i;
        EXPECT_EQ(out.rows[i].bound, s.rows[i].bound - 4 * a) << i;
    }
}

TEST(RemoveRedundant, Examples) {
    auto s = system_over({"x"});
    s.add({1}, RowKind::LessEqual, 1);
    s.add({1}, RowKind::LessEqual, 2);
    EXPECT_EQ(fme::remove_redundant(s).rows, (std::vector<Row>{{{1}, RowKind::LessEqual, 1}}));

    auto t = system_over({"x", "y"});
    t.add({1, 0}, RowKind::LessEqual, 1);
    t.add({0, 1}, RowKind::LessEqual, 1);
    t.add({1, 1}, RowKind::LessEqual, 2);
    EXPECT_EQ(fme::remove_redundant(t).rows,
              (std::vector<Row>{{{1, 0}, RowKind::LessEqual, 1}, {{0, 1}, RowKind::LessEqual, 1}}));

    auto empty = system_over({"x"});
    empty.add({1}, RowKind::LessEqual, 0);
    empty.add({-1}, RowKind::LessEqual, -1);
    const auto collapsed = fme::remove_redundant(empty);
    ASSERT_EQ(collapsed.rows.size(), 1u);
    EXPECT_TRUE(collapsed.rows[0].vacuous());
    EXPECT_LT(collapsed.rows[0].bound, 0);
}

TEST(Derive, BellFixedCases) {
    EXPECT_EQ(fme::derive_delta_bounds(testing_support::pr_box()), (Interval{1, 3}));
    EXPECT_EQ(fme::derive_delta_bounds(gen::uniform_bell()), (Interval{0, 4}));
    EXPECT_EQ(fme::derive_delta_bounds(gen::deterministic_bell(1, 1)), (Interval{0, 0}));
    EXPECT_EQ(fme::derive_delta_bounds(gen::deterministic_bell(-1, 1)), (Interval{0, 0}));
}

TEST(Derive, LgFixedCases) {
    EXPECT_EQ(fme::derive_delta_bounds(gen::uniform_lg()), (Interval{0, 3}));
    EXPECT_EQ(fme::derive_delta_bounds(gen::lg_anticorrelated()), (Interval{1, 3}));
    EXPECT_EQ(fme::derive_delta_bounds(gen::deterministic_lg(1)), (Interval{0, 0}));
    EXPECT_EQ(fme::derive_delta_bounds(gen::deterministic_lg(-1)), (Interval{0, 0}));
}

TEST(Derive, ProjectedSystemIsOverDeltaOnly) {
    const auto d = fme::derive(testing_support::pr_box());
    EXPECT_EQ(d.instantiated.variables.size(), 5u);
    // 2^8 / 2 odd patterns plus four Fréchet rows per connection.
    EXPECT_EQ(d.instantiated.rows.size(), 128u + 16u);
    EXPECT_EQ(d.projected.variables, std::vector<std::string>{"delta"});
    EXPECT_EQ(fme::render(d.projected), "-delta <= -1\ndelta <= 3\n");
}

TEST(Derive, ThreeRoutesAgreeOnRandomSystems) {
    for (std::uint64_t i = 0; i < 30; ++i) {
        const auto b = gen::random_bell(gen::Seed{500 + i}, harness::mode_for(i));
        const auto fb = fme::derive_delta_bounds(b);
        EXPECT_EQ(fb, bell::delta_interval(b)) << i;
        EXPECT_EQ(fb, oracle::oracle_delta_extrema(b)) << i;
        const auto l = gen::random_lg(gen::Seed{500 + i}, harness::mode_for(i));
        const auto fl = fme::derive_delta_bounds(l);
        EXPECT_EQ(fl, lg::delta_prime_interval(l)) << i;
        EXPECT_EQ(fl, oracle::oracle_delta_extrema(l)) << i;
    }
}
