#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace contextuality;
using lp::LinearProgram;
using lp::Relation;
using lp::Status;

namespace {

Scalar q(long n, long d = 1) { return make_scalar(n, d); }

}  // namespace

TEST(RationalLp, MinimizeWithBox) {
    LinearProgram p;
    p.add_variable("x", false);
    p.add_constraint({1}, Relation::GreaterEqual, 3);
    p.add_constraint({1}, Relation::LessEqual, 5);
    p.minimize({1});
    const auto r = lp::solve(p);
    ASSERT_EQ(r.status, Status::Optimal);
    EXPECT_EQ(r.optimum, 3);
    EXPECT_EQ(r.witness, std::vector<Scalar>{3});
    EXPECT_TRUE(lp::verify_certificate(p, r));
}

TEST(RationalLp, InfeasibleHasFarkasRay) {
    LinearProgram p;
    p.add_variable("x", false);
    p.add_constraint({1}, Relation::GreaterEqual, 1);
    p.add_constraint({1}, Relation::LessEqual, 0);
    const auto r = lp::solve(p);
    EXPECT_EQ(r.status, Status::Infeasible);
    EXPECT_TRUE(lp::verify_certificate(p, r));
    EXPECT_FALSE(lp::is_feasible(p));
}

TEST(RationalLp, MaximizeFractionalOptimum) {
    LinearProgram p;
    p.add_variable("x");
    p.add_variable("y");
    p.add_constraint({1, 1}, Relation::LessEqual, q(7, 3));
    p.maximize({1, 1});
    const auto r = lp::solve(p);
    ASSERT_EQ(r.status, Status::Optimal);
    EXPECT_EQ(r.optimum, q(7, 3));
    EXPECT_TRUE(lp::satisfies(p, r.witness));
    EXPECT_TRUE(lp::verify_certificate(p, r));
}

TEST(RationalLp, Unbounded) {
    LinearProgram p;
    p.add_variable("x");
    p.add_constraint({1}, Relation::GreaterEqual, 1);
    p.maximize({1});
    EXPECT_EQ(lp::solve(p).status, Status::Unbounded);
}

TEST(RationalLp, FeasibilityExamples) {
    LinearProgram empty;
    empty.add_variable("x", false);
    EXPECT_TRUE(lp::is_feasible(empty));

    LinearProgram clash;
    clash.add_variable("x", false);
    clash.add_constraint({1}, Relation::Equal, 1);
    clash.add_constraint({1}, Relation::Equal, 2);
    EXPECT_FALSE(lp::is_feasible(clash));
}

TEST(RationalLp, RandomConsistentBoxesAreFeasible) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        LinearProgram p;
        const std::size_t n = 1 + rng() % 5;
        std::vector<Scalar> mid(n);
        for (std::size_t j = 0; j < n; ++j) p.add_variable("x" + std::to_string(j), false);
        for (std::size_t j = 0; j < n; ++j) {
            const Scalar lo = testing_support::random_unit(rng, 10), hi = lo + make_scalar(long(rng() % 7), 3);
            mid[j] = (lo + hi) / 2;
            std::vector<Scalar> e(n);
            e[j] = 1;
            p.add_constraint(e, Relation::GreaterEqual, lo);
            p.add_constraint(e, Relation::LessEqual, hi);
        }
        // A mixed row the midpoint satisfies with slack.
        std::vector<Scalar> mix(n);
        Scalar at_mid = 0;
        for (std::size_t j = 0; j < n; ++j) {
            mix[j] = testing_support::random_unit(rng, 4);
            at_mid += mix[j] * mid[j];
        }
        p.add_constraint(mix, Relation::LessEqual, at_mid + 1);
        ASSERT_TRUE(lp::satisfies(p, mid));
        EXPECT_TRUE(lp::is_feasible(p));
    }
}

TEST(RationalLp, RandomProgramsCarryValidCertificates) {
    std::mt19937_64 rng(23);
    int optimal = 0, infeasible = 0;
    for (int trial = 0; trial < 300; ++trial) {
        LinearProgram p;
        const std::size_t n = 2 + rng() % 4, m = 1 + rng() % 5;
        for (std::size_t j = 0; j < n; ++j) p.add_variable("x" + std::to_string(j), rng() % 4 != 0);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Scalar> e(n);
            e[j] = 1;
            p.add_constraint(e, Relation::LessEqual, 3);
            p.add_constraint(e, Relation::GreaterEqual, -3);
        }
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Scalar> row(n);
            for (auto& c : row) c = make_scalar(static_cast<long>(rng() % 7) - 3);
            const auto rel = static_cast<Relation>(rng() % 3);
            p.add_constraint(row, rel, make_scalar(static_cast<long>(rng() % 9) - 4, 2));
        }
        std::vector<Scalar> c(n);
        for (auto& v : c) v = make_scalar(static_cast<long>(rng() % 5) - 2);
        if (rng() % 2) p.minimize(c); else p.maximize(c);
        const auto r = lp::solve(p);
        EXPECT_NE(r.status, Status::Unbounded);
        EXPECT_TRUE(lp::verify_certificate(p, r));
        if (r.status == Status::Optimal) {
            EXPECT_TRUE(lp::satisfies(p, r.witness));
            ++optimal;
        } else {
            ++infeasible;
        }
    }
    EXPECT_GT(optimal, 0);
    EXPECT_GT(infeasible, 0);
}

TEST(RationalLp, SolveIsDeterministic) {
    const auto s = testing_support::pr_box();
    std::vector<Scalar> w1, w2;
    const auto a = oracle::oracle_delta_extrema(s, &w1);
    const auto b = oracle::oracle_delta_extrema(s, &w2);
    EXPECT_EQ(a, b);
    EXPECT_EQ(w1, w2);
}

TEST(RationalLp, MalformedProgramsAreRejected) {
    LinearProgram p;
    p.add_variable("x");
    p.add_variable("x");
    EXPECT_THROW(p.check(), MalformedProgram);
    LinearProgram q2;
    q2.add_variable("x");
    q2.add_constraint({1, 2}, Relation::LessEqual, 1);
    EXPECT_THROW(lp::solve(q2), MalformedProgram);
}

TEST(RationalLp, TamperedCertificateFailsVerification) {
    LinearProgram p;
    p.add_variable("x");
    p.add_variable("y");
    p.add_constraint({1, 2}, Relation::LessEqual, 4);
    p.add_constraint({3, 1}, Relation::LessEqual, 6);
    p.maximize({1, 1});
    auto r = lp::solve(p);
    ASSERT_EQ(r.status, Status::Optimal);
    EXPECT_EQ(r.optimum, q(14, 5));
    ASSERT_TRUE(lp::verify_certificate(p, r));
    r.certificate[0] += q(1, 7);
    EXPECT_FALSE(lp::verify_certificate(p, r));
}
