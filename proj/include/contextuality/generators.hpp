#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "contextuality/bell.hpp"
#include "contextuality/core.hpp"
#include "contextuality/lg.hpp"

namespace contextuality::gen {

struct Seed {
    std::uint64_t value;
    friend bool operator==(const Seed&, const Seed&) = default;
};

/// splitmix64 finalizer over seed + (index + 1) * golden gamma. Used to give
/// each parallel task its own reproducible stream.
constexpr Seed split(Seed s, std::uint64_t index) {
    std::uint64_t z = s.value + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return {z ^ (z >> 31)};
}

enum class SamplingMode { Unconstrained, NoSignaling, SignalingOnly };

inline constexpr int kDenominatorBound = 64;
inline constexpr int kMaxAttempts = 10000;

/// <AB> = delta on settings 11, 12, 21 and -delta on 22; all marginals zero
/// except <A22> = epsilon, <B22> = -epsilon.
inline BellSystem pr_signaling_family(const Scalar& delta, const Scalar& epsilon) {
    BellSystem s;
    const auto build = [&](int i, int j, const Scalar& ea, const Scalar& eb, const Scalar& eab) {
        try {
            s.pairs[BellSystem::index(i, j)] = pair_from_expectations(ea, eb, eab);
        } catch (const FrechetViolation& e) {
            throw InvalidParameter("delta=" + to_string(delta) + ", epsilon=" + to_string(epsilon) + ": pair " +
                                   std::to_string(i) + std::to_string(j) + ": " + e.what());
        }
    };
    build(1, 1, 0, 0, delta);
    build(1, 2, 0, 0, delta);
    build(2, 1, 0, 0, delta);
    build(2, 2, epsilon, -epsilon, -delta);
    return s;
}

/// All expectations zero: every pair uniform.
inline BellSystem uniform_bell() { return pr_signaling_family(0, 0); }

inline LGSystem uniform_lg() {
    const PairDistribution u{Scalar(1, 4), Scalar(1, 4), Scalar(1, 4), Scalar(1, 4)};
    return {{u, u, u}};
}

inline BellSystem deterministic_bell(int a, int b) {
    const PairDistribution d = pair_from_expectations(a, b, a * b);
    return {{d, d, d, d}};
}

inline LGSystem deterministic_lg(int q) {
    const PairDistribution d = pair_from_expectations(q, q, 1);
    return {{d, d, d}};
}

/// Every product -1, every marginal 0.
inline LGSystem lg_anticorrelated() {
    const PairDistribution d = pair_from_expectations(0, 0, -1);
    return {{d, d, d}};
}

namespace detail {

inline PairDistribution random_pair(std::mt19937_64& rng) {
    const auto draw = [&](int hi) { return static_cast<long>(rng() % static_cast<std::uint64_t>(hi + 1)); };
    for (;;) {
        const auto mode = rng() % 3;
        const int diag = mode == 2 ? kDenominatorBound / 8 : kDenominatorBound;
        const int off = mode == 1 ? kDenominatorBound / 8 : kDenominatorBound;
        const std::array<long, 4> k{draw(diag), draw(off), draw(off), draw(diag)};
        const long total = k[0] + k[1] + k[2] + k[3];
        if (total == 0) continue;
        return {make_scalar(k[0], total), make_scalar(k[1], total), make_scalar(k[2], total), make_scalar(k[3], total)};
    }
}

template <PairSystem S>
bool is_no_signaling(const S& s) {
    for (const auto& c : S::connections())
        if (marginal(s, c.first) != marginal(s, c.second)) return false;
    return true;
}

/// Replaces both marginals of every connection by their average. Fails if a
/// rebuilt pair leaves the probability simplex.
template <PairSystem S>
bool project_no_signaling(S& s) {
    std::array<Scalar, 2 * S::pair_count> m;
    for (const auto& c : S::connections()) {
        const Scalar avg = (marginal(s, c.first) + marginal(s, c.second)) / 2;
        m[static_cast<std::size_t>(2 * c.first.pair + c.first.side)] = avg;
        m[static_cast<std::size_t>(2 * c.second.pair + c.second.side)] = avg;
    }
    try {
        for (std::size_t k = 0; k < S::pair_count; ++k)
            s.pairs[k] = pair_from_expectations(m[2 * k], m[2 * k + 1], s.pairs[k].xy());
    } catch (const FrechetViolation&) {
        return false;
    }
    return true;
}

}  // namespace detail

/// Valid system with each pair's cells drawn as k_i / sum(k), k_i <= 64.
/// Each pair is drawn flat, diagonal-heavy or antidiagonal-heavy with equal
/// odds so strongly correlated (and contextual) systems are not rare.
template <PairSystem S>
S random_system(Seed seed, SamplingMode mode = SamplingMode::Unconstrained) {
    std::mt19937_64 rng(seed.value);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        S s;
        for (auto& p : s.pairs) p = detail::random_pair(rng);
        if (mode == SamplingMode::NoSignaling && !detail::project_no_signaling(s)) continue;
        if (mode == SamplingMode::SignalingOnly && detail::is_no_signaling(s)) continue;
        return s;
    }
    throw Error("random_system: no valid sample after " + std::to_string(kMaxAttempts) + " attempts");
}

inline BellSystem random_bell(Seed seed, SamplingMode mode = SamplingMode::Unconstrained) {
    return random_system<BellSystem>(seed, mode);
}

inline LGSystem random_lg(Seed seed, SamplingMode mode = SamplingMode::Unconstrained) {
    return random_system<LGSystem>(seed, mode);
}

/// Connection product expectations inside each connection's Fréchet window.
/// Roughly half the components land on a window endpoint, which is where the
/// compatibility boundary tends to be crossed.
template <PairSystem S>
std::array<Scalar, S::connection_count> random_connection_expectations(const S& s, Seed seed) {
    std::mt19937_64 rng(seed.value);
    std::array<Scalar, S::connection_count> out;
    const auto conns = S::connections();
    for (std::size_t k = 0; k < conns.size(); ++k) {
        const Scalar m1 = marginal(s, conns[k].first), m2 = marginal(s, conns[k].second);
        const Scalar lo = -1 + abs_of(m1 + m2), hi = 1 - abs_of(m1 - m2);
        switch (rng() % 4) {
            case 0:
                out[k] = lo;
                break;
            case 1:
                out[k] = hi;
                break;
            default: {
                const long t = static_cast<long>(rng() % (kDenominatorBound + 1));
                out[k] = lo + (hi - lo) * make_scalar(t, kDenominatorBound);
            }
        }
    }
    return out;
}

}  // namespace contextuality::gen
