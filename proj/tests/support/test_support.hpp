#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "contextuality/contextuality.hpp"

// Independent references for tests: sign enumeration for s0/s1 and
// constructors from expectations that do not go through the generators.

namespace testing_support {

using contextuality::Scalar;

/// Max of sum(sign_i * x_i) over sign vectors whose count of -1 has `parity`.
inline Scalar brute_signed_max(const std::vector<Scalar>& xs, unsigned parity) {
    bool found = false;
    Scalar best;
    for (std::uint32_t mask = 0; mask < (1U << xs.size()); ++mask) {
        if (static_cast<unsigned>(__builtin_popcount(mask)) % 2 != parity) continue;
        Scalar total = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) total += (mask >> i) & 1U ? Scalar(-xs[i]) : xs[i];
        if (!found || total > best) best = total;
        found = true;
    }
    return best;
}

inline Scalar brute_s0(const std::vector<Scalar>& xs) { return brute_signed_max(xs, 0); }
inline Scalar brute_s1(const std::vector<Scalar>& xs) { return brute_signed_max(xs, 1); }

/// Bell system from <A_ij>, <B_ij>, <A_ij B_ij> listed in pair order 11, 12, 21, 22.
inline contextuality::BellSystem bell_from(const std::array<Scalar, 4>& a, const std::array<Scalar, 4>& b,
                                           const std::array<Scalar, 4>& ab) {
    contextuality::BellSystem s;
    for (std::size_t k = 0; k < 4; ++k) s.pairs[k] = contextuality::pair_from_expectations(a[k], b[k], ab[k]);
    return s;
}

/// LG system from (<Q_ij>, <Q_ji>, <Q_ij Q_ji>) listed in pair order 12, 13, 23.
inline contextuality::LGSystem lg_from(const std::array<std::array<Scalar, 3>, 3>& triples) {
    contextuality::LGSystem s;
    for (std::size_t k = 0; k < 3; ++k)
        s.pairs[k] = contextuality::pair_from_expectations(triples[k][0], triples[k][1], triples[k][2]);
    return s;
}

inline contextuality::BellSystem pr_box() { return contextuality::gen::pr_signaling_family(1, 0); }

/// Rational in [-1, 1] with denominator `den`.
inline Scalar random_unit(std::mt19937_64& rng, long den = 24) {
    const long k = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * den + 1)) - den;
    return contextuality::make_scalar(k, den);
}

}  // namespace testing_support
