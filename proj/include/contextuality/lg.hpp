#pragma once

#include <array>

#include "contextuality/core.hpp"

namespace contextuality::lg {

/// Minimal probabilities Pr[Q12!=Q13], Pr[Q21!=Q23], Pr[Q31!=Q32].
struct ConnectionVector {
    Scalar c_1, c_2, c_3;

    Scalar sum() const { return c_1 + c_2 + c_3; }
    friend bool operator==(const ConnectionVector&, const ConnectionVector&) = default;
};

struct ClassicVerdict {
    bool no_signaling;
    bool inequality_holds;
};

struct Report {
    Scalar delta0_prime;
    Scalar lg_stat;
    Scalar delta_min;
    Scalar delta_max;
    Scalar degree;
    bool noncontextual;
    bool signaling;
    bool classic_lgsz_satisfied;
};

inline std::array<Scalar, 3> products(const LGSystem& s) { return {s.qq(1, 2), s.qq(1, 3), s.qq(2, 3)}; }

/// With `causal`, <Q12> and <Q13> must agree and the first component is 0.
/// Without it the first connection is treated like the other two.
inline ConnectionVector minimal_connections(const LGSystem& s, bool causal = true) {
    if (causal && s.q(1, 2) != s.q(1, 3))
        throw CausalityViolation("causal LG system needs <Q12> == <Q13>, got " + to_string(s.q(1, 2)) + " and " +
                                 to_string(s.q(1, 3)));
    return {causal ? Scalar(0) : Scalar(abs_of(s.q(1, 2) - s.q(1, 3)) / 2), abs_of(s.q(2, 1) - s.q(2, 3)) / 2,
            abs_of(s.q(3, 1) - s.q(3, 2)) / 2};
}

inline Scalar delta0_prime(const LGSystem& s, bool causal = true) { return minimal_connections(s, causal).sum(); }

/// Odd-parity sign maximum of the three products.
inline Scalar lg_statistic(const LGSystem& s) { return s1(products(s)); }

inline bool is_noncontextual(const LGSystem& s, bool causal = true) {
    return lg_statistic(s) <= 1 + 2 * delta0_prime(s, causal);
}

inline Scalar degree(const LGSystem& s, bool causal = true) {
    return max_of(Scalar(0), Scalar(lg_statistic(s) / 2 - Scalar(1, 2) - delta0_prime(s, causal)));
}

/// Range of the total connection mismatch compatible with the observed pairs.
/// The first upper bound is driven by the even-parity maximum of the three
/// products; flipping the first argument turns s1 into that maximum.
inline Interval delta_prime_interval(const LGSystem& s) {
    const auto p = products(s);
    const Scalar odd = s1(p);
    const Scalar even = s1({-p[0], p[1], p[2]});
    const Scalar differences =
        abs_of(s.q(1, 2) - s.q(1, 3)) + abs_of(s.q(2, 1) - s.q(2, 3)) + abs_of(s.q(3, 1) - s.q(3, 2));
    const Scalar sums = abs_of(s.q(1, 2) + s.q(1, 3)) + abs_of(s.q(2, 1) + s.q(2, 3)) + abs_of(s.q(3, 1) + s.q(3, 2));
    Scalar lower = max_of(Scalar(-Scalar(1, 2) + odd / 2), Scalar(differences / 2));
    Scalar upper = min_of(Scalar(Scalar(7, 2) - even / 2), Scalar(3 - sums / 2));
    return {lower, upper};
}

inline bool no_signaling(const LGSystem& s) {
    return s.q(1, 2) == s.q(1, 3) && s.q(2, 1) == s.q(2, 3) && s.q(3, 1) == s.q(3, 2);
}

/// Marginal selectivity and the two-sided LGSZ inequality (with min in the upper bound).
inline ClassicVerdict classic_lgsz_check(const LGSystem& s) {
    const auto p = products(s);
    const Scalar sum = p[0] + p[1] + p[2];
    const Scalar smallest = min_of(min_of(p[0], p[1]), p[2]);
    return {no_signaling(s), -1 <= sum && sum <= 1 + 2 * smallest};
}

inline Report analyze(const LGSystem& s, bool causal = true) {
    require_valid(s);
    const auto interval = delta_prime_interval(s);
    const auto classic = classic_lgsz_check(s);
    Report r{delta0_prime(s, causal), lg_statistic(s), interval.lower, interval.upper, degree(s, causal),
             false,                   !classic.no_signaling, classic.inequality_holds};
    r.noncontextual = r.degree == 0;
    return r;
}

}  // namespace contextuality::lg
