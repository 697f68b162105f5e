#pragma once

#include <array>

#include "contextuality/core.hpp"

namespace contextuality::bell {

/// Minimal probabilities Pr[A11!=A12], Pr[A21!=A22], Pr[B11!=B21], Pr[B12!=B22]
/// permitted by the marginals.
struct ConnectionVector {
    Scalar c_A1, c_A2, c_B1, c_B2;

    Scalar sum() const { return c_A1 + c_A2 + c_B1 + c_B2; }
    friend bool operator==(const ConnectionVector&, const ConnectionVector&) = default;
};

struct ClassicVerdict {
    bool no_signaling;
    bool inequality_holds;
};

struct Report {
    Scalar delta0;
    Scalar chsh_stat;
    Scalar delta_min;
    Scalar delta_max;
    Scalar degree;
    bool noncontextual;
    bool signaling;
    bool classic_chsh_satisfied;
};

inline std::array<Scalar, 4> products(const BellSystem& s) {
    return {s.ab(1, 1), s.ab(1, 2), s.ab(2, 1), s.ab(2, 2)};
}

inline ConnectionVector minimal_connections(const BellSystem& s) {
    return {abs_of(s.a(1, 1) - s.a(1, 2)) / 2, abs_of(s.a(2, 1) - s.a(2, 2)) / 2,
            abs_of(s.b(1, 1) - s.b(2, 1)) / 2, abs_of(s.b(1, 2) - s.b(2, 2)) / 2};
}

inline Scalar delta0(const BellSystem& s) { return minimal_connections(s).sum(); }

/// max over (i,j) of |sum of the four products - 2<A_ij B_ij>|.
inline Scalar chsh_statistic(const BellSystem& s) {
    const auto p = products(s);
    const Scalar total = p[0] + p[1] + p[2] + p[3];
    Scalar best = abs_of(total - 2 * p[0]);
    for (std::size_t k = 1; k < p.size(); ++k) best = max_of(best, abs_of(total - 2 * p[k]));
    return best;
}

/// Generalized criterion: CHSH statistic <= 2(1 + delta0).
inline bool is_noncontextual(const BellSystem& s) { return chsh_statistic(s) <= 2 * (1 + delta0(s)); }

inline Scalar degree(const BellSystem& s) {
    return max_of(Scalar(0), Scalar(chsh_statistic(s) / 2 - 1 - delta0(s)));
}

/// Range of the total connection mismatch compatible with the observed pairs.
inline Interval delta_interval(const BellSystem& s) {
    const auto p = products(s);
    const Scalar odd = s1(p);
    const Scalar marginal_sums = abs_of(s.a(1, 1) + s.a(1, 2)) + abs_of(s.a(2, 1) + s.a(2, 2)) +
                                 abs_of(s.b(1, 1) + s.b(2, 1)) + abs_of(s.b(1, 2) + s.b(2, 2));
    Scalar lower = max_of(delta0(s), Scalar(-1 + odd / 2));
    Scalar upper = min_of(Scalar(5 - odd / 2), Scalar(4 - marginal_sums / 2));
    return {lower, upper};
}

inline bool no_signaling(const BellSystem& s) {
    return s.a(1, 1) == s.a(1, 2) && s.a(2, 1) == s.a(2, 2) && s.b(1, 1) == s.b(2, 1) && s.b(1, 2) == s.b(2, 2);
}

/// Traditional verdicts: marginal selectivity and CHSH <= 2.
inline ClassicVerdict classic_checks(const BellSystem& s) { return {no_signaling(s), chsh_statistic(s) <= 2}; }

inline Report analyze(const BellSystem& s) {
    require_valid(s);
    const auto interval = delta_interval(s);
    const auto classic = classic_checks(s);
    Report r{delta0(s), chsh_statistic(s), interval.lower, interval.upper, degree(s),
             false,     !classic.no_signaling, classic.inequality_holds};
    r.noncontextual = r.degree == 0;
    return r;
}

}  // namespace contextuality::bell
