#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contextuality/errors.hpp"
#include "contextuality/scalar.hpp"

namespace contextuality {

/// Joint distribution of two +-1 outcomes, stored as the four cell
/// probabilities. Expectations are derived views.
struct PairDistribution {
    Scalar pp, pm, mp, mm;

    Scalar x() const { return pp + pm - mp - mm; }
    Scalar y() const { return pp - pm + mp - mm; }
    Scalar xy() const { return pp - pm - mp + mm; }

    /// Cell for outcomes (a, b), a and b in {+1, -1}.
    const Scalar& cell(int a, int b) const {
        if (a > 0) return b > 0 ? pp : pm;
        return b > 0 ? mp : mm;
    }

    friend bool operator==(const PairDistribution&, const PairDistribution&) = default;
};

/// p(a,b) = (1 + a<X> + b<Y> + ab<XY>)/4. Throws FrechetViolation when a cell
/// would be negative.
inline PairDistribution pair_from_expectations(const Scalar& ex, const Scalar& ey, const Scalar& exy) {
    const auto cell = [&](int a, int b) { return Scalar((1 + a * ex + b * ey + a * b * exy) / 4); };
    PairDistribution d{cell(1, 1), cell(1, -1), cell(-1, 1), cell(-1, -1)};
    for (int a : {1, -1}) {
        for (int b : {1, -1}) {
            if (d.cell(a, b) < 0) {
                const bool diagonal = a == b;
                throw FrechetViolation(
                    std::string("cell (") + (a > 0 ? "+1" : "-1") + "," + (b > 0 ? "+1" : "-1") + ") = " +
                    to_string(d.cell(a, b)) + " < 0: " +
                    (diagonal ? "lower bound <XY> >= -1 + |<X> + <Y>|" : "upper bound <XY> <= 1 - |<X> - <Y>|") +
                    " violated for <X>=" + to_string(ex) + ", <Y>=" + to_string(ey) + ", <XY>=" + to_string(exy));
            }
        }
    }
    return d;
}

/// Closed range [lower, upper] of the total connection mismatch.
struct Interval {
    Scalar lower, upper;
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// One endpoint of a connection: observed pair index and side (0 = first
/// variable of the pair, 1 = second).
struct VariableRef {
    int pair;
    int side;
};

struct Connection {
    VariableRef first;
    VariableRef second;
};

/// Four pairs (A_ij, B_ij) in setting order (1,1), (1,2), (2,1), (2,2).
struct BellSystem {
    static constexpr std::size_t pair_count = 4;
    static constexpr std::size_t connection_count = 4;
    static constexpr std::string_view kind = "bell";

    std::array<PairDistribution, 4> pairs;

    static constexpr std::size_t index(int i, int j) { return static_cast<std::size_t>(2 * (i - 1) + (j - 1)); }

    const PairDistribution& pair(int i, int j) const { return pairs[index(i, j)]; }
    Scalar a(int i, int j) const { return pair(i, j).x(); }
    Scalar b(int i, int j) const { return pair(i, j).y(); }
    Scalar ab(int i, int j) const { return pair(i, j).xy(); }

    /// Connections A1 = (A11,A12), A2 = (A21,A22), B1 = (B11,B21), B2 = (B12,B22).
    static constexpr std::array<Connection, 4> connections() {
        return {{{{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}, {{0, 1}, {2, 1}}, {{1, 1}, {3, 1}}}};
    }
    static constexpr std::array<std::string_view, 4> pair_labels() { return {"11", "12", "21", "22"}; }
    static constexpr std::array<std::string_view, 8> variable_names() {
        return {"A11", "B11", "A12", "B12", "A21", "B21", "A22", "B22"};
    }
    static constexpr std::array<std::string_view, 4> connection_names() { return {"A1", "A2", "B1", "B2"}; }

    friend bool operator==(const BellSystem&, const BellSystem&) = default;
};

/// Three pairs (Q_ij, Q_ji) in time-pair order (1,2), (1,3), (2,3).
struct LGSystem {
    static constexpr std::size_t pair_count = 3;
    static constexpr std::size_t connection_count = 3;
    static constexpr std::string_view kind = "lg";

    std::array<PairDistribution, 3> pairs;

    static constexpr std::size_t index(int i, int j) { return i == 1 ? static_cast<std::size_t>(j - 2) : 2; }

    const PairDistribution& pair(int i, int j) const { return pairs[index(i, j)]; }

    /// <Q_ij>: the outcome at t_i recorded jointly with t_j.
    Scalar q(int i, int j) const { return i < j ? pair(i, j).x() : pair(j, i).y(); }
    /// <Q_ij Q_ji>
    Scalar qq(int i, int j) const { return i < j ? pair(i, j).xy() : pair(j, i).xy(); }

    /// Connections (Q12,Q13), (Q21,Q23), (Q31,Q32).
    static constexpr std::array<Connection, 3> connections() {
        return {{{{0, 0}, {1, 0}}, {{0, 1}, {2, 0}}, {{1, 1}, {2, 1}}}};
    }
    static constexpr std::array<std::string_view, 3> pair_labels() { return {"12", "13", "23"}; }
    static constexpr std::array<std::string_view, 6> variable_names() {
        return {"Q12", "Q21", "Q13", "Q31", "Q23", "Q32"};
    }
    static constexpr std::array<std::string_view, 3> connection_names() { return {"Q1", "Q2", "Q3"}; }

    friend bool operator==(const LGSystem&, const LGSystem&) = default;
};

/// A system of observed +-1 pairs whose variables are linked by connections,
/// each variable belonging to exactly one connection.
template <class S>
concept PairSystem = requires(const S& s) {
    { S::pair_count } -> std::convertible_to<std::size_t>;
    { S::connection_count } -> std::convertible_to<std::size_t>;
    { S::connections() };
    { S::pair_labels() };
    { S::variable_names() };
    { s.pairs[0] } -> std::convertible_to<const PairDistribution&>;
};

/// Marginal expectation of a variable of the system.
template <PairSystem S>
Scalar marginal(const S& sys, VariableRef v) {
    const auto& p = sys.pairs[static_cast<std::size_t>(v.pair)];
    return v.side == 0 ? p.x() : p.y();
}

template <PairSystem S>
std::string variable_name(VariableRef v) {
    return std::string(S::variable_names()[static_cast<std::size_t>(2 * v.pair + v.side)]);
}

/// Max of +-x1 ... +-xn over sign patterns with an even number of minuses.
/// Requires an even, nonzero length.
inline Scalar s0(std::span<const Scalar> xs) {
    if (xs.empty() || xs.size() % 2 != 0)
        throw InvalidArity("s0 needs an even, nonzero number of arguments, got " + std::to_string(xs.size()));
    Scalar total = 0;
    Scalar smallest = abs_of(xs[0]);
    bool odd_negatives = false;
    for (const auto& x : xs) {
        total += abs_of(x);
        smallest = min_of(smallest, abs_of(x));
        if (x < 0) odd_negatives = !odd_negatives;
    }
    // Taking |x| everywhere needs one minus per negative entry; if that count has
    // the wrong parity the cheapest fix flips the smallest magnitude.
    return odd_negatives ? Scalar(total - 2 * smallest) : total;
}

/// Max of +-x1 ... +-xn over sign patterns with an odd number of minuses.
inline Scalar s1(std::span<const Scalar> xs) {
    if (xs.empty()) throw InvalidArity("s1 needs at least one argument");
    Scalar total = 0;
    Scalar smallest = abs_of(xs[0]);
    bool odd_negatives = false;
    for (const auto& x : xs) {
        total += abs_of(x);
        smallest = min_of(smallest, abs_of(x));
        if (x < 0) odd_negatives = !odd_negatives;
    }
    return odd_negatives ? total : Scalar(total - 2 * smallest);
}

inline Scalar s0(std::initializer_list<Scalar> xs) { return s0(std::span<const Scalar>(xs.begin(), xs.size())); }
inline Scalar s1(std::initializer_list<Scalar> xs) { return s1(std::span<const Scalar>(xs.begin(), xs.size())); }

/// A failed invariant of one observed pair.
struct Violation {
    std::string pair;
    std::string bound;
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::vector<Violation> validate_pair(const PairDistribution& d, std::string_view label) {
    std::vector<Violation> out;
    constexpr std::array<std::pair<int, int>, 4> cells{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    constexpr std::array<std::string_view, 4> names{"pp", "pm", "mp", "mm"};
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const auto& v = d.cell(cells[k].first, cells[k].second);
        if (v < 0) {
            const bool diagonal = cells[k].first == cells[k].second;
            out.push_back({std::string(label),
                           diagonal ? "<XY> >= -1 + |<X> + <Y>|" : "<XY> <= 1 - |<X> - <Y>|",
                           "cell " + std::string(names[k]) + " = " + to_string(v) + " is negative"});
        }
    }
    const Scalar sum = d.pp + d.pm + d.mp + d.mm;
    if (sum != 1) out.push_back({std::string(label), "normalization", "cells sum to " + to_string(sum) + ", not 1"});
    return out;
}

/// Empty iff every observed pair is a probability distribution. Never throws.
template <PairSystem S>
std::vector<Violation> validate(const S& sys) {
    std::vector<Violation> out;
    for (std::size_t k = 0; k < S::pair_count; ++k) {
        auto v = validate_pair(sys.pairs[k], S::pair_labels()[k]);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

template <PairSystem S>
void require_valid(const S& sys) {
    const auto violations = validate(sys);
    if (violations.empty()) return;
    std::string msg = "invalid " + std::string(S::kind) + " system:";
    for (const auto& v : violations) msg += " [pair " + v.pair + ": " + v.bound + "; " + v.detail + "]";
    throw InvalidSystem(msg);
}

}  // namespace contextuality
