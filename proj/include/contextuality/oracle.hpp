#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "contextuality/bell.hpp"
#include "contextuality/core.hpp"
#include "contextuality/lg.hpp"
#include "contextuality/ratlp.hpp"

// Ground truth on the joint-distribution polytope. An atom is one assignment
// of +-1 to all variables of a system; variable 2*pair + side is bit
// (2*pair + side) of the atom index, with a set bit meaning -1.

namespace contextuality::oracle {

/// Row order: the observed pairs in system order, then the connections in
/// system order; within each group the outcomes (+,+), (+,-), (-,+), (-,-).
struct VertexMatrix {
    std::vector<std::string> row_labels;
    std::size_t rows = 0;
    std::size_t columns = 0;
    std::size_t groups = 0;
    std::vector<std::uint8_t> entries;

    std::uint8_t at(std::size_t r, std::size_t c) const { return entries[r * columns + c]; }
};

struct OracleResult {
    Scalar delta_min;
    Scalar delta_max;
    bool feasible_at_C0 = false;
    std::vector<Scalar> witness_joint;
};

struct LemmaCheck {
    bool inequalities;
    bool lp_feasible;
};

namespace detail {

constexpr std::array<std::pair<int, int>, 4> outcomes{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

inline int value_at(std::size_t atom, VariableRef v) {
    return (atom >> static_cast<std::size_t>(2 * v.pair + v.side)) & 1U ? -1 : 1;
}

template <PairSystem S>
constexpr std::size_t atom_count() {
    return std::size_t{1} << (2 * S::pair_count);
}

inline std::string sign_text(int v) { return v > 0 ? "+1" : "-1"; }

/// LP over atom probabilities q >= 0 reproducing every observed pair cell.
template <PairSystem S>
lp::LinearProgram coupling_program(const S& sys) {
    constexpr std::size_t n = atom_count<S>();
    lp::LinearProgram prog;
    for (std::size_t c = 0; c < n; ++c) prog.add_variable("q" + std::to_string(c));
    for (std::size_t k = 0; k < S::pair_count; ++k) {
        const VariableRef x{static_cast<int>(k), 0}, y{static_cast<int>(k), 1};
        for (const auto& [a, b] : outcomes) {
            std::vector<Scalar> row(n);
            for (std::size_t c = 0; c < n; ++c)
                if (value_at(c, x) == a && value_at(c, y) == b) row[c] = 1;
            prog.add_constraint(std::move(row), lp::Relation::Equal, sys.pairs[k].cell(a, b));
        }
    }
    return prog;
}

template <PairSystem S>
std::vector<Scalar> mismatch_indicator(const Connection& conn) {
    std::vector<Scalar> row(atom_count<S>());
    for (std::size_t c = 0; c < row.size(); ++c)
        if (value_at(c, conn.first) != value_at(c, conn.second)) row[c] = 1;
    return row;
}

template <PairSystem S>
std::vector<Scalar> total_mismatch() {
    std::vector<Scalar> row(atom_count<S>());
    for (const auto& conn : S::connections())
        for (std::size_t c = 0; c < row.size(); ++c)
            if (value_at(c, conn.first) != value_at(c, conn.second)) row[c] += 1;
    return row;
}

}  // namespace detail

template <PairSystem S>
VertexMatrix build_vertex_matrix() {
    VertexMatrix m;
    m.columns = detail::atom_count<S>();
    m.groups = S::pair_count + S::connection_count;
    m.rows = 4 * m.groups;
    m.entries.assign(m.rows * m.columns, 0);

    std::vector<Connection> groups;
    for (std::size_t k = 0; k < S::pair_count; ++k)
        groups.push_back({{static_cast<int>(k), 0}, {static_cast<int>(k), 1}});
    for (const auto& conn : S::connections()) groups.push_back(conn);

    std::size_t r = 0;
    for (const auto& g : groups) {
        for (const auto& [a, b] : detail::outcomes) {
            m.row_labels.push_back(variable_name<S>(g.first) + "=" + detail::sign_text(a) + "," +
                                   variable_name<S>(g.second) + "=" + detail::sign_text(b));
            for (std::size_t c = 0; c < m.columns; ++c)
                if (detail::value_at(c, g.first) == a && detail::value_at(c, g.second) == b)
                    m.entries[r * m.columns + c] = 1;
            ++r;
        }
    }
    return m;
}

/// M q for a joint distribution q over atoms.
inline std::vector<Scalar> apply(const VertexMatrix& m, const std::vector<Scalar>& q) {
    std::vector<Scalar> p(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.columns; ++c)
            if (m.at(r, c)) p[r] += q[c];
    return p;
}

/// Sum over connections of |<first> - <second>|/2, the least total mismatch
/// the marginals allow.
template <PairSystem S>
Scalar minimal_mismatch(const S& sys) {
    Scalar total = 0;
    for (const auto& conn : S::connections()) total += abs_of(marginal(sys, conn.first) - marginal(sys, conn.second)) / 2;
    return total;
}

template <PairSystem S>
std::array<Scalar, S::connection_count> minimal_connection_vector(const S& sys) {
    std::array<Scalar, S::connection_count> out;
    const auto conns = S::connections();
    for (std::size_t k = 0; k < conns.size(); ++k)
        out[k] = abs_of(marginal(sys, conns[k].first) - marginal(sys, conns[k].second)) / 2;
    return out;
}

/// Whether some joint distribution reproduces the observed pairs with
/// Pr[first != second] equal to `mismatch[k]` for every connection k.
template <PairSystem S>
bool oracle_compatible(const S& sys, const std::array<Scalar, S::connection_count>& mismatch) {
    auto prog = detail::coupling_program(sys);
    const auto conns = S::connections();
    for (std::size_t k = 0; k < conns.size(); ++k)
        prog.add_constraint(detail::mismatch_indicator<S>(conns[k]), lp::Relation::Equal, mismatch[k]);
    return lp::is_feasible(prog);
}

inline bool oracle_compatible(const BellSystem& sys, const bell::ConnectionVector& c) {
    return oracle_compatible(sys, std::array<Scalar, 4>{c.c_A1, c.c_A2, c.c_B1, c.c_B2});
}

inline bool oracle_compatible(const LGSystem& sys, const lg::ConnectionVector& c) {
    return oracle_compatible(sys, std::array<Scalar, 3>{c.c_1, c.c_2, c.c_3});
}

/// Least and greatest probability Pr[first != second] of one connection.
template <PairSystem S>
Interval oracle_connection_extrema(const S& sys, std::size_t k) {
    auto prog = detail::coupling_program(sys);
    const auto objective = detail::mismatch_indicator<S>(S::connections()[k]);
    prog.minimize(objective);
    const auto lo = lp::solve(prog);
    prog.maximize(objective);
    const auto hi = lp::solve(prog);
    if (lo.status != lp::Status::Optimal || hi.status != lp::Status::Optimal)
        throw InternalInconsistency("coupling LP not optimal for a connection");
    return {lo.optimum, hi.optimum};
}

/// Min and max of the total connection mismatch over all joint distributions
/// that reproduce the observed pairs.
template <PairSystem S>
Interval oracle_delta_extrema(const S& sys, std::vector<Scalar>* witness = nullptr) {
    auto prog = detail::coupling_program(sys);
    const auto objective = detail::total_mismatch<S>();
    prog.minimize(objective);
    const auto lo = lp::solve(prog);
    prog.maximize(objective);
    const auto hi = lp::solve(prog);
    if (lo.status != lp::Status::Optimal || hi.status != lp::Status::Optimal)
        throw InternalInconsistency("coupling LP infeasible or unbounded for a " + std::string(S::kind) +
                                    " system; the input is not a valid system");
    if (witness) *witness = lo.witness;
    return {lo.optimum, hi.optimum};
}

template <PairSystem S>
OracleResult oracle_analyze(const S& sys) {
    OracleResult r;
    const auto ext = oracle_delta_extrema(sys, &r.witness_joint);
    r.delta_min = ext.lower;
    r.delta_max = ext.upper;
    r.feasible_at_C0 = oracle_compatible(sys, minimal_connection_vector(sys));
    return r;
}

/// max(0, LP minimum of the total mismatch - closed-form minimal mismatch).
template <PairSystem S>
Scalar oracle_degree(const S& sys) {
    return max_of(Scalar(0), Scalar(oracle_delta_extrema(sys).lower - minimal_mismatch(sys)));
}

/// Fréchet window -1 + |m1 + m2| <= e <= 1 - |m1 - m2| for a +-1 pair.
inline bool frechet_ok(const Scalar& m1, const Scalar& m2, const Scalar& e) {
    return -1 + abs_of(m1 + m2) <= e && e <= 1 - abs_of(m1 - m2);
}

/// Closed-form compatibility of connections with given product expectations:
/// the sign-parity inequalities plus Fréchet rows on every pair.
template <PairSystem S>
bool compatibility_inequalities(const S& sys, const std::array<Scalar, S::connection_count>& conn) {
    for (const auto& p : sys.pairs)
        if (!frechet_ok(p.x(), p.y(), p.xy())) return false;
    const auto conns = S::connections();
    for (std::size_t k = 0; k < conns.size(); ++k)
        if (!frechet_ok(marginal(sys, conns[k].first), marginal(sys, conns[k].second), conn[k])) return false;

    if constexpr (std::is_same_v<S, BellSystem>) {
        const auto p = bell::products(sys);
        return s0(p) + s1(conn) <= 6 && s1(p) + s0(conn) <= 6;
    } else {
        const auto p = lg::products(sys);
        return s1({p[0], p[1], p[2], conn[0], conn[1], conn[2]}) <= 4;
    }
}

/// LP route: fix every connection's full 2x2 distribution from its marginals
/// and product expectation, then test for a joint distribution.
template <PairSystem S>
bool compatibility_lp(const S& sys, const std::array<Scalar, S::connection_count>& conn) {
    auto prog = detail::coupling_program(sys);
    constexpr std::size_t n = detail::atom_count<S>();
    const auto conns = S::connections();
    for (std::size_t k = 0; k < conns.size(); ++k) {
        const Scalar m1 = marginal(sys, conns[k].first), m2 = marginal(sys, conns[k].second);
        for (const auto& [a, b] : detail::outcomes) {
            std::vector<Scalar> row(n);
            for (std::size_t c = 0; c < n; ++c)
                if (detail::value_at(c, conns[k].first) == a && detail::value_at(c, conns[k].second) == b) row[c] = 1;
            prog.add_constraint(std::move(row), lp::Relation::Equal, Scalar((1 + a * m1 + b * m2 + a * b * conn[k]) / 4));
        }
    }
    return lp::is_feasible(prog);
}

/// Both verdicts on compatibility of the Bell connections with expectations
/// <A11A12>, <A21A22>, <B11B21>, <B12B22>; they must agree.
inline LemmaCheck check_bell_compatibility(const BellSystem& sys, const std::array<Scalar, 4>& conn) {
    return {compatibility_inequalities(sys, conn), compatibility_lp(sys, conn)};
}

/// Same for LG connection expectations <Q12Q13>, <Q21Q23>, <Q31Q32>.
inline LemmaCheck check_lg_compatibility(const LGSystem& sys, const std::array<Scalar, 3>& conn) {
    return {compatibility_inequalities(sys, conn), compatibility_lp(sys, conn)};
}

}  // namespace contextuality::oracle
