#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "contextuality/bell.hpp"
#include "contextuality/core.hpp"
#include "contextuality/lg.hpp"
#include "contextuality/ratlp.hpp"

namespace contextuality::fme {

enum class RowKind { LessEqual, Equal };

/// coefficients . x  (<= | =)  bound
struct Row {
    std::vector<Scalar> coefficients;
    RowKind kind = RowKind::LessEqual;
    Scalar bound;

    bool vacuous() const {
        return std::all_of(coefficients.begin(), coefficients.end(), [](const Scalar& c) { return sgn(c) == 0; });
    }
    friend bool operator==(const Row&, const Row&) = default;
};

struct InequalitySystem {
    std::vector<std::string> variables;
    std::vector<Row> rows;
    /// Variable-free rows that held trivially and were dropped along the way.
    std::size_t vacuous_dropped = 0;

    std::size_t index_of(const std::string& name) const {
        const auto it = std::find(variables.begin(), variables.end(), name);
        if (it == variables.end()) throw UnknownVariable("no variable named \"" + name + "\"");
        return static_cast<std::size_t>(it - variables.begin());
    }

    void add(std::vector<Scalar> coefficients, RowKind kind, Scalar bound) {
        if (coefficients.size() != variables.size())
            throw MalformedProgram("row has " + std::to_string(coefficients.size()) + " coefficients for " +
                                   std::to_string(variables.size()) + " variables");
        rows.push_back({std::move(coefficients), kind, std::move(bound)});
    }

    bool satisfied_by(const std::vector<Scalar>& x) const {
        for (const auto& r : rows) {
            Scalar lhs = 0;
            for (std::size_t j = 0; j < x.size(); ++j) lhs += r.coefficients[j] * x[j];
            if (r.kind == RowKind::Equal ? lhs != r.bound : lhs > r.bound) return false;
        }
        return true;
    }
};

/// Linear program over the system with every variable free.
inline lp::LinearProgram to_program(const InequalitySystem& sys) {
    lp::LinearProgram prog;
    for (const auto& v : sys.variables) prog.add_variable(v, false);
    for (const auto& r : sys.rows)
        prog.add_constraint(r.coefficients, r.kind == RowKind::Equal ? lp::Relation::Equal : lp::Relation::LessEqual,
                            r.bound);
    return prog;
}

namespace detail {

inline bool trivially_true(const Row& r) { return r.kind == RowKind::Equal ? r.bound == 0 : r.bound >= 0; }

/// Scales inequalities so the first nonzero coefficient has magnitude 1, drops
/// variable-free rows that hold, and keeps only the tightest of parallel rows.
inline void tidy(InequalitySystem& sys) {
    std::vector<Row> kept;
    std::map<std::vector<Scalar>, std::size_t> seen;
    for (auto r : sys.rows) {
        if (r.vacuous()) {
            if (trivially_true(r)) {
                ++sys.vacuous_dropped;
                continue;
            }
            kept.push_back(std::move(r));
            continue;
        }
        if (r.kind == RowKind::Equal) {
            kept.push_back(std::move(r));
            continue;
        }
        const auto lead = std::find_if(r.coefficients.begin(), r.coefficients.end(),
                                       [](const Scalar& c) { return sgn(c) != 0; });
        const Scalar scale = 1 / abs_of(*lead);
        for (auto& c : r.coefficients) c *= scale;
        r.bound *= scale;
        if (auto it = seen.find(r.coefficients); it != seen.end()) {
            if (r.bound < kept[it->second].bound) kept[it->second].bound = r.bound;
            continue;
        }
        seen.emplace(r.coefficients, kept.size());
        kept.push_back(std::move(r));
    }
    sys.rows = std::move(kept);
}

inline std::vector<Scalar> without(const std::vector<Scalar>& v, std::size_t k) {
    std::vector<Scalar> out;
    out.reserve(v.size() - 1);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (j != k) out.push_back(v[j]);
    return out;
}

}  // namespace detail

/// Projects out `var` by pairing every upper bound on it with every lower
/// bound. The result is feasible at a point iff the input is feasible there
/// for some value of `var`. Equalities must not involve `var`.
inline InequalitySystem eliminate(const InequalitySystem& in, const std::string& var) {
    const std::size_t k = in.index_of(var);
    std::vector<const Row*> upper, lower;
    InequalitySystem out;
    out.vacuous_dropped = in.vacuous_dropped;
    out.variables = in.variables;
    out.variables.erase(out.variables.begin() + static_cast<std::ptrdiff_t>(k));

    for (const auto& r : in.rows) {
        const int s = sgn(r.coefficients[k]);
        if (s != 0 && r.kind == RowKind::Equal)
            throw UnusablePivot("\"" + var + "\" appears in an equality; substitute it out first");
        if (s > 0)
            upper.push_back(&r);
        else if (s < 0)
            lower.push_back(&r);
        else
            out.rows.push_back({detail::without(r.coefficients, k), r.kind, r.bound});
    }
    for (const Row* u : upper) {
        for (const Row* l : lower) {
            const Scalar wu = -l->coefficients[k];  // > 0
            const Scalar wl = u->coefficients[k];   // > 0
            Row combined;
            combined.coefficients.reserve(in.variables.size() - 1);
            for (std::size_t j = 0; j < in.variables.size(); ++j)
                if (j != k) combined.coefficients.push_back(wu * u->coefficients[j] + wl * l->coefficients[j]);
            combined.bound = wu * u->bound + wl * l->bound;
            out.rows.push_back(std::move(combined));
        }
    }
    detail::tidy(out);
    return out;
}

/// Solves equality row `row_index` for `var` and substitutes the result into
/// every other row. The equality row and `var` disappear from the output.
inline InequalitySystem substitute_equality(const InequalitySystem& in, std::size_t row_index, const std::string& var) {
    const std::size_t k = in.index_of(var);
    if (row_index >= in.rows.size()) throw UnusablePivot("row index " + std::to_string(row_index) + " out of range");
    const Row& eq = in.rows[row_index];
    if (eq.kind != RowKind::Equal) throw UnusablePivot("row " + std::to_string(row_index) + " is not an equality");
    if (sgn(eq.coefficients[k]) == 0)
        throw UnusablePivot("row " + std::to_string(row_index) + " has a zero coefficient on \"" + var + "\"");

    InequalitySystem out;
    out.vacuous_dropped = in.vacuous_dropped;
    out.variables = in.variables;
    out.variables.erase(out.variables.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t i = 0; i < in.rows.size(); ++i) {
        if (i == row_index) continue;
        const Row& r = in.rows[i];
        const Scalar f = r.coefficients[k] / eq.coefficients[k];
        Row next{{}, r.kind, r.bound - f * eq.bound};
        for (std::size_t j = 0; j < in.variables.size(); ++j)
            if (j != k) next.coefficients.push_back(r.coefficients[j] - f * eq.coefficients[j]);
        out.rows.push_back(std::move(next));
    }
    return out;
}

/// Value of `var` (column `k` of `eq`) given the other variables in order.
inline Scalar back_solve(const Row& eq, std::size_t k, const std::vector<Scalar>& others) {
    Scalar rest = eq.bound;
    for (std::size_t j = 0, o = 0; j < eq.coefficients.size(); ++j) {
        if (j == k) continue;
        rest -= eq.coefficients[j] * others[o++];
    }
    return rest / eq.coefficients[k];
}

/// Drops, one at a time, each inequality implied by the rows that remain.
/// An empty solution set collapses to the single row 0 <= -1.
inline InequalitySystem remove_redundant(const InequalitySystem& in) {
    InequalitySystem sys = in;
    detail::tidy(sys);
    if (!lp::is_feasible(to_program(sys))) {
        InequalitySystem empty;
        empty.variables = sys.variables;
        empty.vacuous_dropped = sys.vacuous_dropped;
        empty.rows.push_back({std::vector<Scalar>(sys.variables.size()), RowKind::LessEqual, Scalar(-1)});
        return empty;
    }
    std::size_t i = 0;
    while (i < sys.rows.size()) {
        const Row& r = sys.rows[i];
        if (r.kind == RowKind::Equal) {
            ++i;
            continue;
        }
        InequalitySystem others;
        others.variables = sys.variables;
        for (std::size_t j = 0; j < sys.rows.size(); ++j)
            if (j != i) others.rows.push_back(sys.rows[j]);
        auto prog = to_program(others);
        prog.maximize(r.coefficients);
        const auto res = lp::solve(prog);
        if (res.status == lp::Status::Optimal && res.optimum <= r.bound)
            sys.rows.erase(sys.rows.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return sys;
}

inline std::string render(const InequalitySystem& sys) {
    std::ostringstream os;
    for (const auto& r : sys.rows) {
        bool first = true;
        for (std::size_t j = 0; j < sys.variables.size(); ++j) {
            const Scalar& c = r.coefficients[j];
            if (sgn(c) == 0) continue;
            const Scalar mag = abs_of(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            if (mag != 1) os << to_string(mag) << "*";
            os << sys.variables[j];
            first = false;
        }
        if (first) os << "0";
        os << (r.kind == RowKind::Equal ? " = " : " <= ") << to_string(r.bound) << "\n";
    }
    return os.str();
}

/// Result of projecting the compatibility system onto the total mismatch.
struct Derivation {
    InequalitySystem instantiated;  // before any elimination
    InequalitySystem projected;     // over the single variable "delta"
    Interval interval;
};

/// Compatibility rows over connection expectations for the observed numbers of
/// `sys`: every odd-parity sign pattern over (products, connections), plus the
/// Fréchet window of each connection with both sides of each |.| expanded.
/// Variable 0 is "delta"; it appears in no row yet.
template <PairSystem S>
InequalitySystem compatibility_system(const S& sys) {
    constexpr std::size_t np = S::pair_count;
    constexpr std::size_t nc = S::connection_count;
    const Scalar limit = std::is_same_v<S, BellSystem> ? 6 : 4;

    InequalitySystem out;
    out.variables.push_back("delta");
    for (const auto name : S::connection_names()) out.variables.push_back(std::string(name));

    std::array<Scalar, np> products;
    for (std::size_t k = 0; k < np; ++k) products[k] = sys.pairs[k].xy();

    for (unsigned mask = 0; mask < (1U << (np + nc)); ++mask) {
        if (std::popcount(mask) % 2 == 0) continue;
        Scalar constant = 0;
        for (std::size_t k = 0; k < np; ++k) constant += (mask >> k) & 1U ? Scalar(-products[k]) : products[k];
        std::vector<Scalar> coeffs(1 + nc);
        for (std::size_t k = 0; k < nc; ++k) coeffs[1 + k] = (mask >> (np + k)) & 1U ? -1 : 1;
        out.add(std::move(coeffs), RowKind::LessEqual, limit - constant);
    }

    const auto conns = S::connections();
    for (std::size_t k = 0; k < nc; ++k) {
        const Scalar m1 = marginal(sys, conns[k].first), m2 = marginal(sys, conns[k].second);
        std::vector<Scalar> up(1 + nc), down(1 + nc);
        up[1 + k] = 1;
        down[1 + k] = -1;
        // e <= 1 - |m1 - m2|
        out.add(up, RowKind::LessEqual, 1 - (m1 - m2));
        out.add(up, RowKind::LessEqual, 1 + (m1 - m2));
        // -e <= 1 - |m1 + m2|
        out.add(down, RowKind::LessEqual, 1 - (m1 + m2));
        out.add(down, RowKind::LessEqual, 1 + (m1 + m2));
    }
    return out;
}

/// Derives the range of the total mismatch by elimination: substitute the
/// definition delta = n/2 - (1/2) sum of connection expectations for the first
/// connection, then eliminate the others one at a time, pruning redundant
/// rows by LP after each step.
template <PairSystem S>
Derivation derive(const S& sys) {
    constexpr std::size_t nc = S::connection_count;
    Derivation d;
    d.instantiated = compatibility_system(sys);

    InequalitySystem work = d.instantiated;
    std::vector<Scalar> definition(1 + nc, Scalar(1, 2));
    definition[0] = 1;
    work.add(std::move(definition), RowKind::Equal, make_scalar(static_cast<long>(nc), 2));
    work = substitute_equality(work, work.rows.size() - 1, work.variables[1]);
    work = remove_redundant(work);
    while (work.variables.size() > 1) {
        work = eliminate(work, work.variables[1]);
        work = remove_redundant(work);
    }
    d.projected = work;

    bool has_lower = false, has_upper = false;
    for (const auto& r : work.rows) {
        const Scalar& a = r.coefficients[0];
        if (sgn(a) == 0) {
            if (r.bound < 0) throw InternalInconsistency("compatibility system is infeasible; the input is not valid");
            continue;
        }
        const Scalar v = r.bound / a;
        if (a > 0 || r.kind == RowKind::Equal) {
            d.interval.upper = has_upper ? min_of(d.interval.upper, v) : v;
            has_upper = true;
        }
        if (a < 0 || r.kind == RowKind::Equal) {
            d.interval.lower = has_lower ? max_of(d.interval.lower, v) : v;
            has_lower = true;
        }
    }
    if (!has_lower || !has_upper) throw InternalInconsistency("projected system leaves delta unbounded");
    return d;
}

template <PairSystem S>
Interval derive_delta_bounds(const S& sys) {
    return derive(sys).interval;
}

}  // namespace contextuality::fme
