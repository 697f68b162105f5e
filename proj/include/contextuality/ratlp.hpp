#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "contextuality/errors.hpp"
#include "contextuality/scalar.hpp"

// Exact rational linear programming: two-phase primal simplex with Bland's
// rule on a dense tableau. Sizes in this library stay below a few hundred
// columns and a few dozen rows.
//
// Define CONTEXTUALITY_VERIFY_CERTIFICATES to have every solve re-check its
// dual (or Farkas) certificate before returning.

namespace contextuality::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize, Feasibility };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
    std::vector<Scalar> coefficients;
    Relation relation;
    Scalar bound;
};

struct LinearProgram {
    std::vector<std::string> variables;
    std::vector<bool> nonnegative;
    Sense sense = Sense::Feasibility;
    std::vector<Scalar> objective;
    std::vector<Constraint> constraints;

    std::size_t add_variable(std::string name, bool nonneg = true) {
        variables.push_back(std::move(name));
        nonnegative.push_back(nonneg);
        return variables.size() - 1;
    }

    void add_constraint(std::vector<Scalar> coefficients, Relation relation, Scalar bound) {
        constraints.push_back({std::move(coefficients), relation, std::move(bound)});
    }

    void minimize(std::vector<Scalar> c) {
        sense = Sense::Minimize;
        objective = std::move(c);
    }

    void maximize(std::vector<Scalar> c) {
        sense = Sense::Maximize;
        objective = std::move(c);
    }

    /// Throws MalformedProgram on length mismatches or duplicate names.
    void check() const {
        const std::size_t n = variables.size();
        if (nonnegative.size() != n) throw MalformedProgram("nonnegativity flags do not match variable count");
        std::set<std::string> seen;
        for (const auto& v : variables)
            if (!seen.insert(v).second) throw MalformedProgram("duplicate variable name \"" + v + "\"");
        if (sense != Sense::Feasibility && objective.size() != n)
            throw MalformedProgram("objective has " + std::to_string(objective.size()) + " coefficients for " +
                                   std::to_string(n) + " variables");
        for (std::size_t i = 0; i < constraints.size(); ++i)
            if (constraints[i].coefficients.size() != n)
                throw MalformedProgram("constraint " + std::to_string(i) + " has " +
                                       std::to_string(constraints[i].coefficients.size()) + " coefficients for " +
                                       std::to_string(n) + " variables");
    }
};

/// `certificate` holds one multiplier per constraint. For Optimal it is a dual
/// solution of the minimization form (objective negated when maximizing);
/// for Infeasible it is a Farkas ray. Empty for Unbounded.
struct Outcome {
    Status status = Status::Infeasible;
    Scalar optimum;
    std::vector<Scalar> witness;
    std::vector<Scalar> certificate;
};

inline bool satisfies(const LinearProgram& lp, const std::vector<Scalar>& x) {
    if (x.size() != lp.variables.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (lp.nonnegative[j] && x[j] < 0) return false;
    for (const auto& c : lp.constraints) {
        Scalar lhs = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (sgn(c.coefficients[j]) != 0) lhs += c.coefficients[j] * x[j];
        switch (c.relation) {
            case Relation::LessEqual:
                if (lhs > c.bound) return false;
                break;
            case Relation::Equal:
                if (lhs != c.bound) return false;
                break;
            case Relation::GreaterEqual:
                if (lhs < c.bound) return false;
                break;
        }
    }
    return true;
}

namespace detail {

/// y^T A per variable, and the sign restriction on each multiplier
/// (<= rows need y <= 0, >= rows need y >= 0 in minimization form).
inline bool multipliers_admissible(const LinearProgram& lp, const std::vector<Scalar>& y) {
    if (y.size() != lp.constraints.size()) return false;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (lp.constraints[i].relation == Relation::LessEqual && y[i] > 0) return false;
        if (lp.constraints[i].relation == Relation::GreaterEqual && y[i] < 0) return false;
    }
    return true;
}

inline std::vector<Scalar> transpose_times(const LinearProgram& lp, const std::vector<Scalar>& y) {
    std::vector<Scalar> out(lp.variables.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (sgn(y[i]) == 0) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += y[i] * lp.constraints[i].coefficients[j];
    }
    return out;
}

}  // namespace detail

/// Checks the certificate attached to `out` against `lp`: weak-duality
/// feasibility plus equal objective for Optimal, a Farkas ray for Infeasible.
inline bool verify_certificate(const LinearProgram& lp, const Outcome& out) {
    if (out.status == Status::Unbounded) return true;
    const auto& y = out.certificate;
    if (!detail::multipliers_admissible(lp, y)) return false;
    const auto yA = detail::transpose_times(lp, y);
    Scalar yb = 0;
    for (std::size_t i = 0; i < y.size(); ++i) yb += y[i] * lp.constraints[i].bound;

    if (out.status == Status::Infeasible) {
        for (std::size_t j = 0; j < yA.size(); ++j) {
            if (lp.nonnegative[j] ? yA[j] > 0 : yA[j] != 0) return false;
        }
        return yb > 0;
    }

    std::vector<Scalar> c(lp.variables.size());
    if (lp.sense == Sense::Minimize) c = lp.objective;
    if (lp.sense == Sense::Maximize)
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = -lp.objective[j];
    for (std::size_t j = 0; j < c.size(); ++j) {
        const Scalar reduced = c[j] - yA[j];
        if (lp.nonnegative[j] ? reduced < 0 : reduced != 0) return false;
    }
    Scalar primal = 0;
    for (std::size_t j = 0; j < c.size(); ++j) primal += c[j] * out.witness[j];
    return primal == yb;
}

namespace detail {

class Tableau {
public:
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    std::vector<std::size_t> basis;
    std::vector<Scalar> reduced;  // c - c_B B^-1 A
    Scalar value;                 // c_B B^-1 b

    void price(const std::vector<Scalar>& cost) {
        reduced = cost;
        value = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Scalar& cb = cost[basis[r]];
            if (sgn(cb) == 0) continue;
            for (std::size_t k = 0; k < reduced.size(); ++k)
                if (sgn(rows[r][k]) != 0) reduced[k] -= cb * rows[r][k];
            value += cb * rhs[r];
        }
    }

    void pivot(std::size_t r, std::size_t k) {
        auto& pr = rows[r];
        const Scalar inv = 1 / pr[k];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < pr.size(); ++j) {
            if (sgn(pr[j]) != 0) {
                pr[j] *= inv;
                nz.push_back(j);
            }
        }
        rhs[r] *= inv;
        Scalar f;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][k]) == 0) continue;
            f = rows[i][k];
            auto& row = rows[i];
            for (std::size_t j : nz) row[j] -= f * pr[j];
            rhs[i] -= f * rhs[r];
        }
        if (sgn(reduced[k]) != 0) {
            f = reduced[k];
            for (std::size_t j : nz) reduced[j] -= f * pr[j];
            value += f * rhs[r];
        }
        basis[r] = k;
    }

    /// Bland's rule. Returns false if the objective is unbounded below.
    bool optimize(const std::vector<bool>& may_enter) {
        for (;;) {
            std::size_t entering = reduced.size();
            for (std::size_t k = 0; k < reduced.size(); ++k) {
                if (may_enter[k] && reduced[k] < 0) {
                    entering = k;
                    break;
                }
            }
            if (entering == reduced.size()) return true;

            std::size_t leaving = rows.size();
            Scalar best_ratio;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r][entering] <= 0) continue;
                Scalar ratio = rhs[r] / rows[r][entering];
                if (leaving == rows.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis[r] < basis[leaving])) {
                    leaving = r;
                    best_ratio = std::move(ratio);
                }
            }
            if (leaving == rows.size()) return false;
            pivot(leaving, entering);
        }
    }
};

}  // namespace detail

/// Solves `lp` exactly. The witness is re-checked against every constraint
/// before returning; a failed check throws InternalInconsistency.
inline Outcome solve(const LinearProgram& lp) {
    lp.check();
    const std::size_t n_vars = lp.variables.size();
    const std::size_t m = lp.constraints.size();

    // Structural columns: one per nonnegative variable, two (x+, x-) per free one.
    std::vector<std::pair<std::size_t, std::size_t>> col_of(n_vars);
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t n_cols = 0;
    for (std::size_t j = 0; j < n_vars; ++j) {
        col_of[j].first = n_cols++;
        col_of[j].second = lp.nonnegative[j] ? none : n_cols++;
    }

    std::vector<int> row_sign(m, 1);
    std::vector<std::size_t> slack_col(m, none);
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.constraints[i].bound < 0) row_sign[i] = -1;
        if (lp.constraints[i].relation != Relation::Equal) slack_col[i] = n_cols++;
    }
    // A row starts with its slack basic when the slack enters with +1;
    // otherwise it gets an artificial.
    std::vector<std::size_t> initial_col(m, none);
    std::vector<bool> artificial;
    for (std::size_t i = 0; i < m; ++i) {
        const auto rel = lp.constraints[i].relation;
        const int slack_sign = rel == Relation::LessEqual ? 1 : -1;
        if (rel != Relation::Equal && slack_sign * row_sign[i] > 0) initial_col[i] = slack_col[i];
    }
    artificial.assign(n_cols, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (initial_col[i] == none) {
            initial_col[i] = n_cols++;
            artificial.push_back(true);
        }
    }

    detail::Tableau t;
    t.rows.assign(m, std::vector<Scalar>(n_cols));
    t.rhs.resize(m);
    t.basis = initial_col;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        auto& row = t.rows[i];
        for (std::size_t j = 0; j < n_vars; ++j) {
            if (sgn(c.coefficients[j]) == 0) continue;
            row[col_of[j].first] = row_sign[i] * c.coefficients[j];
            if (col_of[j].second != none) row[col_of[j].second] = -row_sign[i] * c.coefficients[j];
        }
        if (slack_col[i] != none) row[slack_col[i]] = row_sign[i] * (c.relation == Relation::LessEqual ? 1 : -1);
        if (artificial[initial_col[i]]) row[initial_col[i]] = 1;
        t.rhs[i] = row_sign[i] * c.bound;
    }

    const auto multipliers = [&](const std::vector<Scalar>& cost) {
        std::vector<Scalar> y(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = row_sign[i] * (cost[initial_col[i]] - t.reduced[initial_col[i]]);
        return y;
    };

    Outcome out;
    std::vector<bool> may_enter(n_cols, true);
    std::vector<Scalar> phase1_cost(n_cols);
    bool any_artificial = false;
    for (std::size_t k = 0; k < n_cols; ++k) {
        if (artificial[k]) {
            phase1_cost[k] = 1;
            any_artificial = true;
        }
    }
    if (any_artificial) {
        t.price(phase1_cost);
        t.optimize(may_enter);
        if (t.value > 0) {
            out.status = Status::Infeasible;
            out.certificate = multipliers(phase1_cost);
#ifdef CONTEXTUALITY_VERIFY_CERTIFICATES
            if (!verify_certificate(lp, out)) throw InternalInconsistency("Farkas certificate failed verification");
#endif
            return out;
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (!artificial[t.basis[r]]) continue;
            for (std::size_t k = 0; k < n_cols; ++k) {
                if (!artificial[k] && sgn(t.rows[r][k]) != 0) {
                    t.pivot(r, k);
                    break;
                }
            }
            // A row with no usable pivot is linearly dependent and stays inert.
        }
        for (std::size_t k = 0; k < n_cols; ++k)
            if (artificial[k]) may_enter[k] = false;
    }

    std::vector<Scalar> cost(n_cols);
    if (lp.sense != Sense::Feasibility) {
        const int dir = lp.sense == Sense::Maximize ? -1 : 1;
        for (std::size_t j = 0; j < n_vars; ++j) {
            cost[col_of[j].first] = dir * lp.objective[j];
            if (col_of[j].second != none) cost[col_of[j].second] = -dir * lp.objective[j];
        }
    }
    t.price(cost);
    if (!t.optimize(may_enter)) {
        out.status = Status::Unbounded;
        return out;
    }

    std::vector<Scalar> x_col(n_cols);
    for (std::size_t r = 0; r < m; ++r) x_col[t.basis[r]] = t.rhs[r];
    out.witness.resize(n_vars);
    for (std::size_t j = 0; j < n_vars; ++j) {
        out.witness[j] = x_col[col_of[j].first];
        if (col_of[j].second != none) out.witness[j] -= x_col[col_of[j].second];
    }
    if (!satisfies(lp, out.witness)) throw InternalInconsistency("simplex witness violates a constraint");

    out.status = Status::Optimal;
    out.optimum = 0;
    if (lp.sense != Sense::Feasibility)
        for (std::size_t j = 0; j < n_vars; ++j) out.optimum += lp.objective[j] * out.witness[j];
    out.certificate = multipliers(cost);
#ifdef CONTEXTUALITY_VERIFY_CERTIFICATES
    if (!verify_certificate(lp, out)) throw InternalInconsistency("dual certificate failed verification");
#endif
    return out;
}

inline bool is_feasible(LinearProgram lp) {
    lp.sense = Sense::Feasibility;
    lp.objective.clear();
    return solve(lp).status != Status::Infeasible;
}

}  // namespace contextuality::lp
