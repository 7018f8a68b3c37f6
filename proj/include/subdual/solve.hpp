#ifndef SUBDUAL_SOLVE_HPP
#define SUBDUAL_SOLVE_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "subdual/errors.hpp"
#include "subdual/model.hpp"
#include "subdual/simplex.hpp"

namespace subdual {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct MipSolution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<Rational> x; // integer block, entries integral when Optimal
    std::vector<Rational> y; // continuous block
    Rational objective = 0;
};

namespace detail {

inline LpProblem lp_from_mip(const ConicMip& mip, const std::vector<Bounds>& int_bounds) {
    LpProblem p;
    const std::size_t n1 = mip.n1();
    const std::size_t n2 = mip.n2();
    p.cost = mip.c;
    p.cost.insert(p.cost.end(), mip.d.begin(), mip.d.end());
    p.rows.resize(mip.num_rows);
    for (std::size_t i = 0; i < mip.num_rows; ++i) {
        p.rows[i] = mip.A[i];
        p.rows[i].insert(p.rows[i].end(), mip.G[i].begin(), mip.G[i].end());
    }
    p.rhs = mip.b;
    p.sense = mip.row_sense;
    p.lower.resize(n1 + n2);
    p.upper.resize(n1 + n2);
    for (std::size_t j = 0; j < n1; ++j) {
        p.lower[j] = int_bounds[j].lower;
        p.upper[j] = int_bounds[j].upper;
    }
    for (std::size_t j = 0; j < n2; ++j) {
        p.lower[n1 + j] = mip.cont_bounds[j].lower;
        p.upper[n1 + j] = mip.cont_bounds[j].upper;
    }
    return p;
}

inline void require_solvable(const ConicMip& mip) {
    ValidationReport report = validate(mip);
    if (!report.empty()) throw ShapeMismatch("model invalid: " + report.front());
    if (!all_bounds_finite(mip)) throw UnboundedDomain("solving requires finite variable bounds");
}

/// Substitution check of rows and bounds; solver results are verified before
/// they are handed back.
inline bool satisfies(const ConicMip& mip, const std::vector<Rational>& x, const std::vector<Rational>& y) {
    for (std::size_t j = 0; j < mip.n1(); ++j)
        if (!mip.int_bounds[j].contains(x[j]) || !is_integer(x[j])) return false;
    for (std::size_t j = 0; j < mip.n2(); ++j)
        if (!mip.cont_bounds[j].contains(y[j])) return false;
    for (std::size_t i = 0; i < mip.num_rows; ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < mip.n1(); ++j)
            if (mip.A[i][j] != 0) lhs += mip.A[i][j] * x[j];
        for (std::size_t j = 0; j < mip.n2(); ++j)
            if (mip.G[i][j] != 0) lhs += mip.G[i][j] * y[j];
        if (mip.row_sense[i] == RowSense::Eq ? lhs != mip.b[i] : lhs < mip.b[i]) return false;
    }
    return true;
}

} // namespace detail

/// Exact LP solve for a model with no integer block.
inline MipSolution solve_lp(const ConicMip& lp) {
    if (lp.n1() != 0) throw NotRelaxed("solve_lp requires a model with no integer variables");
    detail::require_solvable(lp);
    LpResult r = solve_lp_problem(detail::lp_from_mip(lp, {}));
    MipSolution sol;
    sol.status = r.status == LpStatus::Optimal     ? SolveStatus::Optimal
                 : r.status == LpStatus::Infeasible ? SolveStatus::Infeasible
                                                    : SolveStatus::Unbounded;
    if (sol.status == SolveStatus::Optimal) {
        sol.y = std::move(r.x);
        sol.objective = r.objective;
    }
    return sol;
}

/// Exact branch and bound: LP bounding, most-fractional branching (ties to the
/// lowest column index), depth-first with the round-nearest child explored
/// first. The optimal objective value does not depend on the branching order.
inline MipSolution solve_mip(const ConicMip& mip) {
    detail::require_solvable(mip);
    const std::size_t n1 = mip.n1();

    struct Node {
        std::vector<Bounds> int_bounds;
    };
    std::vector<Node> stack;
    stack.push_back({mip.int_bounds});

    bool have_incumbent = false;
    MipSolution best;

    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();

        LpResult lp = solve_lp_problem(detail::lp_from_mip(mip, node.int_bounds));
        if (lp.status != LpStatus::Optimal) continue;
        if (have_incumbent && lp.objective >= best.objective) continue;

        // most-fractional integer column
        std::size_t branch_col = n1;
        Rational branch_score = 0;
        for (std::size_t j = 0; j < n1; ++j) {
            Rational dist = frac_distance(lp.x[j]);
            if (dist > branch_score) {
                branch_score = dist;
                branch_col = j;
            }
        }

        if (branch_col == n1) { // integral solution
            best.status = SolveStatus::Optimal;
            best.x.assign(lp.x.begin(), lp.x.begin() + n1);
            best.y.assign(lp.x.begin() + n1, lp.x.end());
            best.objective = lp.objective;
            have_incumbent = true;
            continue;
        }

        const Rational v = lp.x[branch_col];
        Node down = node, up = node;
        down.int_bounds[branch_col].upper = Rational(floor_rat(v));
        up.int_bounds[branch_col].lower = Rational(ceil_rat(v));
        // dive toward the nearer integer first (stack pops last pushed)
        if (v - Rational(floor_rat(v)) <= Rational(1, 2)) {
            stack.push_back(std::move(up));
            stack.push_back(std::move(down));
        } else {
            stack.push_back(std::move(down));
            stack.push_back(std::move(up));
        }
    }

    if (!have_incumbent) {
        best.status = SolveStatus::Infeasible;
        return best;
    }
    if (!detail::satisfies(mip, best.x, best.y)) throw Error("internal: incumbent fails substitution check");
    return best;
}

/// Exact optimal values along rhs offsets b + t * direction. Infeasible
/// samples are recorded as data, not errors, so partial value functions stay
/// producible.
struct ValueFunctionSamples {
    std::vector<Rational> base_rhs;
    std::vector<Rational> direction;
    std::vector<Rational> offsets;               // strictly increasing
    std::vector<std::optional<Rational>> values; // nullopt = infeasible at that offset
};

inline ValueFunctionSamples value_sweep(const ConicMip& mip, const std::vector<Rational>& direction,
                                        const std::vector<Rational>& offsets) {
    if (direction.size() != mip.num_rows)
        throw ShapeMismatch("direction length " + std::to_string(direction.size()) + " != num_rows " +
                            std::to_string(mip.num_rows));
    for (std::size_t i = 1; i < offsets.size(); ++i)
        if (!(offsets[i - 1] < offsets[i]))
            throw ShapeMismatch("offsets must be strictly increasing");

    ValueFunctionSamples samples;
    samples.base_rhs = mip.b;
    samples.direction = direction;
    samples.offsets = offsets;
    samples.values.reserve(offsets.size());
    for (const Rational& t : offsets) {
        ConicMip shifted = mip;
        for (std::size_t i = 0; i < mip.num_rows; ++i) shifted.b[i] = mip.b[i] + t * direction[i];
        MipSolution sol = solve_mip(shifted);
        if (sol.status == SolveStatus::Optimal)
            samples.values.emplace_back(sol.objective);
        else
            samples.values.emplace_back(std::nullopt);
    }
    return samples;
}

} // namespace subdual

#endif // SUBDUAL_SOLVE_HPP
