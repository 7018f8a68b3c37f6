#ifndef SUBDUAL_NICE_HPP
#define SUBDUAL_NICE_HPP

#include <optional>

#include "subdual/model.hpp"
#include "subdual/solve.hpp"

namespace subdual {

/// Checklist for the three niceness conditions: (A) the model is feasible,
/// (B) the dual of the continuous relaxation is feasible, (C) the objective
/// has finitely many non-differentiable points. (C) is a structural flag:
/// this library only builds linear objectives, for which it always holds.
struct NiceReport {
    bool primal_feasible = false;
    std::optional<MipSolution> witness; // feasible point when (A) holds
    bool relaxation_dual_feasible = false;
    bool objective_pwl = true;
    bool is_nice = false;
};

namespace detail {

/// Feasibility of the relaxation's dual system
///
///   sum_i A_ij lambda_i  (<= or =)  c_j   per integer column j
///   sum_i G_ik lambda_i  (<= or =)  d_k   per continuous column k
///   lambda_i >= 0 on GreaterEq rows, free on Eq rows
///
/// A column whose lower bound is >= 0 contributes an inequality (its
/// nonnegativity absorbs slack); a column that may go negative contributes an
/// equality, as a free variable would. Finite caps are not dualized: the dual
/// in question is the one of the conic template, which carries no boxes.
/// Multipliers are searched inside a large desk-scale box so that the check
/// runs as a phase-1 LP.
inline bool relaxation_dual_feasible(const ConicMip& mip) {
    static const Rational kMultiplierCap = Rational(Int(1) << 20);
    LpProblem dual;
    const std::size_t m = mip.num_rows;
    dual.cost.assign(m, Rational(0)); // pure feasibility
    dual.lower.resize(m);
    dual.upper.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        dual.lower[i] = mip.row_sense[i] == RowSense::GreaterEq ? Rational(0) : Rational(-kMultiplierCap);
        dual.upper[i] = kMultiplierCap;
    }
    auto add_column_row = [&](const std::vector<Rational>& column, const Rational& bound, bool sign_restricted) {
        if (sign_restricted) {
            // A'lambda <= c, encoded as -A'lambda >= -c
            std::vector<Rational> row(m);
            for (std::size_t i = 0; i < m; ++i) row[i] = -column[i];
            dual.rows.push_back(std::move(row));
            dual.rhs.push_back(-bound);
            dual.sense.push_back(RowSense::GreaterEq);
        } else {
            dual.rows.push_back(column);
            dual.rhs.push_back(bound);
            dual.sense.push_back(RowSense::Eq);
        }
    };
    for (std::size_t j = 0; j < mip.n1(); ++j) {
        std::vector<Rational> col(m);
        for (std::size_t i = 0; i < m; ++i) col[i] = mip.A[i][j];
        add_column_row(col, mip.c[j], mip.int_bounds[j].lower >= 0);
    }
    for (std::size_t k = 0; k < mip.n2(); ++k) {
        std::vector<Rational> col(m);
        for (std::size_t i = 0; i < m; ++i) col[i] = mip.G[i][k];
        add_column_row(col, mip.d[k], mip.cont_bounds[k].lower >= 0);
    }
    return solve_lp_problem(dual).status == LpStatus::Optimal;
}

} // namespace detail

/// Niceness checklist. (A) runs a feasibility probe (branch and bound with a
/// zero objective), (B) a phase-1 LP on the relaxation's dual system. All
/// variable bounds must be finite.
inline NiceReport check_nice(const ConicMip& mip) {
    if (!all_bounds_finite(mip)) throw UnboundedDomain("check_nice requires finite variable bounds");
    NiceReport report;

    ConicMip probe = mip;
    probe.c.assign(probe.c.size(), Rational(0));
    probe.d.assign(probe.d.size(), Rational(0));
    MipSolution feas = solve_mip(probe);
    report.primal_feasible = feas.status == SolveStatus::Optimal;
    if (report.primal_feasible) report.witness = feas;

    report.relaxation_dual_feasible = detail::relaxation_dual_feasible(mip);
    report.objective_pwl = true;
    report.is_nice = report.primal_feasible && report.relaxation_dual_feasible && report.objective_pwl;
    return report;
}

} // namespace subdual

#endif // SUBDUAL_NICE_HPP
