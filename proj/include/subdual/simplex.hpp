#ifndef SUBDUAL_SIMPLEX_HPP
#define SUBDUAL_SIMPLEX_HPP

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

#include "subdual/model.hpp"
#include "subdual/rational.hpp"

namespace subdual {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Box-constrained LP in row form:
///   min cost'z   s.t.  rows[i]'z {>=,=} rhs[i],  lower <= z <= upper.
/// Lower bounds must be finite; upper bounds may be absent (+inf).
struct LpProblem {
    std::vector<Rational> cost;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<RowSense> sense;
    std::vector<Rational> lower;
    std::vector<std::optional<Rational>> upper;

    std::size_t num_vars() const { return cost.size(); }
    std::size_t num_rows() const { return rows.size(); }
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> x;
    Rational objective = 0;
};

namespace detail {

/// Two phase primal simplex on the bounded-variable tableau, Bland's rule
/// throughout (entering: lowest eligible index; leaving: lowest variable index
/// among the ratio-test minimizers, the entering variable's own bound range
/// counting as a candidate). Exact rational arithmetic, no tolerances.
class SimplexTableau {
public:
    explicit SimplexTableau(const LpProblem& p) : m_(p.num_rows()) {
        const std::size_t n = p.num_vars();
        // structural columns
        for (std::size_t j = 0; j < n; ++j) addColumn(p.lower[j], p.upper[j]);
        for (std::size_t i = 0; i < m_; ++i) {
            tab_.emplace_back(n, Rational(0));
            for (std::size_t j = 0; j < n; ++j) tab_[i][j] = p.rows[i][j];
        }
        // slack for every >= row:  a'x - s = b, s >= 0
        for (std::size_t i = 0; i < m_; ++i) {
            if (p.sense[i] == RowSense::GreaterEq) {
                addColumn(Rational(0), std::nullopt);
                for (std::size_t r = 0; r < m_; ++r) tab_[r].push_back(r == i ? Rational(-1) : Rational(0));
            }
        }
        first_artificial_ = ncols();

        // nonbasic start: every column at its lower bound
        state_.assign(ncols(), State::AtLower);
        basic_.assign(m_, 0);
        beta_.assign(m_, Rational(0));

        std::vector<Rational> residual = p.rhs;
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < ncols(); ++j)
                if (tab_[i][j] != 0 && lower_[j] != 0) residual[i] -= tab_[i][j] * lower_[j];

        // basis: the slack where it is feasible, otherwise an artificial
        std::size_t slack_index = n;
        for (std::size_t i = 0; i < m_; ++i) {
            bool use_slack = false;
            std::size_t slack_col = 0;
            if (p.sense[i] == RowSense::GreaterEq) {
                slack_col = slack_index++;
                use_slack = residual[i] <= 0; // slack value = -residual
            }
            if (use_slack) {
                // scale row so the basic column carries +1
                negateRow(i, residual);
                basic_[i] = slack_col;
                beta_[i] = residual[i]; // = -old residual >= 0
            } else {
                if (residual[i] < 0) negateRow(i, residual);
                std::size_t art = addColumn(Rational(0), Rational(0)); // fixed after phase 1
                artificial_.push_back(art);
                for (std::size_t r = 0; r < m_; ++r) tab_[r].push_back(r == i ? Rational(1) : Rational(0));
                basic_[i] = art;
                beta_[i] = residual[i];
                state_.push_back(State::Basic);
            }
            state_[basic_[i]] = State::Basic;
        }
    }

    LpStatus run(const std::vector<Rational>& structural_cost) {
        // phase 1: minimize total artificial value
        std::vector<Rational> phase1(ncols(), Rational(0));
        for (std::size_t a : artificial_) phase1[a] = 1;
        artificial_free_ = true; // artificials may move within [0, inf) in phase 1
        if (pivotLoop(phase1) == LpStatus::Unbounded) return LpStatus::Unbounded;
        Rational infeas = 0;
        for (std::size_t a : artificial_) infeas += valueOf(a);
        if (infeas != 0) return LpStatus::Infeasible;
        driveOutArtificials();
        artificial_free_ = false;

        // phase 2: original costs (zero on slacks and artificials)
        std::vector<Rational> cost(ncols(), Rational(0));
        for (std::size_t j = 0; j < structural_cost.size(); ++j) cost[j] = structural_cost[j];
        return pivotLoop(cost);
    }

    Rational valueOf(std::size_t col) const {
        if (state_[col] == State::Basic) {
            for (std::size_t i = 0; i < m_; ++i)
                if (basic_[i] == col) return beta_[i];
        }
        if (state_[col] == State::AtUpper) return *upper_[col];
        return lower_[col];
    }

private:
    enum class State { Basic, AtLower, AtUpper };

    std::size_t ncols() const { return lower_.size(); }

    std::size_t addColumn(const Rational& lo, std::optional<Rational> up) {
        lower_.push_back(lo);
        upper_.push_back(std::move(up));
        return lower_.size() - 1;
    }

    void negateRow(std::size_t i, std::vector<Rational>& residual) {
        for (Rational& v : tab_[i]) v = -v;
        residual[i] = -residual[i];
    }

    // Artificials run with bounds [0, inf) during phase 1 and are pinned to
    // [0, 0] afterwards; everything else uses its stored interval.
    bool hasUpper(std::size_t col) const {
        if (artificial_free_ && col >= first_artificial_) return false;
        return upper_[col].has_value();
    }

    LpStatus pivotLoop(const std::vector<Rational>& cost) {
        for (;;) {
            // multipliers y_i = cost of basic variable in row i
            std::vector<Rational> y(m_);
            for (std::size_t i = 0; i < m_; ++i) y[i] = cost[basic_[i]];

            // Bland entering: smallest-index improving nonbasic column
            std::size_t enter = ncols();
            int enter_dir = 0;
            for (std::size_t j = 0; j < ncols(); ++j) {
                if (state_[j] == State::Basic) continue;
                if (hasUpper(j) && *upper_[j] == lower_[j]) continue; // fixed column
                Rational red = cost[j];
                for (std::size_t i = 0; i < m_; ++i)
                    if (tab_[i][j] != 0 && y[i] != 0) red -= y[i] * tab_[i][j];
                if (state_[j] == State::AtLower && red < 0) {
                    enter = j;
                    enter_dir = 1;
                    break;
                }
                if (state_[j] == State::AtUpper && red > 0) {
                    enter = j;
                    enter_dir = -1;
                    break;
                }
            }
            if (enter == ncols()) return LpStatus::Optimal;

            // ratio test
            bool have_t = false;
            Rational t = 0;
            std::size_t leave_var = 0; // variable index; == enter means bound flip
            if (hasUpper(enter)) {
                t = *upper_[enter] - lower_[enter];
                leave_var = enter;
                have_t = true;
            }
            std::size_t leave_row = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                Rational w = tab_[i][enter] * enter_dir;
                if (w == 0) continue;
                Rational limit;
                if (w > 0) {
                    limit = (beta_[i] - lower_[basic_[i]]) / w;
                } else if (hasUpper(basic_[i])) {
                    limit = (*upper_[basic_[i]] - beta_[i]) / -w;
                } else {
                    continue;
                }
                if (!have_t || limit < t || (limit == t && basic_[i] < leave_var)) {
                    have_t = true;
                    t = limit;
                    leave_var = basic_[i];
                    leave_row = i;
                }
            }
            if (!have_t) return LpStatus::Unbounded;

            if (leave_var == enter) {
                // bound flip, basis unchanged
                for (std::size_t i = 0; i < m_; ++i)
                    if (tab_[i][enter] != 0) beta_[i] -= Rational(enter_dir) * t * tab_[i][enter];
                state_[enter] = (enter_dir == 1) ? State::AtUpper : State::AtLower;
                continue;
            }

            Rational enter_value =
                (state_[enter] == State::AtLower ? lower_[enter] : *upper_[enter]) + Rational(enter_dir) * t;
            for (std::size_t i = 0; i < m_; ++i)
                if (i != leave_row && tab_[i][enter] != 0) beta_[i] -= Rational(enter_dir) * t * tab_[i][enter];

            // the leaving variable lands on the bound it ran into
            state_[leave_var] = (tab_[leave_row][enter] * enter_dir > 0) ? State::AtLower : State::AtUpper;
            pivot(leave_row, enter);
            basic_[leave_row] = enter;
            beta_[leave_row] = enter_value;
            state_[enter] = State::Basic;
        }
    }

    void pivot(std::size_t prow, std::size_t pcol) {
        const Rational piv = tab_[prow][pcol];
        assert(piv != 0);
        if (piv != 1)
            for (Rational& v : tab_[prow]) v /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == prow) continue;
            const Rational factor = tab_[i][pcol];
            if (factor == 0) continue;
            for (std::size_t j = 0; j < ncols(); ++j)
                if (tab_[prow][j] != 0) tab_[i][j] -= factor * tab_[prow][j];
        }
    }

    /// Degenerate pivots that remove zero-valued artificials from the basis
    /// where the row allows it; rows with no real column left are redundant
    /// and keep their pinned artificial.
    void driveOutArtificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basic_[i] < first_artificial_) continue;
            assert(beta_[i] == 0);
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (state_[j] == State::Basic || tab_[i][j] == 0) continue;
                std::size_t art = basic_[i];
                state_[art] = State::AtLower;
                pivot(i, j);
                basic_[i] = j;
                beta_[i] = valueOf(j); // zero-length step: stays at its bound
                state_[j] = State::Basic;
                break;
            }
        }
    }

    std::size_t m_;
    std::vector<std::vector<Rational>> tab_;
    std::vector<Rational> lower_;
    std::vector<std::optional<Rational>> upper_;
    std::vector<std::size_t> basic_;
    std::vector<Rational> beta_;
    std::vector<State> state_;
    std::vector<std::size_t> artificial_;
    std::size_t first_artificial_ = 0;
    bool artificial_free_ = false;
};

} // namespace detail

inline LpResult solve_lp_problem(const LpProblem& p) {
    detail::SimplexTableau tableau(p);
    LpResult result;
    result.status = tableau.run(p.cost);
    if (result.status != LpStatus::Optimal) return result;
    result.x.resize(p.num_vars());
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
        result.x[j] = tableau.valueOf(j);
        result.objective += p.cost[j] * result.x[j];
    }
    return result;
}

} // namespace subdual

#endif // SUBDUAL_SIMPLEX_HPP
