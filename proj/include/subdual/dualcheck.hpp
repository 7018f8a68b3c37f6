#ifndef SUBDUAL_DUALCHECK_HPP
#define SUBDUAL_DUALCHECK_HPP

#include <optional>
#include <string>
#include <vector>

#include "subdual/errors.hpp"
#include "subdual/model.hpp"
#include "subdual/pwl.hpp"
#include "subdual/solve.hpp"

namespace subdual {

/// Which constraint family the dual check generates per column.
///
/// Inequality (the default, matching nonnegative primal variables):
///   f(A_j) <= c_j per integer column, fbar(G_k) <= d_k per continuous column.
/// Equality (free primal variables):
///   f(A_j) = c_j and -f(-A_j) = c_j, resp. fbar(G_k) = d_k and
///   -fbar(-G_k) = d_k.
enum class DualMode { Inequality, Equality };

enum class DualRelation { LessEq, Eq };
enum class DualKind { Value, DirDerivative, NegValue, NegDirDerivative, Anchor };

struct DualConstraint {
    DualKind kind;
    Rational point; // argument handed to f / fbar
    DualRelation relation;
    Rational bound;

    bool operator==(const DualConstraint& o) const {
        return kind == o.kind && point == o.point && relation == o.relation && bound == o.bound;
    }

    std::string to_string() const {
        std::string lhs;
        switch (kind) {
            case DualKind::Value: lhs = "f(" + format_rational(point) + ")"; break;
            case DualKind::DirDerivative: lhs = "fbar(" + format_rational(point) + ")"; break;
            case DualKind::NegValue: lhs = "-f(" + format_rational(-point) + ")"; break;
            case DualKind::NegDirDerivative: lhs = "-fbar(" + format_rational(-point) + ")"; break;
            case DualKind::Anchor: lhs = "f(0)"; break;
        }
        return lhs + (relation == DualRelation::LessEq ? " <= " : " = ") + format_rational(bound);
    }
};

/// The scalar-rhs dual constraint set of a one-row model. Integer columns
/// first, then continuous columns, then the anchor f(0) = 0.
inline std::vector<DualConstraint> generate_dual_constraints(const ConicMip& mip, DualMode mode) {
    if (mip.num_rows != 1) throw MultiRow("scalar-rhs dual machinery requires exactly one row");
    std::vector<DualConstraint> out;
    for (std::size_t j = 0; j < mip.n1(); ++j) {
        const Rational a = mip.A[0][j];
        if (mode == DualMode::Inequality) {
            out.push_back({DualKind::Value, a, DualRelation::LessEq, mip.c[j]});
        } else {
            out.push_back({DualKind::Value, a, DualRelation::Eq, mip.c[j]});
            out.push_back({DualKind::NegValue, a, DualRelation::Eq, mip.c[j]});
        }
    }
    for (std::size_t k = 0; k < mip.n2(); ++k) {
        const Rational g = mip.G[0][k];
        if (mode == DualMode::Inequality) {
            out.push_back({DualKind::DirDerivative, g, DualRelation::LessEq, mip.d[k]});
        } else {
            out.push_back({DualKind::DirDerivative, g, DualRelation::Eq, mip.d[k]});
            out.push_back({DualKind::NegDirDerivative, g, DualRelation::Eq, mip.d[k]});
        }
    }
    out.push_back({DualKind::Anchor, Rational(0), DualRelation::Eq, Rational(0)});
    return out;
}

struct DualCheckEntry {
    DualConstraint constraint;
    Rational lhs;
    bool satisfied;
};

struct DualCheckReport {
    std::vector<DualCheckEntry> entries;
    SubadditivityResult subadditivity;
    std::optional<bool> monotone; // only checked when every row is GreaterEq
    bool anchor_ok = false;
    Rational window_lo = 0, window_hi = 0;
    bool feasible = false;
};

namespace detail {

inline Rational dual_lhs(const PwlFunction& f, const DualConstraint& c) {
    auto fbar = [&](const Rational& x) { return x == 0 ? Rational(0) : upper_dir_derivative(f, x); };
    switch (c.kind) {
        case DualKind::Value: return f.eval(c.point);
        case DualKind::DirDerivative: return fbar(c.point);
        case DualKind::NegValue: return -f.eval(-c.point);
        case DualKind::NegDirDerivative: return -fbar(-c.point);
        case DualKind::Anchor: return f.eval(0);
    }
    return 0;
}

} // namespace detail

/// Checks f against the subadditive dual of the given one-row model: the
/// per-column constraints of the selected mode, the anchor f(0) = 0,
/// subadditivity over a window covering every tested point, and (only when
/// all rows are GreaterEq) monotonicity, i.e. all slopes >= 0. For equality
/// rows monotonicity with respect to the cone is vacuous and skipped.
inline DualCheckReport check_dual_feasible(const PwlFunction& f, const ConicMip& mip,
                                           DualMode mode = DualMode::Inequality,
                                           std::uint64_t seed = 20240901) {
    DualCheckReport report;
    std::vector<DualConstraint> constraints = generate_dual_constraints(mip, mode);

    Rational lo = 0, hi = 0;
    bool all_ok = true;
    for (const DualConstraint& c : constraints) {
        Rational lhs = detail::dual_lhs(f, c);
        bool ok = c.relation == DualRelation::LessEq ? lhs <= c.bound : lhs == c.bound;
        if (c.kind == DualKind::Anchor) report.anchor_ok = ok;
        const Rational probe = (c.kind == DualKind::NegValue || c.kind == DualKind::NegDirDerivative)
                                   ? Rational(-c.point)
                                   : c.point;
        if (probe < lo) lo = probe;
        if (probe > hi) hi = probe;
        report.entries.push_back({c, lhs, ok});
        all_ok = all_ok && ok;
    }

    if (lo == hi) { // degenerate model with all-zero columns; any window works
        lo -= 1;
        hi += 1;
    }
    report.window_lo = lo;
    report.window_hi = hi;
    report.subadditivity = check_subadditive(f, lo, hi, seed);

    bool all_greater_eq = true;
    for (RowSense s : mip.row_sense)
        if (s != RowSense::GreaterEq) all_greater_eq = false;
    if (all_greater_eq) report.monotone = f.is_nondecreasing();

    report.feasible =
        all_ok && report.subadditivity.subadditive && report.anchor_ok && report.monotone.value_or(true);
    return report;
}

/// Primal-minus-dual objective gap at the model's rhs. Requires a certified
/// dual-feasible f and an Optimal solution; weak duality makes the gap
/// nonnegative, and a negative gap therefore voids the certificate.
inline Rational weak_duality_gap(const PwlFunction& f, const ConicMip& mip, const MipSolution& sol,
                                 DualMode mode = DualMode::Inequality) {
    if (sol.status != SolveStatus::Optimal)
        throw NotCertified("weak duality gap needs an Optimal primal solution");
    DualCheckReport report = check_dual_feasible(f, mip, mode);
    if (!report.feasible) throw NotCertified("function is not dual feasible for this model");
    Rational gap = sol.objective - f.eval(mip.b[0]);
    if (gap < 0)
        throw NotCertified("negative duality gap " + format_rational(gap) +
                           "; subadditivity certificate must be unsound");
    return gap;
}

} // namespace subdual

#endif // SUBDUAL_DUALCHECK_HPP
