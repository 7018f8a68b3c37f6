#ifndef SUBDUAL_MODEL_HPP
#define SUBDUAL_MODEL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "subdual/rational.hpp"

namespace subdual {

enum class RowSense { GreaterEq, Eq };

/// Closed interval [lower, upper]; an absent upper bound means +infinity.
struct Bounds {
    Rational lower = 0;
    std::optional<Rational> upper; // nullopt = +inf

    bool finite() const { return upper.has_value(); }
    bool contains(const Rational& v) const {
        return v >= lower && (!upper || v <= *upper);
    }
};

inline Bounds bounds(const Rational& lo, const Rational& hi) { return Bounds{lo, hi}; }
inline Bounds nonnegative_unbounded() { return Bounds{0, std::nullopt}; }

/// Mixed-integer linear program
///
///   min  c'x + d'y
///   s.t. A x + G y  {>=, =}  b   (row-wise)
///        x integer within int_bounds, y within cont_bounds
///
/// The cone is fixed to the nonnegative orthant, realized as row senses;
/// equality rows are stored directly. Minimization only. Instances are
/// immutable value types; all operations on them are pure functions.
struct ConicMip {
    std::size_t num_rows = 0;
    std::vector<std::vector<Rational>> A; // num_rows x n1
    std::vector<std::vector<Rational>> G; // num_rows x n2
    std::vector<Rational> b;              // num_rows
    std::vector<Rational> c;              // n1
    std::vector<Rational> d;              // n2
    std::vector<RowSense> row_sense;      // num_rows
    std::vector<Bounds> int_bounds;       // n1
    std::vector<Bounds> cont_bounds;      // n2

    std::size_t n1() const { return c.size(); }
    std::size_t n2() const { return d.size(); }
};

using ValidationReport = std::vector<std::string>;

/// Dimension and bound checks. Returns a list of violations; empty iff the
/// model invariants hold.
inline ValidationReport validate(const ConicMip& mip) {
    ValidationReport report;
    const std::size_t m = mip.num_rows;
    const std::size_t n1 = mip.n1();
    const std::size_t n2 = mip.n2();

    if (mip.A.size() != m)
        report.push_back("A has " + std::to_string(mip.A.size()) + " rows, expected " + std::to_string(m));
    if (mip.G.size() != m)
        report.push_back("G has " + std::to_string(mip.G.size()) + " rows, expected " + std::to_string(m));
    if (mip.b.size() != m)
        report.push_back("b has " + std::to_string(mip.b.size()) + " entries, expected " + std::to_string(m));
    if (mip.row_sense.size() != m)
        report.push_back("row_sense has " + std::to_string(mip.row_sense.size()) + " entries, expected " +
                         std::to_string(m));
    for (std::size_t i = 0; i < mip.A.size(); ++i)
        if (mip.A[i].size() != n1)
            report.push_back("A row " + std::to_string(i) + " has " + std::to_string(mip.A[i].size()) +
                             " columns, expected " + std::to_string(n1));
    for (std::size_t i = 0; i < mip.G.size(); ++i)
        if (mip.G[i].size() != n2)
            report.push_back("G row " + std::to_string(i) + " has " + std::to_string(mip.G[i].size()) +
                             " columns, expected " + std::to_string(n2));
    if (mip.int_bounds.size() != n1)
        report.push_back("int_bounds has " + std::to_string(mip.int_bounds.size()) + " entries, expected " +
                         std::to_string(n1));
    if (mip.cont_bounds.size() != n2)
        report.push_back("cont_bounds has " + std::to_string(mip.cont_bounds.size()) + " entries, expected " +
                         std::to_string(n2));
    for (std::size_t j = 0; j < mip.int_bounds.size(); ++j) {
        const Bounds& bd = mip.int_bounds[j];
        if (bd.upper && *bd.upper < bd.lower)
            report.push_back("integer variable " + std::to_string(j) + " has empty bound interval [" +
                             format_rational(bd.lower) + ", " + format_rational(*bd.upper) + "]");
    }
    for (std::size_t j = 0; j < mip.cont_bounds.size(); ++j) {
        const Bounds& bd = mip.cont_bounds[j];
        if (bd.upper && *bd.upper < bd.lower)
            report.push_back("continuous variable " + std::to_string(j) + " has empty bound interval [" +
                             format_rational(bd.lower) + ", " + format_rational(*bd.upper) + "]");
    }
    return report;
}

inline bool all_bounds_finite(const ConicMip& mip) {
    for (const Bounds& bd : mip.int_bounds)
        if (!bd.finite()) return false;
    for (const Bounds& bd : mip.cont_bounds)
        if (!bd.finite()) return false;
    return true;
}

/// Drop all integrality markers: the n1 integer columns join the continuous
/// block (in front of it, preserving column order) with unchanged bounds.
/// Idempotent, since the result has n1 = 0.
inline ConicMip continuous_relaxation(const ConicMip& mip) {
    ConicMip relaxed;
    relaxed.num_rows = mip.num_rows;
    relaxed.A.assign(mip.num_rows, {});
    relaxed.b = mip.b;
    relaxed.row_sense = mip.row_sense;
    relaxed.G.resize(mip.num_rows);
    for (std::size_t i = 0; i < mip.num_rows; ++i) {
        relaxed.G[i] = mip.A[i];
        relaxed.G[i].insert(relaxed.G[i].end(), mip.G[i].begin(), mip.G[i].end());
    }
    relaxed.d = mip.c;
    relaxed.d.insert(relaxed.d.end(), mip.d.begin(), mip.d.end());
    relaxed.cont_bounds = mip.int_bounds;
    relaxed.cont_bounds.insert(relaxed.cont_bounds.end(), mip.cont_bounds.begin(), mip.cont_bounds.end());
    return relaxed;
}

} // namespace subdual

#endif // SUBDUAL_MODEL_HPP
