#ifndef SUBDUAL_TESTS_ORACLES_HPP
#define SUBDUAL_TESTS_ORACLES_HPP

// Independent reference implementations used only by tests. These deliberately
// avoid the library's solver / evaluator code paths: the bundled example's
// value function comes from closed-form enumeration, MIP optima from grid
// enumeration over the integer box, forward passes from a straight-line
// interpreter, and subadditivity from brute-force pair scans.

#include <optional>
#include <vector>

#include "subdual/bnn.hpp"
#include "subdual/model.hpp"
#include "subdual/pwl.hpp"
#include "subdual/rational.hpp"
#include "subdual/rng.hpp"
#include "subdual/solve.hpp"

namespace oracles {

using subdual::Bounds;
using subdual::ConicMip;
using subdual::Int;
using subdual::Rational;
using subdual::RowSense;

/// Closed-form optimum of
///   min 2 Y1 + Y2 + 1/2 X1  s.t.  X1 - 3/2 X2 + Y1 - Y2 = b, all vars >= 0
/// with caps: enumerate X on its grid, absorb the residual r with
/// Y1 = max(r, 0), Y2 = max(-r, 0), keep the cheapest assignment.
inline std::optional<Rational> ralphs_value(const Rational& b, long x_cap = 10, const Rational& y_cap = 20) {
    std::optional<Rational> best;
    for (long x1 = 0; x1 <= x_cap; ++x1)
        for (long x2 = 0; x2 <= x_cap; ++x2) {
            Rational r = b - Rational(x1) + Rational(3, 2) * Rational(x2);
            Rational y1 = r > 0 ? r : Rational(0);
            Rational y2 = r < 0 ? Rational(-r) : Rational(0);
            if (y1 > y_cap || y2 > y_cap) continue;
            Rational cost = 2 * y1 + y2 + Rational(x1) / 2;
            if (!best || cost < *best) best = cost;
        }
    return best;
}

/// Exhaustive enumeration over every integer assignment in the (finite) box,
/// solving the continuous residual LP for each. The reference result for
/// small instances.
inline subdual::MipSolution enumerate_mip(const ConicMip& mip) {
    subdual::MipSolution best;
    best.status = subdual::SolveStatus::Infeasible;

    std::vector<Int> lows, highs, point;
    for (const Bounds& bd : mip.int_bounds) {
        lows.push_back(subdual::ceil_rat(bd.lower));
        highs.push_back(subdual::floor_rat(*bd.upper));
    }
    point = lows;

    auto residual_lp = [&](const std::vector<Int>& x) {
        ConicMip lp;
        lp.num_rows = mip.num_rows;
        lp.A.assign(mip.num_rows, {});
        lp.G = mip.G;
        lp.d = mip.d;
        lp.row_sense = mip.row_sense;
        lp.cont_bounds = mip.cont_bounds;
        lp.b = mip.b;
        for (std::size_t i = 0; i < mip.num_rows; ++i)
            for (std::size_t j = 0; j < mip.n1(); ++j) lp.b[i] -= mip.A[i][j] * Rational(x[j]);
        return lp;
    };

    bool done = mip.n1() > 0 && [&] {
        for (std::size_t j = 0; j < lows.size(); ++j)
            if (lows[j] > highs[j]) return true;
        return false;
    }();

    while (!done) {
        subdual::MipSolution sub = subdual::solve_lp(residual_lp(point));
        if (sub.status == subdual::SolveStatus::Optimal) {
            Rational total = sub.objective;
            for (std::size_t j = 0; j < point.size(); ++j) total += mip.c[j] * Rational(point[j]);
            if (best.status != subdual::SolveStatus::Optimal || total < best.objective) {
                best.status = subdual::SolveStatus::Optimal;
                best.objective = total;
                best.x.clear();
                for (const Int& v : point) best.x.push_back(Rational(v));
                best.y = sub.y;
            }
        }
        if (point.empty()) break;
        std::size_t j = 0;
        while (j < point.size()) {
            if (point[j] < highs[j]) {
                ++point[j];
                break;
            }
            point[j] = lows[j];
            ++j;
        }
        if (j == point.size()) break;
    }
    return best;
}

/// Straight-line reimplementation of the binarized forward pass, kept
/// textually independent of the library's version.
inline std::vector<int> straightline_forward(const std::vector<std::size_t>& sizes,
                                             const subdual::WeightAssignment& w,
                                             const std::vector<Rational>& input) {
    std::vector<Rational> layer = input;
    for (std::size_t k = 1; k < sizes.size(); ++k) {
        std::vector<Rational> next;
        for (std::size_t j = 0; j < sizes[k]; ++j) {
            Rational acc = 0;
            for (std::size_t l = 0; l < sizes[k - 1]; ++l) acc = acc + w.weights[k - 1][l][j] * layer[l];
            next.push_back(acc >= w.thresholds[k - 1] ? Rational(1) : Rational(0));
        }
        layer = next;
    }
    std::vector<int> bits;
    for (const Rational& v : layer) bits.push_back(v == 1 ? 1 : 0);
    return bits;
}

/// Brute-force subadditivity scan over a uniform pair grid.
inline bool brute_force_subadditive(const subdual::PwlFunction& f, const Rational& lo, const Rational& hi,
                                    int grid = 64) {
    for (int i = 0; i <= grid; ++i)
        for (int j = i; j <= grid; ++j) {
            Rational x = lo + (hi - lo) * Rational(i) / Rational(grid);
            Rational y = lo + (hi - lo) * Rational(j) / Rational(grid);
            if (f.eval(x + y) > f.eval(x) + f.eval(y)) return false;
        }
    return true;
}

/// Seeded random small instances with finite caps (for solver cross-checks).
inline ConicMip random_small_mip(subdual::SeededRng& rng) {
    ConicMip mip;
    mip.num_rows = 1 + rng.next_index(2);
    std::size_t n1 = rng.next_index(4);
    std::size_t n2 = rng.next_index(4);
    if (n1 + n2 == 0) n1 = 1;
    auto coeff = [&] { return Rational(static_cast<long long>(rng.next_index(9)) - 4, 1 + rng.next_index(2)); };
    for (std::size_t i = 0; i < mip.num_rows; ++i) {
        std::vector<Rational> arow, grow;
        for (std::size_t j = 0; j < n1; ++j) arow.push_back(coeff());
        for (std::size_t j = 0; j < n2; ++j) grow.push_back(coeff());
        mip.A.push_back(arow);
        mip.G.push_back(grow);
        mip.b.push_back(coeff());
        mip.row_sense.push_back(rng.next_bool() ? RowSense::GreaterEq : RowSense::Eq);
    }
    for (std::size_t j = 0; j < n1; ++j) {
        mip.c.push_back(coeff());
        mip.int_bounds.push_back(subdual::bounds(0, Rational(1 + rng.next_index(4))));
    }
    for (std::size_t j = 0; j < n2; ++j) {
        mip.d.push_back(coeff());
        mip.cont_bounds.push_back(subdual::bounds(0, Rational(1 + rng.next_index(3))));
    }
    return mip;
}

/// Random dual-feasible candidates for the bundled example: two-segment
/// sublinear functions 0 <= s_left <= s_right <= 1/2 with the kink at the
/// origin (convex and positively homogeneous, hence subadditive).
inline subdual::PwlFunction random_ralphs_dual_feasible(subdual::SeededRng& rng) {
    Rational s_right = rng.rational_in(Rational(0), Rational(1, 2), 256);
    Rational s_left = rng.rational_in(Rational(0), s_right == 0 ? Rational(0) : s_right, 256);
    if (s_left == s_right) return subdual::PwlFunction::linear(s_left);
    return subdual::PwlFunction({s_left, s_right}, {Rational(0)});
}

} // namespace oracles

#endif // SUBDUAL_TESTS_ORACLES_HPP
