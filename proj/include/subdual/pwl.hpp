#ifndef SUBDUAL_PWL_HPP
#define SUBDUAL_PWL_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "subdual/errors.hpp"
#include "subdual/rational.hpp"
#include "subdual/rng.hpp"

namespace subdual {

/// Continuous piecewise-linear function on all of R, anchored at f(0) = 0.
/// Stored as k slopes (left to right) separated by k-1 strictly increasing
/// breakpoints; values follow by integrating the slope from 0. Construction
/// normalizes away breakpoints whose two sides carry the same slope, so equal
/// functions compare equal.
class PwlFunction {
public:
    PwlFunction() : slopes_{Rational(0)} {}

    PwlFunction(std::vector<Rational> slopes, std::vector<Rational> breakpoints) {
        if (slopes.empty()) throw ShapeMismatch("a piecewise-linear function needs at least one slope");
        if (slopes.size() != breakpoints.size() + 1)
            throw ShapeMismatch("slope count must be breakpoint count + 1");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i - 1] < breakpoints[i]))
                throw ShapeMismatch("breakpoints must be strictly increasing");
        slopes_.push_back(slopes[0]);
        for (std::size_t i = 0; i < breakpoints.size(); ++i) {
            if (slopes[i + 1] == slopes_.back()) continue; // no kink, merge
            breakpoints_.push_back(breakpoints[i]);
            slopes_.push_back(slopes[i + 1]);
        }
    }

    static PwlFunction zero() { return PwlFunction(); }
    static PwlFunction linear(const Rational& slope) { return PwlFunction({slope}, {}); }

    const std::vector<Rational>& slopes() const { return slopes_; }
    const std::vector<Rational>& breakpoints() const { return breakpoints_; }

    /// Slope of the segment immediately right of x.
    Rational slope_right_at(const Rational& x) const {
        std::size_t i = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin();
        return slopes_[i];
    }

    /// Slope of the segment immediately left of x.
    Rational slope_left_at(const Rational& x) const {
        std::size_t i = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin();
        return slopes_[i];
    }

    bool is_breakpoint(const Rational& x) const {
        return std::binary_search(breakpoints_.begin(), breakpoints_.end(), x);
    }

    /// Exact evaluation, integrating the slope from the anchor f(0) = 0.
    Rational eval(const Rational& b) const {
        Rational acc = 0;
        if (b > 0) {
            std::size_t i = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), Rational(0)) -
                            breakpoints_.begin();
            Rational cur = 0;
            while (i < breakpoints_.size() && breakpoints_[i] < b) {
                acc += slopes_[i] * (breakpoints_[i] - cur);
                cur = breakpoints_[i];
                ++i;
            }
            acc += slopes_[i] * (b - cur);
        } else if (b < 0) {
            std::size_t i = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), Rational(0)) -
                            breakpoints_.begin();
            Rational cur = 0;
            while (i > 0 && breakpoints_[i - 1] > b) {
                acc += slopes_[i] * (breakpoints_[i - 1] - cur);
                cur = breakpoints_[i - 1];
                --i;
            }
            acc += slopes_[i] * (b - cur);
        }
        return acc;
    }

    /// Largest |slope|; a global Lipschitz constant for the function.
    Rational lipschitz_bound() const {
        Rational best = 0;
        for (const Rational& s : slopes_)
            if (abs_rat(s) > best) best = abs_rat(s);
        return best;
    }

    bool is_nondecreasing() const {
        for (const Rational& s : slopes_)
            if (s < 0) return false;
        return true;
    }

    bool operator==(const PwlFunction& other) const {
        return slopes_ == other.slopes_ && breakpoints_ == other.breakpoints_;
    }
    bool operator!=(const PwlFunction& other) const { return !(*this == other); }

private:
    std::vector<Rational> slopes_;      // size = breakpoints_.size() + 1
    std::vector<Rational> breakpoints_; // strictly increasing
};

/// Upper x-directional derivative at the origin, limsup_{d->0+} f(dx)/d. For a
/// piecewise-linear anchored f this is x times the slope of the segment
/// adjacent to 0 on the side of x.
inline Rational upper_dir_derivative(const PwlFunction& f, const Rational& x) {
    if (x == 0) throw ZeroDirection("upper directional derivative needs a nonzero direction");
    const Rational slope = x > 0 ? f.slope_right_at(0) : f.slope_left_at(0);
    return x * slope;
}

/// Exact pointwise sum, breakpoints merged.
inline PwlFunction add(const PwlFunction& f, const PwlFunction& g) {
    std::vector<Rational> merged;
    std::set_union(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(), g.breakpoints().end(),
                   std::back_inserter(merged));
    std::vector<Rational> slopes;
    slopes.reserve(merged.size() + 1);
    slopes.push_back(f.slopes().front() + g.slopes().front());
    for (const Rational& p : merged) slopes.push_back(f.slope_right_at(p) + g.slope_right_at(p));
    return PwlFunction(std::move(slopes), std::move(merged));
}

/// Exact composition g(f(x)). Both operands are anchored, so the composition
/// is anchored as well. Breakpoint candidates are f's own kinks plus every
/// preimage of a kink of g under an affine piece of f; slopes follow by the
/// chain rule on each open piece.
inline PwlFunction compose(const PwlFunction& g, const PwlFunction& f) {
    std::set<Rational> candidates(f.breakpoints().begin(), f.breakpoints().end());

    const std::vector<Rational>& fb = f.breakpoints();
    for (const Rational& q : g.breakpoints()) {
        if (fb.empty()) {
            const Rational s = f.slopes().front();
            if (s != 0) candidates.insert(q / s); // f(x) = s x
            continue;
        }
        // leftmost ray, the inner pieces, then the rightmost ray
        for (std::size_t piece = 0; piece <= fb.size(); ++piece) {
            const Rational s = piece < f.slopes().size() ? f.slopes()[piece] : f.slopes().back();
            if (s == 0) continue;
            const bool has_left = piece > 0;
            const bool has_right = piece < fb.size();
            const Rational anchor_x = has_left ? fb[piece - 1] : fb[0];
            const Rational anchor_v = f.eval(anchor_x);
            Rational x = anchor_x + (q - anchor_v) / s;
            if (has_left && x < fb[piece - 1]) continue;
            if (has_right && x > fb[piece]) continue;
            if (!has_left && x > fb[0]) continue;
            candidates.insert(x);
        }
    }

    std::vector<Rational> bps(candidates.begin(), candidates.end());
    std::vector<Rational> slopes;
    slopes.reserve(bps.size() + 1);
    for (std::size_t piece = 0; piece <= bps.size(); ++piece) {
        Rational probe;
        if (bps.empty())
            probe = 0;
        else if (piece == 0)
            probe = bps.front() - 1;
        else if (piece == bps.size())
            probe = bps.back() + 1;
        else
            probe = (bps[piece - 1] + bps[piece]) / 2;
        // probe is interior to its piece, so f is affine there and f(probe)
        // cannot sit on a kink of g unless f is locally constant
        slopes.push_back(g.slope_right_at(f.eval(probe)) * f.slope_right_at(probe));
    }
    return PwlFunction(std::move(slopes), std::move(bps));
}

struct SubadditivityResult {
    bool subadditive = true;
    std::optional<std::pair<Rational, Rational>> witness; // f(x+y) > f(x) + f(y)
};

/// Exact subadditivity check of f over pairs drawn from [lo, hi] (which must
/// contain 0). The candidate grid contains every vertex coordinate of the
/// kink-line arrangement of (x, y) -> f(x) + f(y) - f(x+y) over the window
/// square, so scanning candidate pairs decides the property on the window;
/// the seeded random pairs are belt and braces on top.
inline SubadditivityResult check_subadditive(const PwlFunction& f, const Rational& lo, const Rational& hi,
                                             std::uint64_t seed = 20240901, std::size_t random_pairs = 10000) {
    if (!(lo <= 0 && 0 <= hi && lo < hi))
        throw ShapeMismatch("subadditivity window must contain 0 and be nondegenerate");

    // fast accept: a single kink at the origin with nondecreasing slopes is
    // convex and positively homogeneous, hence subadditive
    const std::vector<Rational>& bp = f.breakpoints();
    if (bp.empty() || (bp.size() == 1 && bp[0] == 0)) {
        bool convex = true;
        for (std::size_t i = 1; i < f.slopes().size(); ++i)
            if (f.slopes()[i] < f.slopes()[i - 1]) convex = false;
        if (convex) return {};
    }

    auto violated = [&](const Rational& x, const Rational& y) { return f.eval(x + y) > f.eval(x) + f.eval(y); };

    std::vector<Rational> candidates;
    std::set<Rational> seen;
    auto push = [&](const Rational& v) {
        if (v < lo || v > hi) return;
        if (seen.insert(v).second) candidates.push_back(v);
    };
    // tier 1: breakpoints; tier 2: pairwise sums; tier 3: window endpoints;
    // tier 4: differences and endpoint shifts (arrangement vertices); tier 5:
    // midpoints of adjacent candidates
    for (const Rational& p : bp) push(p);
    for (const Rational& p : bp)
        for (const Rational& q : bp) push(p + q);
    push(lo);
    push(hi);
    push(0);
    for (const Rational& p : bp)
        for (const Rational& q : bp)
            if (p != q) push(p - q);
    for (const Rational& p : bp) {
        push(p - lo);
        push(p - hi);
    }
    {
        std::vector<Rational> sorted(seen.begin(), seen.end());
        for (std::size_t i = 1; i < sorted.size(); ++i) push((sorted[i - 1] + sorted[i]) / 2);
    }

    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i; j < candidates.size(); ++j)
            if (violated(candidates[i], candidates[j]))
                return {false, std::make_pair(candidates[i], candidates[j])};

    SeededRng rng(seed);
    for (std::size_t k = 0; k < random_pairs; ++k) {
        Rational x = rng.rational_in(lo, hi);
        Rational y = rng.rational_in(lo, hi);
        if (violated(x, y)) return {false, std::make_pair(x, y)};
    }
    return {};
}

} // namespace subdual

#endif // SUBDUAL_PWL_HPP
