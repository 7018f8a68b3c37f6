#ifndef SUBDUAL_AUTODIFF_HPP
#define SUBDUAL_AUTODIFF_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "subdual/errors.hpp"
#include "subdual/pwl.hpp"
#include "subdual/rational.hpp"

namespace subdual {

/// Closed interval of admissible slopes at a point.
struct SlopeInterval {
    Rational lo = 0;
    Rational hi = 0;

    bool singleton() const { return lo == hi; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool operator==(const SlopeInterval& o) const { return lo == o.lo && hi == o.hi; }
};

inline SlopeInterval hull(const std::vector<Rational>& values) {
    SlopeInterval iv{values.front(), values.front()};
    for (const Rational& v : values) {
        if (v < iv.lo) iv.lo = v;
        if (v > iv.hi) iv.hi = v;
    }
    return iv;
}

/// Conservative set-valued derivative of a piecewise-linear function: the
/// segment slope on segment interiors, the closed hull of the two adjacent
/// slopes at a breakpoint. Compositions may widen the breakpoint intervals to
/// the hull of adjacent slope products (see chain); overrides at finitely many
/// points keep the chain rule valid along absolutely continuous curves.
class ConservativeField {
public:
    explicit ConservativeField(PwlFunction source) : source_(std::move(source)) {}

    ConservativeField(PwlFunction source, std::vector<std::pair<Rational, SlopeInterval>> overrides)
        : source_(std::move(source)), overrides_(std::move(overrides)) {
        std::sort(overrides_.begin(), overrides_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // drop overrides that agree with the default field
        std::vector<std::pair<Rational, SlopeInterval>> kept;
        for (auto& ov : overrides_)
            if (!(ov.second == default_at(ov.first))) kept.push_back(ov);
        overrides_ = std::move(kept);
    }

    const PwlFunction& source() const { return source_; }

    SlopeInterval at(const Rational& x) const {
        for (const auto& ov : overrides_)
            if (ov.first == x) return ov.second;
        return default_at(x);
    }

    bool operator==(const ConservativeField& o) const {
        return source_ == o.source_ && overrides_ == o.overrides_;
    }

private:
    SlopeInterval default_at(const Rational& x) const {
        const Rational left = source_.slope_left_at(x);
        const Rational right = source_.slope_right_at(x);
        return left <= right ? SlopeInterval{left, right} : SlopeInterval{right, left};
    }

    PwlFunction source_;
    std::vector<std::pair<Rational, SlopeInterval>> overrides_;
};

inline ConservativeField field(const PwlFunction& f) { return ConservativeField(f); }

enum class SelectionRule { LeftSlope, RightSlope, Midpoint, LeastNorm };

/// Deterministic element of a slope interval. LeastNorm picks the element of
/// smallest absolute value (0 whenever the interval straddles 0).
inline Rational select(const SlopeInterval& iv, SelectionRule rule) {
    switch (rule) {
        case SelectionRule::LeftSlope: return iv.lo;
        case SelectionRule::RightSlope: return iv.hi;
        case SelectionRule::Midpoint: return (iv.lo + iv.hi) / 2;
        case SelectionRule::LeastNorm:
            if (iv.contains(0)) return 0;
            return abs_rat(iv.lo) <= abs_rat(iv.hi) ? iv.lo : iv.hi;
    }
    return iv.lo;
}

/// Conservative field of the composition outer(inner(x)). Off breakpoints it
/// is the product of the two slopes; at a kink it is the interval hull of all
/// products of adjacent slopes, which contains (and may exceed) the hull of
/// the composition's own adjacent slopes.
inline ConservativeField chain(const PwlFunction& outer, const PwlFunction& inner) {
    PwlFunction comp = compose(outer, inner);

    // kink candidates: inner kinks plus preimages of outer kinks
    std::set<Rational> candidates(inner.breakpoints().begin(), inner.breakpoints().end());
    for (const Rational& x : comp.breakpoints()) candidates.insert(x);
    for (const Rational& q : outer.breakpoints()) {
        const std::vector<Rational>& fb = inner.breakpoints();
        if (fb.empty()) {
            const Rational s = inner.slopes().front();
            if (s != 0) candidates.insert(q / s);
            continue;
        }
        for (std::size_t piece = 0; piece <= fb.size(); ++piece) {
            const Rational s = inner.slopes()[piece];
            if (s == 0) continue;
            const Rational anchor_x = piece > 0 ? fb[piece - 1] : fb[0];
            Rational x = anchor_x + (q - inner.eval(anchor_x)) / s;
            if (piece > 0 && x < fb[piece - 1]) continue;
            if (piece < fb.size() && x > fb[piece]) continue;
            if (piece == 0 && x > fb[0]) continue;
            candidates.insert(x);
        }
    }

    std::vector<std::pair<Rational, SlopeInterval>> overrides;
    for (const Rational& x : candidates) {
        const Rational v = inner.eval(x);
        std::vector<Rational> products;
        for (const Rational& so : {outer.slope_left_at(v), outer.slope_right_at(v)})
            for (const Rational& si : {inner.slope_left_at(x), inner.slope_right_at(x)})
                products.push_back(so * si);
        overrides.emplace_back(x, hull(products));
    }
    return ConservativeField(std::move(comp), std::move(overrides));
}

/// Step-size schedules: constant, base/(k+1), and geometric base*ratio^e.
/// Geometric supports a stride (epoch length): the exponent is floor(k/stride),
/// which keeps rational denominators small over long runs.
struct StepSchedule {
    enum class Kind { Constant, Harmonic, Geometric };
    Kind kind = Kind::Constant;
    Rational base = Rational(1, 10);
    Rational ratio = Rational(1, 2); // Geometric only
    std::size_t stride = 1;          // Geometric only

    static StepSchedule constant(const Rational& a) { return {Kind::Constant, a, 0, 1}; }
    static StepSchedule harmonic(const Rational& a) { return {Kind::Harmonic, a, 0, 1}; }
    static StepSchedule geometric(const Rational& a, const Rational& r, std::size_t stride = 1) {
        return {Kind::Geometric, a, r, stride};
    }

    Rational at(std::size_t k) const {
        switch (kind) {
            case Kind::Constant: return base;
            case Kind::Harmonic: return base / Rational(k + 1);
            case Kind::Geometric: {
                Rational a = base;
                for (std::size_t e = 0; e < k / stride; ++e) a *= ratio;
                return a;
            }
        }
        return base;
    }
};

enum class IterSense { Ascend, Descend };

/// Small-vector variant of the iteration record, used when the decision
/// variable is a parameter vector rather than a scalar.
struct VectorTrace {
    std::vector<std::vector<Rational>> iterates;
    std::vector<std::vector<Rational>> chosen;
    std::vector<Rational> step_sizes;
    std::vector<Rational> objective_values;
    bool halted_stationary = false;
};

/// Record of a conservative subgradient run: v_{k+1} = v_k +- alpha_k g_k with
/// g_k selected from the field at v_k.
struct IterationTrace {
    std::vector<Rational> iterates;         // v_0 .. v_T
    std::vector<Rational> chosen;           // g_0 .. g_{T-1}
    std::vector<Rational> step_sizes;       // alpha_0 .. alpha_{T-1}
    std::vector<Rational> objective_values; // f(v_k) per iterate
    bool halted_stationary = false;
};

/// Scalar conservative subgradient iteration on a piecewise-linear objective.
/// Stops early (stationary) once the selected field element is zero, which by
/// LeastNorm happens exactly when 0 is in the field at the iterate.
inline IterationTrace iterate(const PwlFunction& objective, const Rational& v0, std::size_t steps,
                              const StepSchedule& schedule, IterSense sense, SelectionRule rule,
                              std::optional<std::pair<Rational, Rational>> projection = std::nullopt) {
    if (steps < 1) throw ShapeMismatch("iteration needs at least one step");
    ConservativeField D = field(objective);
    IterationTrace trace;
    Rational v = v0;
    trace.iterates.push_back(v);
    trace.objective_values.push_back(objective.eval(v));
    for (std::size_t k = 0; k < steps; ++k) {
        const Rational g = select(D.at(v), rule);
        if (g == 0) {
            trace.halted_stationary = true;
            break;
        }
        const Rational alpha = schedule.at(k);
        trace.chosen.push_back(g);
        trace.step_sizes.push_back(alpha);
        if (sense == IterSense::Ascend)
            v += alpha * g;
        else
            v -= alpha * g;
        if (projection) {
            if (v < projection->first) v = projection->first;
            if (v > projection->second) v = projection->second;
        }
        trace.iterates.push_back(v);
        trace.objective_values.push_back(objective.eval(v));
    }
    return trace;
}

} // namespace subdual

#endif // SUBDUAL_AUTODIFF_HPP
