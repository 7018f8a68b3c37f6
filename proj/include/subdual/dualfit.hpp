#ifndef SUBDUAL_DUALFIT_HPP
#define SUBDUAL_DUALFIT_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "subdual/autodiff.hpp"
#include "subdual/dualcheck.hpp"
#include "subdual/model.hpp"
#include "subdual/pwl.hpp"
#include "subdual/solve.hpp"

namespace subdual {

/// k-segment slope/breakpoint parametrization of an anchored piecewise-linear
/// function. Breakpoints are kept sorted; equal breakpoints describe
/// zero-width segments, which collapse when the function is materialized.
struct SegmentedParam {
    std::vector<Rational> slopes;      // k, left to right
    std::vector<Rational> breakpoints; // k-1, sorted (ties allowed transiently)

    std::size_t k() const { return slopes.size(); }

    PwlFunction induced() const {
        std::vector<Rational> s{slopes.front()};
        std::vector<Rational> p;
        for (std::size_t j = 0; j + 1 < slopes.size(); ++j) {
            if (p.empty() || breakpoints[j] > p.back()) {
                p.push_back(breakpoints[j]);
                s.push_back(slopes[j + 1]);
            } else {
                s.back() = slopes[j + 1]; // zero-width segment collapses
            }
        }
        return PwlFunction(std::move(s), std::move(p));
    }
};

/// Approximate the value function on a sampling grid over [window_lo,
/// window_hi] (absolute rhs values).
struct MatchSamplesObjective {
    Rational window_lo;
    Rational window_hi;
    Rational grid_step;
};

/// Push f(at) up subject to hinge penalties on every dual constraint.
struct MaximizeAtObjective {
    Rational at;
};

struct FitConfig {
    std::size_t segments = 2;
    std::variant<MatchSamplesObjective, MaximizeAtObjective> objective =
        MatchSamplesObjective{Rational(-1), Rational(1), Rational(1, 8)};
    Rational penalty_weight = 4;
    std::size_t steps = 1280;
    StepSchedule schedule = StepSchedule::geometric(Rational(1, 8), Rational(1, 2), 64);
    SelectionRule rule = SelectionRule::LeastNorm;
    std::uint64_t seed = 20240901;
    Rational tolerance = Rational(1, 1000000);
    DualMode mode = DualMode::Inequality;
};

struct FitResult {
    PwlFunction function;
    SegmentedParam param;
    DualCheckReport report;
    VectorTrace trace;
    Rational residual = 0;       // best match error / violation of the result
    bool non_convergence = false;
    std::size_t chosen_k = 0;
    // (b, z*(b)) pairs behind a MatchSamples run; empty for MaximizeAt
    std::vector<std::pair<Rational, std::optional<Rational>>> samples;
};

namespace detail {

// f and its conservative partials with respect to theta = (s_0..s_{k-1},
// p_0..p_{k-2}). f is linear in the slopes (exact coverage lengths); a
// breakpoint contributes (s_j - s_{j+1}) while it lies strictly between 0 and
// the evaluation point, with the hull of the one-sided values on the boundary.
struct ValueWithPartials {
    Rational value = 0;
    std::vector<SlopeInterval> d;
};

inline ValueWithPartials eval_pwl_params(const SegmentedParam& t, const Rational& b) {
    const std::size_t k = t.slopes.size();
    ValueWithPartials out;
    out.d.assign(2 * k - 1, SlopeInterval{});

    const Rational lo = b < 0 ? b : Rational(0);
    const Rational hi = b < 0 ? Rational(0) : b;
    const Rational sgn = b < 0 ? Rational(-1) : Rational(1);
    for (std::size_t i = 0; i < k; ++i) {
        Rational left = i == 0 ? lo : std::max(lo, t.breakpoints[i - 1]);
        Rational right = i + 1 == k ? hi : std::min(hi, t.breakpoints[i]);
        Rational cover = 0;
        if (right > left) cover = sgn * (right - left);
        out.value += t.slopes[i] * cover;
        out.d[i] = SlopeInterval{cover, cover};
    }
    for (std::size_t j = 0; j + 1 < k; ++j) {
        const Rational p = t.breakpoints[j];
        const Rational jump = sgn * (t.slopes[j] - t.slopes[j + 1]);
        SlopeInterval iv{0, 0};
        if (p > lo && p < hi) {
            iv = {jump, jump};
        } else if ((p == lo || p == hi) && lo != hi) {
            iv = jump < 0 ? SlopeInterval{jump, 0} : SlopeInterval{0, jump};
        }
        out.d[k + j] = iv;
    }
    return out;
}

inline ValueWithPartials upper_dir_params(const SegmentedParam& t, const Rational& dir) {
    // fbar(dir) = dir * (slope adjacent to 0 on the side of dir); the
    // dependence on breakpoints is piecewise constant, so their partial is 0
    // almost everywhere and taken as 0 here.
    const std::size_t k = t.slopes.size();
    ValueWithPartials out;
    out.d.assign(2 * k - 1, SlopeInterval{});
    if (dir == 0) return out;
    std::size_t idx;
    if (dir > 0)
        idx = std::upper_bound(t.breakpoints.begin(), t.breakpoints.end(), Rational(0)) - t.breakpoints.begin();
    else
        idx = std::lower_bound(t.breakpoints.begin(), t.breakpoints.end(), Rational(0)) - t.breakpoints.begin();
    out.value = dir * t.slopes[idx];
    out.d[idx] = SlopeInterval{dir, dir};
    return out;
}

inline void accumulate(std::vector<SlopeInterval>& into, const std::vector<SlopeInterval>& term,
                       const Rational& scale_lo, const Rational& scale_hi) {
    // into += [scale_lo, scale_hi] * term, interval product hull per coordinate
    for (std::size_t i = 0; i < into.size(); ++i) {
        const std::array<Rational, 4> prods{scale_lo * term[i].lo, scale_lo * term[i].hi, scale_hi * term[i].lo,
                                            scale_hi * term[i].hi};
        Rational lo = prods[0], hi = prods[0];
        for (const Rational& v : prods) {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        into[i].lo += lo;
        into[i].hi += hi;
    }
}

/// Hinge max(0, e) of a constraint residual e with partials de. On the kink
/// e == 0 the zero element of the subdifferential [0, w de] is selected, so a
/// boundary iterate keeps following the unpenalized objective instead of
/// stalling on the constraint surface.
inline void add_hinge(std::vector<SlopeInterval>& grad, Rational& value, const Rational& e,
                      const std::vector<SlopeInterval>& de, const Rational& weight) {
    if (e > 0) {
        value += weight * e;
        accumulate(grad, de, weight, weight);
    }
}

struct FitProblem {
    const ConicMip* mip = nullptr;
    FitConfig cfg;
    std::vector<DualConstraint> constraints;           // MaximizeAt penalties
    Rational window_lo = 0, window_hi = 0;             // subadditivity window
    std::vector<std::pair<Rational, Rational>> points; // MatchSamples (b, z)
};

/// Penalized objective and a conservative gradient at theta. MatchSamples is
/// the plain mean absolute matching error (the target is the value function
/// itself, not a dual certificate); MaximizeAt is -f(b*) plus hinge penalties
/// for every generated dual constraint and for subadditivity violations on the
/// breakpoint/endpoint pair grid.
inline ValueWithPartials fit_objective(const FitProblem& prob, const SegmentedParam& t) {
    const std::size_t dims = 2 * t.slopes.size() - 1;
    ValueWithPartials out;
    out.d.assign(dims, SlopeInterval{});

    if (std::holds_alternative<MatchSamplesObjective>(prob.cfg.objective)) {
        const Rational n = Rational(prob.points.size());
        for (const auto& [b, z] : prob.points) {
            ValueWithPartials f = eval_pwl_params(t, b);
            Rational r = f.value - z;
            out.value += abs_rat(r) / n;
            if (r > 0)
                accumulate(out.d, f.d, Rational(1) / n, Rational(1) / n);
            else if (r < 0)
                accumulate(out.d, f.d, Rational(-1) / n, Rational(-1) / n);
            else
                accumulate(out.d, f.d, Rational(-1) / n, Rational(1) / n);
        }
        return out;
    }

    const auto& target = std::get<MaximizeAtObjective>(prob.cfg.objective);
    ValueWithPartials f = eval_pwl_params(t, target.at);
    out.value = -f.value;
    accumulate(out.d, f.d, Rational(-1), Rational(-1));

    const Rational w = prob.cfg.penalty_weight;
    for (const DualConstraint& c : prob.constraints) {
        ValueWithPartials lhs;
        switch (c.kind) {
            case DualKind::Value: lhs = eval_pwl_params(t, c.point); break;
            case DualKind::DirDerivative: lhs = upper_dir_params(t, c.point); break;
            case DualKind::NegValue: {
                lhs = eval_pwl_params(t, -c.point);
                lhs.value = -lhs.value;
                for (auto& iv : lhs.d) iv = SlopeInterval{-iv.hi, -iv.lo};
                break;
            }
            case DualKind::NegDirDerivative: {
                lhs = upper_dir_params(t, -c.point);
                lhs.value = -lhs.value;
                for (auto& iv : lhs.d) iv = SlopeInterval{-iv.hi, -iv.lo};
                break;
            }
            case DualKind::Anchor: continue; // anchored by construction
        }
        Rational e = lhs.value - c.bound;
        if (c.relation == DualRelation::Eq && e < 0) {
            // |e| hinge: penalize the negative side as well
            ValueWithPartials neg = lhs;
            neg.value = -neg.value;
            for (auto& iv : neg.d) iv = SlopeInterval{-iv.hi, -iv.lo};
            add_hinge(out.d, out.value, c.bound - lhs.value, neg.d, w);
            continue;
        }
        add_hinge(out.d, out.value, e, lhs.d, w);
    }

    // subadditivity hinge on the reduced pair grid (breakpoints, endpoints, 0);
    // movement of the grid points themselves is not differentiated through
    std::vector<Rational> pts{prob.window_lo, prob.window_hi, Rational(0)};
    for (const Rational& p : t.breakpoints)
        if (p >= prob.window_lo && p <= prob.window_hi) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b2 = a; b2 < pts.size(); ++b2) {
            ValueWithPartials fs = eval_pwl_params(t, pts[a] + pts[b2]);
            ValueWithPartials fx = eval_pwl_params(t, pts[a]);
            ValueWithPartials fy = eval_pwl_params(t, pts[b2]);
            Rational e = fs.value - fx.value - fy.value;
            if (e < 0) continue;
            std::vector<SlopeInterval> de(dims, SlopeInterval{});
            accumulate(de, fs.d, Rational(1), Rational(1));
            accumulate(de, fx.d, Rational(-1), Rational(-1));
            accumulate(de, fy.d, Rational(-1), Rational(-1));
            add_hinge(out.d, out.value, e, de, w);
        }
    return out;
}

/// Exact total constraint violation of the induced function (hinges plus
/// subadditivity on the reduced grid); zero marks a certified-feasible iterate.
inline Rational violation_of(const FitProblem& prob, const SegmentedParam& t) {
    PwlFunction f = t.induced();
    Rational total = 0;
    for (const DualConstraint& c : prob.constraints) {
        Rational lhs = dual_lhs(f, c);
        Rational e = lhs - c.bound;
        if (c.relation == DualRelation::Eq)
            total += abs_rat(e);
        else if (e > 0)
            total += e;
    }
    std::vector<Rational> pts{prob.window_lo, prob.window_hi, Rational(0)};
    for (const Rational& p : f.breakpoints())
        if (p >= prob.window_lo && p <= prob.window_hi) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b2 = a; b2 < pts.size(); ++b2) {
            Rational e = f.eval(pts[a] + pts[b2]) - f.eval(pts[a]) - f.eval(pts[b2]);
            if (e > 0) total += e;
        }
    return total;
}

inline void validate_config(const FitConfig& cfg) {
    if (cfg.segments < 1) throw ShapeMismatch("segment count must be >= 1");
    if (cfg.penalty_weight <= 0) throw ShapeMismatch("penalty_weight must be positive");
    if (cfg.tolerance <= 0) throw ShapeMismatch("tolerance must be positive");
    if (cfg.steps < 1) throw ShapeMismatch("fit needs at least one step");
}

inline FitProblem build_problem(const ConicMip& mip, const FitConfig& cfg) {
    if (mip.num_rows != 1) throw MultiRow("fit requires a one-row model");
    validate_config(cfg);
    FitProblem prob;
    prob.mip = &mip;
    prob.cfg = cfg;
    prob.constraints = generate_dual_constraints(mip, cfg.mode);
    Rational lo = 0, hi = 0;
    for (const DualConstraint& c : prob.constraints) {
        const Rational probe = (c.kind == DualKind::NegValue || c.kind == DualKind::NegDirDerivative)
                                   ? Rational(-c.point)
                                   : c.point;
        if (probe < lo) lo = probe;
        if (probe > hi) hi = probe;
    }
    if (std::holds_alternative<MaximizeAtObjective>(cfg.objective)) {
        const Rational at = std::get<MaximizeAtObjective>(cfg.objective).at;
        if (at < lo) lo = at;
        if (at > hi) hi = at;
    }
    if (lo == hi) {
        lo -= 1;
        hi += 1;
    }
    prob.window_lo = lo;
    prob.window_hi = hi;

    if (std::holds_alternative<MatchSamplesObjective>(cfg.objective)) {
        const auto& ms = std::get<MatchSamplesObjective>(cfg.objective);
        if (!(ms.window_lo < ms.window_hi) || ms.grid_step <= 0)
            throw ShapeMismatch("MatchSamples needs a nondegenerate window and positive grid step");
        std::vector<Rational> offsets;
        for (Rational v = ms.window_lo; v <= ms.window_hi; v += ms.grid_step) offsets.push_back(v - mip.b[0]);
        ValueFunctionSamples sweep = value_sweep(mip, {Rational(1)}, offsets);
        for (std::size_t i = 0; i < offsets.size(); ++i)
            if (sweep.values[i]) prob.points.emplace_back(offsets[i] + mip.b[0], *sweep.values[i]);
    }
    return prob;
}

inline SegmentedParam default_init(const FitProblem& prob) {
    const FitConfig& cfg = prob.cfg;
    SegmentedParam t;
    t.slopes.assign(cfg.segments, Rational(0));

    Rational lo, hi;
    if (std::holds_alternative<MatchSamplesObjective>(cfg.objective)) {
        const auto& ms = std::get<MatchSamplesObjective>(cfg.objective);
        lo = ms.window_lo;
        hi = ms.window_hi;
    } else {
        const Rational at = std::get<MaximizeAtObjective>(cfg.objective).at;
        lo = std::min(Rational(0), at) - 1;
        hi = std::max(Rational(0), at) + 1;
    }
    for (std::size_t i = 1; i < cfg.segments; ++i)
        t.breakpoints.push_back(lo + Rational(i) * (hi - lo) / Rational(cfg.segments));

    if (std::holds_alternative<MatchSamplesObjective>(cfg.objective) && !prob.points.empty()) {
        // secant slopes of the sampled value function over the k uniform cells
        auto sample_near = [&](const Rational& v) -> std::optional<Rational> {
            const Rational step = std::get<MatchSamplesObjective>(cfg.objective).grid_step;
            std::size_t best = 0;
            Rational best_dist = abs_rat(prob.points[0].first - v);
            for (std::size_t i = 1; i < prob.points.size(); ++i) {
                Rational dist = abs_rat(prob.points[i].first - v);
                if (dist < best_dist) {
                    best = i;
                    best_dist = dist;
                }
            }
            if (best_dist > step) return std::nullopt; // nearest sample too far off
            return prob.points[best].second;
        };
        for (std::size_t i = 0; i < cfg.segments; ++i) {
            Rational cell_lo = lo + Rational(i) * (hi - lo) / Rational(cfg.segments);
            Rational cell_hi = lo + Rational(i + 1) * (hi - lo) / Rational(cfg.segments);
            auto zl = sample_near(cell_lo);
            auto zr = sample_near(cell_hi);
            if (zl && zr) t.slopes[i] = (*zr - *zl) / (cell_hi - cell_lo);
        }
    }
    return t;
}

inline bool result_improves(const FitProblem& prob, const Rational& cand_obj, const Rational& cand_violation,
                            const Rational& best_obj, const Rational& best_violation, bool have_best) {
    if (!have_best) return true;
    if (std::holds_alternative<MatchSamplesObjective>(prob.cfg.objective)) return cand_obj < best_obj;
    // MaximizeAt: exact feasibility first, then the (negated) objective
    if ((cand_violation == 0) != (best_violation == 0)) return cand_violation == 0;
    if (cand_violation == 0) return cand_obj < best_obj; // obj = -f(b*) + 0
    return cand_obj < best_obj;
}

inline FitResult fit_from(const FitProblem& prob, SegmentedParam theta) {
    const FitConfig& cfg = prob.cfg;
    FitResult result;
    std::sort(theta.breakpoints.begin(), theta.breakpoints.end());

    SegmentedParam best = theta;
    Rational best_obj;
    Rational best_violation;
    bool have_best = false;

    auto flatten = [](const SegmentedParam& t) {
        std::vector<Rational> v = t.slopes;
        v.insert(v.end(), t.breakpoints.begin(), t.breakpoints.end());
        return v;
    };

    const bool maximize = std::holds_alternative<MaximizeAtObjective>(cfg.objective);
    for (std::size_t k = 0; k <= cfg.steps; ++k) {
        ValueWithPartials obj = fit_objective(prob, theta);
        Rational violation = maximize ? violation_of(prob, theta) : Rational(0);
        result.trace.iterates.push_back(flatten(theta));
        result.trace.objective_values.push_back(obj.value);
        if (result_improves(prob, obj.value, violation, best_obj, best_violation, have_best)) {
            best = theta;
            best_obj = obj.value;
            best_violation = violation;
            have_best = true;
        }
        if (k == cfg.steps) break;

        std::vector<Rational> g(obj.d.size());
        bool stationary = true;
        for (std::size_t i = 0; i < obj.d.size(); ++i) {
            g[i] = select(obj.d[i], cfg.rule);
            if (g[i] != 0) stationary = false;
        }
        if (stationary) {
            result.trace.halted_stationary = true;
            break;
        }
        const Rational alpha = cfg.schedule.at(k);
        result.trace.chosen.push_back(g);
        result.trace.step_sizes.push_back(alpha);
        for (std::size_t i = 0; i < cfg.segments; ++i) theta.slopes[i] -= alpha * g[i];
        for (std::size_t j = 0; j + 1 < cfg.segments; ++j) theta.breakpoints[j] -= alpha * g[cfg.segments + j];
        std::sort(theta.breakpoints.begin(), theta.breakpoints.end()); // keep ordering
    }

    result.param = best;
    result.function = best.induced();
    if (prob.mip) result.report = check_dual_feasible(result.function, *prob.mip, cfg.mode, cfg.seed);
    result.chosen_k = cfg.segments;
    for (const auto& [b, z] : prob.points) result.samples.emplace_back(b, z);
    if (maximize) {
        result.residual = violation_of(prob, best);
    } else {
        result.residual = best_obj;
    }
    result.non_convergence = result.residual > cfg.tolerance;
    return result;
}

} // namespace detail

/// Fit a k-segment subadditive dual candidate to a one-row model by
/// conservative subgradient iteration. Returns the best iterate (lowest match
/// error, or for MaximizeAt the largest certified-feasible objective), the
/// dual-feasibility report of the returned function, and the full trace.
inline FitResult fit(const ConicMip& mip, const FitConfig& cfg) {
    detail::FitProblem prob = detail::build_problem(mip, cfg);
    return detail::fit_from(prob, detail::default_init(prob));
}

/// Plain sample matching against given (b, value) points, without any model
/// or dual constraints. Used to approximate sampled value-function landscapes
/// (for instance a training MILP swept along a rhs direction).
struct SampleFitConfig {
    std::size_t segments = 2;
    std::size_t steps = 1280;
    StepSchedule schedule = StepSchedule::geometric(Rational(1, 8), Rational(1, 2), 64);
    SelectionRule rule = SelectionRule::LeastNorm;
    std::uint64_t seed = 20240901;
    Rational tolerance = Rational(1, 1000000);
};

struct SampleFitResult {
    PwlFunction function;
    SegmentedParam param;
    VectorTrace trace;
    Rational residual = 0;
    bool non_convergence = false;
};

inline SampleFitResult fit_samples(const std::vector<std::pair<Rational, Rational>>& points,
                                   const SampleFitConfig& cfg) {
    if (points.empty()) throw ShapeMismatch("sample fit needs at least one point");
    Rational lo = points.front().first, hi = points.front().first;
    for (const auto& [b, z] : points) {
        if (b < lo) lo = b;
        if (b > hi) hi = b;
    }
    if (lo == hi) {
        lo -= 1;
        hi += 1;
    }
    detail::FitProblem prob;
    prob.cfg.segments = cfg.segments;
    prob.cfg.steps = cfg.steps;
    prob.cfg.schedule = cfg.schedule;
    prob.cfg.rule = cfg.rule;
    prob.cfg.seed = cfg.seed;
    prob.cfg.tolerance = cfg.tolerance;
    prob.cfg.objective = MatchSamplesObjective{lo, hi, (hi - lo) / Rational(points.size())};
    prob.points = points;
    prob.window_lo = std::min(lo, Rational(0));
    prob.window_hi = std::max(hi, Rational(0));
    detail::validate_config(prob.cfg);
    FitResult full = detail::fit_from(prob, detail::default_init(prob));
    return {full.function, full.param, full.trace, full.residual, full.non_convergence};
}

/// Outer refinement over the segment count: k = cfg.segments .. k_max, each
/// round warm-started from the previous round's result with one extra
/// breakpoint at the worst sample (MatchSamples) or at the most violated
/// constraint point (MaximizeAt). The warm start reproduces the previous
/// function exactly, so the best residual is nonincreasing in k; ties keep
/// the lowest k.
inline FitResult refine(const ConicMip& mip, const FitConfig& cfg, std::size_t k_max) {
    if (k_max < cfg.segments) throw ShapeMismatch("k_max must be >= the starting segment count");
    FitResult best = fit(mip, cfg);
    FitResult prev = best;
    for (std::size_t k = cfg.segments + 1; k <= k_max; ++k) {
        // choose the split point from the previous result
        Rational split = 0;
        bool found = false;
        if (std::holds_alternative<MatchSamplesObjective>(cfg.objective)) {
            Rational worst = -1;
            for (const auto& [b, z] : prev.samples) {
                if (!z) continue;
                if (prev.function.is_breakpoint(b)) continue;
                Rational err = abs_rat(prev.function.eval(b) - *z);
                if (err > worst) {
                    worst = err;
                    split = b;
                    found = true;
                }
            }
        } else {
            Rational worst = 0;
            for (const auto& entry : prev.report.entries) {
                if (entry.satisfied || entry.constraint.kind != DualKind::Value) continue;
                Rational err = abs_rat(entry.lhs - entry.constraint.bound);
                if (err > worst && !prev.function.is_breakpoint(entry.constraint.point)) {
                    worst = err;
                    split = entry.constraint.point;
                    found = true;
                }
            }
            if (!found) {
                Rational at = std::get<MaximizeAtObjective>(cfg.objective).at;
                split = at / 2;
                found = !prev.function.is_breakpoint(split);
            }
        }

        FitConfig cfg_k = cfg;
        cfg_k.segments = k;
        detail::FitProblem prob = detail::build_problem(mip, cfg_k);

        SegmentedParam init;
        if (found) {
            // duplicate the slope of the segment containing the split point,
            // which reproduces the previous function exactly
            std::size_t idx = 0;
            for (std::size_t j = 0; j + 1 < prev.param.slopes.size(); ++j)
                if (prev.param.breakpoints[j] < split) idx = j + 1;
            init.slopes = prev.param.slopes;
            init.slopes.insert(init.slopes.begin() + static_cast<std::ptrdiff_t>(idx), prev.param.slopes[idx]);
            init.breakpoints = prev.param.breakpoints;
            init.breakpoints.push_back(split);
            std::sort(init.breakpoints.begin(), init.breakpoints.end());
        } else {
            init = detail::default_init(prob);
        }

        FitResult cand = detail::fit_from(prob, init);
        prev = cand;
        bool better;
        if (std::holds_alternative<MatchSamplesObjective>(cfg.objective)) {
            better = cand.residual < best.residual;
        } else {
            bool cand_feas = cand.residual == 0;
            bool best_feas = best.residual == 0;
            if (cand_feas != best_feas)
                better = cand_feas;
            else
                better = cand.function.eval(std::get<MaximizeAtObjective>(cfg.objective).at) >
                         best.function.eval(std::get<MaximizeAtObjective>(cfg.objective).at);
        }
        if (better) best = cand;
    }
    return best;
}

} // namespace subdual

#endif // SUBDUAL_DUALFIT_HPP
