#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "subdual/dualfit.hpp"
#include "subdual/ralphs.hpp"

using namespace subdual;

TEST_CASE("segmented parameters collapse zero-width segments") {
    SegmentedParam p{{Rational(1), Rational(5), Rational(2)}, {Rational(0), Rational(0)}};
    PwlFunction f = p.induced();
    CHECK(f.slopes() == std::vector<Rational>{Rational(1), Rational(2)});
    CHECK(f.breakpoints() == std::vector<Rational>{Rational(0)});
}

TEST_CASE("two-segment sample match recovers the near-origin approximation") {
    FitConfig cfg;
    cfg.segments = 2;
    cfg.objective = MatchSamplesObjective{Rational(-1, 2), Rational(1, 2), Rational(1, 20)};
    FitResult r = fit(ralphs_example(), cfg);
    CHECK(r.function == ralphs_two_segment_approx());
    CHECK(r.residual == 0);
    CHECK(!r.non_convergence);
    // the initialization already interpolates, so the run is stationary
    CHECK(r.trace.halted_stationary);
    // a near-origin approximation, not a certificate
    CHECK(!r.report.feasible);
}

TEST_CASE("maximize-at fit attains the optimum with a certified function") {
    FitConfig cfg;
    cfg.segments = 2;
    cfg.objective = MaximizeAtObjective{Rational(1)};
    FitResult r = fit(ralphs_example(), cfg);
    CHECK(r.function.eval(1) == Rational(1, 2));
    CHECK(r.report.feasible);
    CHECK(r.residual == 0);
    CHECK(!r.non_convergence);
    MipSolution sol = solve_mip(ralphs_example(1));
    CHECK(weak_duality_gap(r.function, ralphs_example(1), sol) == 0);
}

TEST_CASE("single-segment fit recovers a linear value function") {
    // min y s.t. y >= b, y in [0, 10]: value max(b, 0), slope 1 on b >= 0
    ConicMip lin;
    lin.num_rows = 1;
    lin.A = {{}};
    lin.G = {{Rational(1)}};
    lin.b = {Rational(0)};
    lin.d = {Rational(1)};
    lin.row_sense = {RowSense::GreaterEq};
    lin.cont_bounds = {bounds(0, 10)};
    FitConfig cfg;
    cfg.segments = 1;
    cfg.objective = MatchSamplesObjective{Rational(0), Rational(2), Rational(1, 4)};
    FitResult r = fit(lin, cfg);
    CHECK(r.function == PwlFunction::linear(Rational(1)));
    CHECK(r.residual == 0);
}

TEST_CASE("fit rejects multi-row models and bad configs") {
    ConicMip mip = ralphs_example();
    mip.num_rows = 2;
    mip.A.push_back(mip.A[0]);
    mip.G.push_back(mip.G[0]);
    mip.b.push_back(Rational(0));
    mip.row_sense.push_back(RowSense::GreaterEq);
    CHECK_THROWS_AS(fit(mip, FitConfig{}), MultiRow);

    FitConfig bad;
    bad.penalty_weight = 0;
    CHECK_THROWS_AS(fit(ralphs_example(), bad), ShapeMismatch);
    FitConfig bad2;
    bad2.tolerance = 0;
    CHECK_THROWS_AS(fit(ralphs_example(), bad2), ShapeMismatch);
}

TEST_CASE("identical configs give identical traces") {
    FitConfig cfg;
    cfg.segments = 3;
    cfg.objective = MatchSamplesObjective{Rational(-1), Rational(1), Rational(1, 8)};
    cfg.steps = 40;
    FitResult a = fit(ralphs_example(), cfg);
    FitResult b = fit(ralphs_example(), cfg);
    CHECK(a.trace.iterates == b.trace.iterates);
    CHECK(a.trace.objective_values == b.trace.objective_values);
    CHECK(a.function == b.function);
    CHECK(a.residual == b.residual);
}

TEST_CASE("non-convergence is reported, not hidden") {
    FitConfig cfg;
    cfg.segments = 1; // a single segment cannot match the kinked value function
    cfg.objective = MatchSamplesObjective{Rational(-1, 2), Rational(1, 2), Rational(1, 8)};
    cfg.steps = 30;
    FitResult r = fit(ralphs_example(), cfg);
    CHECK(r.residual > cfg.tolerance);
    CHECK(r.non_convergence);
}

TEST_CASE("refinement never worsens the match error") {
    FitConfig cfg;
    cfg.segments = 2;
    cfg.objective = MatchSamplesObjective{Rational(-2), Rational(2), Rational(1, 8)};
    cfg.steps = 60;
    FitResult base = fit(ralphs_example(0), cfg);
    FitResult refined = refine(ralphs_example(0), cfg, 4);
    CHECK(refined.residual <= base.residual);
    CHECK(refined.chosen_k >= cfg.segments);
    CHECK(refined.chosen_k <= 4);
}

TEST_CASE("refine with k_max equal to k is exactly fit") {
    FitConfig cfg;
    cfg.segments = 2;
    cfg.objective = MatchSamplesObjective{Rational(-1, 2), Rational(1, 2), Rational(1, 20)};
    FitResult a = fit(ralphs_example(), cfg);
    FitResult b = refine(ralphs_example(), cfg, cfg.segments);
    CHECK(a.function == b.function);
    CHECK(a.residual == b.residual);
    CHECK(a.trace.iterates == b.trace.iterates);
}

TEST_CASE("a zero value function fits exactly at every segment count") {
    ConicMip flat;
    flat.num_rows = 1;
    flat.A = {{}};
    flat.G = {{Rational(1)}};
    flat.b = {Rational(0)};
    flat.d = {Rational(0)}; // constant-zero objective
    flat.row_sense = {RowSense::GreaterEq};
    flat.cont_bounds = {bounds(0, 10)};
    for (std::size_t k : {std::size_t(1), std::size_t(2), std::size_t(4)}) {
        FitConfig cfg;
        cfg.segments = k;
        cfg.objective = MatchSamplesObjective{Rational(-1), Rational(1), Rational(1, 4)};
        FitResult r = fit(flat, cfg);
        CHECK(r.function == PwlFunction::zero());
        CHECK(r.residual == 0);
    }
}

TEST_CASE("feasible fits stay below the value function on the sweep") {
    FitConfig cfg;
    cfg.segments = 2;
    cfg.objective = MaximizeAtObjective{Rational(1)};
    FitResult r = fit(ralphs_example(), cfg);
    REQUIRE(r.report.feasible);
    for (int j = 0; j <= 16; ++j) {
        Rational b = Rational(-2) + Rational(j, 4);
        auto z = oracles::ralphs_value(b);
        REQUIRE(z.has_value());
        CHECK(r.function.eval(b) <= *z + cfg.tolerance);
    }
}
