// Command-line surface of the toolkit. Every subcommand writes a
// machine-readable artifact (JSON report or CSV) and prints a short human
// summary on stdout. Exit codes: 0 success, 1 negative outcome (infeasible
// model, failed certificate, non-convergent fit, validation findings),
// 2 input errors.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subdual/subdual.hpp"

using namespace subdual;

namespace {

struct GridSpec {
    Rational lo, hi, step;
};

GridSpec parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw ParseError("grid must be lo:hi:step, got '" + text + "'");
    GridSpec g{parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])};
    if (!(g.lo < g.hi) || g.step <= 0) throw ParseError("grid needs lo < hi and step > 0: '" + text + "'");
    return g;
}

std::vector<Rational> grid_points(const GridSpec& g) {
    std::vector<Rational> points;
    for (Rational v = g.lo; v <= g.hi; v += g.step) points.push_back(v);
    return points;
}

std::vector<Rational> parse_direction(const std::string& text) {
    std::vector<Rational> dir;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            dir.push_back(parse_rational(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    dir.push_back(parse_rational(cur));
    return dir;
}

SelectionRule parse_rule(const std::string& name) {
    if (name == "leftslope") return SelectionRule::LeftSlope;
    if (name == "rightslope") return SelectionRule::RightSlope;
    if (name == "midpoint") return SelectionRule::Midpoint;
    if (name == "leastnorm") return SelectionRule::LeastNorm;
    throw ParseError("unknown selection rule '" + name + "'");
}

DualMode parse_mode(const std::string& name) {
    if (name == "inequality") return DualMode::Inequality;
    if (name == "equality") return DualMode::Equality;
    throw ParseError("unknown dual mode '" + name + "'");
}

json dual_report_to_json(const DualCheckReport& report) {
    json j;
    json entries = json::array();
    for (const DualCheckEntry& e : report.entries) {
        json entry;
        entry["constraint"] = e.constraint.to_string();
        entry["lhs"] = rational_to_json(e.lhs);
        entry["bound"] = rational_to_json(e.constraint.bound);
        entry["satisfied"] = e.satisfied;
        entries.push_back(entry);
    }
    j["entries"] = entries;
    j["subadditive"] = report.subadditivity.subadditive;
    if (report.subadditivity.witness) {
        j["subadditivity_witness"] = json::array(
            {rational_to_json(report.subadditivity.witness->first),
             rational_to_json(report.subadditivity.witness->second)});
    }
    if (report.monotone.has_value())
        j["monotone"] = *report.monotone;
    else
        j["monotone"] = "skipped (not an all-GreaterEq model)";
    j["anchor_ok"] = report.anchor_ok;
    j["window"] = json::array({rational_to_json(report.window_lo), rational_to_json(report.window_hi)});
    j["feasible"] = report.feasible;
    return j;
}

json solution_to_json(const MipSolution& sol) {
    json j;
    j["status"] = sol.status == SolveStatus::Optimal     ? "optimal"
                  : sol.status == SolveStatus::Infeasible ? "infeasible"
                                                          : "unbounded";
    if (sol.status == SolveStatus::Optimal) {
        j["objective"] = rational_to_json(sol.objective);
        j["objective_decimal"] = decimal_approx(sol.objective);
        j["x"] = rational_vector_to_json(sol.x);
        j["y"] = rational_vector_to_json(sol.y);
    }
    return j;
}

json fit_to_json(const FitResult& r) {
    json j;
    j["segments"] = r.chosen_k;
    json slopes = json::array(), bps = json::array();
    for (const Rational& s : r.function.slopes()) slopes.push_back(rational_to_json(s));
    for (const Rational& p : r.function.breakpoints()) bps.push_back(rational_to_json(p));
    j["slopes"] = slopes;
    j["breakpoints"] = bps;
    j["residual"] = rational_to_json(r.residual);
    j["residual_decimal"] = decimal_approx(r.residual);
    j["non_convergence"] = r.non_convergence;
    j["dual_check"] = dual_report_to_json(r.report);
    return j;
}

std::string fit_samples_csv(const FitResult& r) {
    std::ostringstream os;
    os << "b,z_b,f_b,z_b_decimal,f_b_decimal\n";
    for (const auto& [b, z] : r.samples) {
        Rational f = r.function.eval(b);
        os << format_rational(b) << ",";
        if (z)
            os << format_rational(*z) << "," << format_rational(f) << "," << decimal_approx(*z) << ","
               << decimal_approx(f);
        else
            os << "," << format_rational(f) << ",," << decimal_approx(f);
        os << "\n";
    }
    return os.str();
}

int run_validate(const std::string& model_path, const std::string& out_path) {
    ConicMip mip = model_from_json(load_json_file(model_path));
    ValidationReport report = validate(mip);
    json j;
    j["violations"] = report;
    write_json_file(out_path, j);
    if (report.empty()) {
        std::cout << "model ok: " << mip.num_rows << " rows, " << mip.n1() << " integer + " << mip.n2()
                  << " continuous columns\n";
        return 0;
    }
    std::cout << report.size() << " violation(s):\n";
    for (const std::string& v : report) std::cout << "  - " << v << "\n";
    return 1;
}

int run_solve(const std::string& model_path, const std::string& out_path) {
    ConicMip mip = model_from_json(load_json_file(model_path));
    MipSolution sol = solve_mip(mip);
    write_json_file(out_path, solution_to_json(sol));
    if (sol.status == SolveStatus::Optimal) {
        std::cout << "optimal objective " << format_rational(sol.objective) << " ("
                  << decimal_approx(sol.objective) << ")\n";
        return 0;
    }
    std::cout << (sol.status == SolveStatus::Infeasible ? "infeasible\n" : "unbounded\n");
    return 1;
}

int run_sweep(const std::string& model_path, const std::string& grid, const std::string& direction,
              const std::string& out_path) {
    ConicMip mip = model_from_json(load_json_file(model_path));
    GridSpec g = parse_grid(grid);
    std::vector<Rational> dir;
    if (direction.empty())
        dir.assign(mip.num_rows, Rational(1));
    else
        dir = parse_direction(direction);
    ValueFunctionSamples sweep = value_sweep(mip, dir, grid_points(g));
    write_text_file(out_path, sweep_to_csv(sweep));
    std::size_t feasible = 0;
    for (const auto& v : sweep.values)
        if (v) ++feasible;
    std::cout << "swept " << sweep.offsets.size() << " offsets (" << feasible << " feasible) -> " << out_path
              << "\n";
    return 0;
}

int run_encode(const std::string& dataset_path, const std::string& epsilon, const std::string& out_path) {
    auto [arch, data] = dataset_from_json(load_json_file(dataset_path));
    EncodedMilp enc = encode(arch, data, parse_rational(epsilon));
    write_json_file(out_path, encoded_to_json(enc));
    std::cout << "encoded " << data.inputs.size() << " samples into a MILP with " << enc.mip.num_rows
              << " rows, " << enc.mip.n1() << " integer + " << enc.mip.n2() << " continuous columns -> "
              << out_path << "\n";
    return 0;
}

int run_train(const std::string& dataset_path, const std::string& epsilon, bool via_dual,
              const std::string& grid, std::size_t segments, std::size_t steps, std::uint64_t seed,
              const std::string& out_path) {
    auto [arch, data] = dataset_from_json(load_json_file(dataset_path));
    EncodedMilp enc = encode(arch, data, parse_rational(epsilon));

    if (via_dual) {
        // value-function route: sweep the training MILP along the first row's
        // rhs and fit a k-segment approximation to the sampled loss landscape
        GridSpec g = parse_grid(grid);
        std::vector<Rational> dir(enc.mip.num_rows, Rational(0));
        dir[0] = 1;
        ValueFunctionSamples sweep = value_sweep(enc.mip, dir, grid_points(g));
        std::vector<std::pair<Rational, Rational>> points;
        for (std::size_t i = 0; i < sweep.offsets.size(); ++i)
            if (sweep.values[i]) points.emplace_back(sweep.offsets[i], *sweep.values[i]);
        SampleFitConfig cfg;
        cfg.segments = segments;
        cfg.steps = steps;
        cfg.seed = seed;
        SampleFitResult fitres = fit_samples(points, cfg);
        json j;
        j["mode"] = "via-dual";
        json slopes = json::array(), bps = json::array();
        for (const Rational& s : fitres.function.slopes()) slopes.push_back(rational_to_json(s));
        for (const Rational& p : fitres.function.breakpoints()) bps.push_back(rational_to_json(p));
        j["slopes"] = slopes;
        j["breakpoints"] = bps;
        j["match_error"] = rational_to_json(fitres.residual);
        j["loss_at_zero_offset"] = rational_to_json(fitres.function.eval(0));
        write_json_file(out_path, j);
        std::cout << "via-dual: fitted " << segments << "-segment landscape approximation, match error "
                  << decimal_approx(fitres.residual) << " -> " << out_path << "\n";
        return fitres.non_convergence ? 1 : 0;
    }

    MipSolution sol = solve_mip(enc.mip);
    if (sol.status != SolveStatus::Optimal) {
        std::cout << "training MILP infeasible\n";
        return 1;
    }
    TrainingDecode dec = decode(sol, enc);
    json j = weights_to_json(arch, dec.weights);
    j["loss"] = rational_to_json(dec.loss);
    json preds = json::array();
    for (const auto& p : dec.predictions) preds.push_back(p);
    j["predictions"] = preds;
    write_json_file(out_path, j);
    std::cout << "trained to optimal loss " << format_rational(dec.loss) << " on " << data.inputs.size()
              << " samples -> " << out_path << "\n";
    return 0;
}

int run_dual_check(const std::string& model_path, const std::string& pwl_path, const std::string& mode,
                   std::uint64_t seed, const std::string& out_path) {
    ConicMip mip = model_from_json(load_json_file(model_path));
    PwlFunction f = pwl_from_json(load_json_file(pwl_path));
    DualCheckReport report = check_dual_feasible(f, mip, parse_mode(mode), seed);
    write_json_file(out_path, dual_report_to_json(report));
    std::cout << (report.feasible ? "dual feasible" : "NOT dual feasible") << "; constraints:\n";
    for (const DualCheckEntry& e : report.entries)
        std::cout << "  " << e.constraint.to_string() << "  lhs = " << format_rational(e.lhs)
                  << (e.satisfied ? "  ok" : "  VIOLATED") << "\n";
    if (!report.subadditivity.subadditive && report.subadditivity.witness)
        std::cout << "  subadditivity fails at x = " << format_rational(report.subadditivity.witness->first)
                  << ", y = " << format_rational(report.subadditivity.witness->second) << "\n";
    return report.feasible ? 0 : 1;
}

int run_dual_fit(const std::string& model_path, std::size_t segments, const std::string& grid,
                 const std::string& maximize_at, std::size_t steps, std::uint64_t seed,
                 const std::string& penalty, const std::string& tolerance, const std::string& mode,
                 const std::string& rule, const std::string& out_prefix) {
    ConicMip mip = model_from_json(load_json_file(model_path));
    FitConfig cfg;
    cfg.segments = segments;
    cfg.steps = steps;
    cfg.seed = seed;
    cfg.penalty_weight = parse_rational(penalty);
    cfg.tolerance = parse_rational(tolerance);
    cfg.mode = parse_mode(mode);
    cfg.rule = parse_rule(rule);
    if (!maximize_at.empty()) {
        cfg.objective = MaximizeAtObjective{parse_rational(maximize_at)};
    } else {
        GridSpec g = parse_grid(grid);
        cfg.objective = MatchSamplesObjective{g.lo, g.hi, g.step};
    }
    FitResult r = fit(mip, cfg);
    write_json_file(out_prefix + "_report.json", fit_to_json(r));
    write_text_file(out_prefix + "_samples.csv", fit_samples_csv(r));
    write_text_file(out_prefix + "_trace.csv", trace_to_csv(r.trace));
    std::cout << "fit " << segments << " segment(s): residual " << decimal_approx(r.residual) << ", dual "
              << (r.report.feasible ? "feasible" : "infeasible") << " -> " << out_prefix << "_report.json\n";
    return r.non_convergence ? 1 : 0;
}

int run_example(const std::string& sweep_grid, const std::string& out_prefix) {
    ConicMip model = ralphs_example(); // rhs 1, the strong-duality probe
    json report;

    GridSpec g = parse_grid(sweep_grid);
    ValueFunctionSamples sweep = value_sweep(ralphs_example(0), {Rational(1)}, grid_points(g));
    write_text_file(out_prefix + "_sweep.csv", sweep_to_csv(sweep));
    std::cout << "value function: " << sweep.offsets.size() << " samples -> " << out_prefix << "_sweep.csv\n";

    json constraints = json::array();
    for (const DualConstraint& c : generate_dual_constraints(model, DualMode::Inequality))
        constraints.push_back(c.to_string());
    report["dual_constraints"] = constraints;
    std::cout << "subadditive dual constraints:";
    for (const json& c : constraints) std::cout << "  " << c.get<std::string>();
    std::cout << "\n";

    PwlFunction ftilde = ralphs_two_segment_approx();
    report["approx"] = pwl_to_json(ftilde);
    report["approx_values"] = {{"f(1/4)", rational_to_json(ftilde.eval(Rational(1, 4)))},
                               {"f(-2)", rational_to_json(ftilde.eval(Rational(-2)))},
                               {"fbar(1)", rational_to_json(upper_dir_derivative(ftilde, 1))},
                               {"fbar(-1)", rational_to_json(upper_dir_derivative(ftilde, -1))}};

    ConservativeField D = field(ftilde);
    auto interval_json = [&](const Rational& x) {
        SlopeInterval iv = D.at(x);
        return json::array({rational_to_json(iv.lo), rational_to_json(iv.hi)});
    };
    report["conservative_field"] = {{"b>0", interval_json(Rational(1))},
                                    {"b=0", interval_json(Rational(0))},
                                    {"b<0", interval_json(Rational(-1))}};
    std::cout << "conservative field of the two-segment approximation: {2} for b>0, [-1,2] at 0, {-1} for b<0\n";

    FitConfig match_cfg;
    match_cfg.segments = 2;
    match_cfg.objective = MatchSamplesObjective{Rational(-1, 2), Rational(1, 2), Rational(1, 20)};
    FitResult match = fit(model, match_cfg);
    report["match_fit"] = fit_to_json(match);
    std::cout << "two-segment match fit on [-1/2, 1/2]: slopes ("
              << format_rational(match.function.slope_right_at(0)) << ", "
              << format_rational(match.function.slope_left_at(0)) << "), breakpoint "
              << format_rational(match.function.breakpoints().empty() ? Rational(0)
                                                                      : match.function.breakpoints()[0])
              << "\n";

    FitConfig max_cfg;
    max_cfg.segments = 2;
    max_cfg.objective = MaximizeAtObjective{Rational(1)};
    FitResult maxfit = fit(model, max_cfg);
    report["maximize_fit"] = fit_to_json(maxfit);
    MipSolution primal = solve_mip(model);
    report["strong_duality"] = {{"z_star", rational_to_json(primal.objective)},
                                {"f_at_1", rational_to_json(maxfit.function.eval(1))}};
    std::cout << "strong duality at b = 1: z* = " << format_rational(primal.objective)
              << ", fitted dual value = " << format_rational(maxfit.function.eval(1)) << "\n";
    if (maxfit.report.feasible) {
        Rational gap = weak_duality_gap(maxfit.function, model, primal);
        report["duality_gap"] = rational_to_json(gap);
        std::cout << "certified weak-duality gap: " << format_rational(gap) << "\n";
    }

    write_json_file(out_prefix + "_report.json", report);
    std::cout << "report -> " << out_prefix << "_report.json\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact MILP duality toolkit: rational solving, subadditive dual functions, "
                 "conservative-field fitting, binarized-network training"};
    app.require_subcommand(1);

    std::string model_path, dataset_path, pwl_path, out_path, grid, direction, maximize_at;
    std::string epsilon = "1/1000000";
    std::string mode = "inequality", rule = "leastnorm";
    std::string penalty = "4", tolerance = "1/1000000";
    std::uint64_t seed = 20240901;
    std::size_t steps = 1280, segments = 2;
    bool via_dual = false;

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a model file's invariants");
    validate_cmd->add_option("--model", model_path)->required();
    validate_cmd->add_option("--out", out_path = "validation.json");

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a model exactly by branch and bound");
    solve_cmd->add_option("--model", model_path)->required();
    solve_cmd->add_option("--out", out_path = "solution.json");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "sample the value function along a rhs direction");
    sweep_cmd->add_option("--model", model_path)->required();
    sweep_cmd->add_option("--grid", grid, "offsets lo:hi:step")->required();
    sweep_cmd->add_option("--direction", direction, "comma-separated rationals (default all ones)");
    sweep_cmd->add_option("--out", out_path = "sweep.csv");

    CLI::App* encode_cmd = app.add_subcommand("encode-bnn", "encode a training set as a MILP");
    encode_cmd->add_option("--dataset", dataset_path)->required();
    encode_cmd->add_option("--epsilon", epsilon, "strict-inequality slack (exact rational)");
    encode_cmd->add_option("--out", out_path = "encoded.json");

    CLI::App* train_cmd = app.add_subcommand("train-bnn", "train by encode -> solve -> decode");
    train_cmd->add_option("--dataset", dataset_path)->required();
    train_cmd->add_option("--epsilon", epsilon);
    train_cmd->add_flag("--via-dual", via_dual, "fit the sampled loss landscape instead of exact training");
    train_cmd->add_option("--grid", grid, "rhs offsets for --via-dual");
    train_cmd->add_option("--segments", segments);
    train_cmd->add_option("--steps", steps);
    train_cmd->add_option("--seed", seed);
    train_cmd->add_option("--out", out_path = "trained.json");

    CLI::App* check_cmd = app.add_subcommand("dual-check", "check a piecewise-linear dual candidate");
    check_cmd->add_option("--model", model_path)->required();
    check_cmd->add_option("--pwl", pwl_path)->required();
    check_cmd->add_option("--mode", mode, "inequality|equality");
    check_cmd->add_option("--seed", seed);
    check_cmd->add_option("--out", out_path = "dual_check.json");

    CLI::App* fit_cmd = app.add_subcommand("dual-fit", "fit a k-segment dual function");
    fit_cmd->add_option("--model", model_path)->required();
    fit_cmd->add_option("--segments", segments);
    fit_cmd->add_option("--grid", grid, "MatchSamples window lo:hi:step");
    fit_cmd->add_option("--maximize-at", maximize_at, "switch to the MaximizeAt objective");
    fit_cmd->add_option("--steps", steps);
    fit_cmd->add_option("--seed", seed);
    fit_cmd->add_option("--penalty-weight", penalty);
    fit_cmd->add_option("--tolerance", tolerance);
    fit_cmd->add_option("--mode", mode);
    fit_cmd->add_option("--rule", rule, "leftslope|rightslope|midpoint|leastnorm");
    fit_cmd->add_option("--out", out_path = "dual_fit");

    CLI::App* example_cmd = app.add_subcommand("example-ralphs", "regenerate the bundled example end to end");
    example_cmd->add_option("--sweep", grid = "-2:2:1/8", "value-function grid lo:hi:step");
    example_cmd->add_option("--out", out_path = "ralphs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return run_validate(model_path, out_path);
        if (solve_cmd->parsed()) return run_solve(model_path, out_path);
        if (sweep_cmd->parsed()) return run_sweep(model_path, grid, direction, out_path);
        if (encode_cmd->parsed()) return run_encode(dataset_path, epsilon, out_path);
        if (train_cmd->parsed()) {
            if (via_dual && grid.empty()) {
                std::cerr << "error: --via-dual needs --grid lo:hi:step\n";
                return 2;
            }
            return run_train(dataset_path, epsilon, via_dual, grid, segments, steps, seed, out_path);
        }
        if (check_cmd->parsed()) return run_dual_check(model_path, pwl_path, mode, seed, out_path);
        if (fit_cmd->parsed()) {
            if (maximize_at.empty() && grid.empty()) {
                std::cerr << "error: dual-fit needs --grid or --maximize-at\n";
                return 2;
            }
            return run_dual_fit(model_path, segments, grid, maximize_at, steps, seed, penalty, tolerance, mode,
                                rule, out_path);
        }
        if (example_cmd->parsed()) return run_example(grid, out_path);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
