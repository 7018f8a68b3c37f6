#ifndef SUBDUAL_IO_HPP
#define SUBDUAL_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subdual/autodiff.hpp"
#include "subdual/bnn.hpp"
#include "subdual/dualcheck.hpp"
#include "subdual/model.hpp"
#include "subdual/pwl.hpp"
#include "subdual/rational.hpp"
#include "subdual/solve.hpp"

namespace subdual {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// exact rationals in JSON: integers or "p/q" strings; floating-point literals
// are rejected so no value can silently lose exactness

inline Rational rational_from_json(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(static_cast<long long>(v.get<std::int64_t>()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_float())
        throw ParseError(where + ": floating-point literals are not accepted, write \"p/q\" instead");
    throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

inline json rational_to_json(const Rational& r) {
    if (is_integer(r) && abs_rat(r) <= Rational(1000000000)) return json(static_cast<std::int64_t>(numerator(r)));
    return json(format_rational(r));
}

inline std::vector<Rational> rational_vector_from_json(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(rational_from_json(arr[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline json rational_vector_to_json(const std::vector<Rational>& v) {
    json arr = json::array();
    for (const Rational& r : v) arr.push_back(rational_to_json(r));
    return arr;
}

// ---------------------------------------------------------------------------
// model files

inline json bounds_to_json(const Bounds& b) {
    json pair = json::array();
    pair.push_back(rational_to_json(b.lower));
    pair.push_back(b.upper ? rational_to_json(*b.upper) : json("inf"));
    return pair;
}

inline Bounds bounds_from_json(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw ParseError(where + ": expected [lower, upper]");
    Bounds b;
    b.lower = rational_from_json(v[0], where + ".lower");
    if (v[1].is_string() && v[1].get<std::string>() == "inf")
        b.upper.reset();
    else
        b.upper = rational_from_json(v[1], where + ".upper");
    return b;
}

inline json model_to_json(const ConicMip& mip) {
    json j;
    j["num_rows"] = mip.num_rows;
    j["objective_sense"] = "min";
    json senses = json::array();
    for (RowSense s : mip.row_sense) senses.push_back(s == RowSense::GreaterEq ? ">=" : "=");
    j["senses"] = senses;
    json A = json::array(), G = json::array();
    for (const auto& row : mip.A) A.push_back(rational_vector_to_json(row));
    for (const auto& row : mip.G) G.push_back(rational_vector_to_json(row));
    j["A"] = A;
    j["G"] = G;
    j["b"] = rational_vector_to_json(mip.b);
    j["c"] = rational_vector_to_json(mip.c);
    j["d"] = rational_vector_to_json(mip.d);
    json ib = json::array(), cb = json::array();
    for (const Bounds& bd : mip.int_bounds) ib.push_back(bounds_to_json(bd));
    for (const Bounds& bd : mip.cont_bounds) cb.push_back(bounds_to_json(bd));
    j["int_bounds"] = ib;
    j["cont_bounds"] = cb;
    return j;
}

inline ConicMip model_from_json(const json& j) {
    ConicMip mip;
    if (!j.is_object()) throw ParseError("model: expected a JSON object");
    if (j.contains("objective_sense") && j["objective_sense"] != "min")
        throw ParseError("model.objective_sense: only \"min\" is supported");
    mip.num_rows = j.at("num_rows").get<std::size_t>();
    for (const json& s : j.at("senses")) {
        std::string text = s.get<std::string>();
        if (text == ">=")
            mip.row_sense.push_back(RowSense::GreaterEq);
        else if (text == "=")
            mip.row_sense.push_back(RowSense::Eq);
        else
            throw ParseError("model.senses: unknown sense '" + text + "'");
    }
    for (std::size_t i = 0; i < j.at("A").size(); ++i)
        mip.A.push_back(rational_vector_from_json(j["A"][i], "model.A[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < j.at("G").size(); ++i)
        mip.G.push_back(rational_vector_from_json(j["G"][i], "model.G[" + std::to_string(i) + "]"));
    mip.b = rational_vector_from_json(j.at("b"), "model.b");
    mip.c = rational_vector_from_json(j.at("c"), "model.c");
    mip.d = rational_vector_from_json(j.at("d"), "model.d");
    if (j.contains("int_bounds"))
        for (std::size_t i = 0; i < j["int_bounds"].size(); ++i)
            mip.int_bounds.push_back(bounds_from_json(j["int_bounds"][i], "model.int_bounds"));
    else
        mip.int_bounds.assign(mip.c.size(), nonnegative_unbounded());
    if (j.contains("cont_bounds"))
        for (std::size_t i = 0; i < j["cont_bounds"].size(); ++i)
            mip.cont_bounds.push_back(bounds_from_json(j["cont_bounds"][i], "model.cont_bounds"));
    else
        mip.cont_bounds.assign(mip.d.size(), nonnegative_unbounded());
    return mip;
}

// ---------------------------------------------------------------------------
// dataset files

inline json dataset_to_json(const BnnArchitecture& arch, const Dataset& data) {
    json j;
    j["layer_sizes"] = arch.layer_sizes;
    j["loss"] = arch.loss == LossKind::ZeroOne ? "zero_one" : "absolute_linear";
    j["radius"] = rational_to_json(data.radius);
    json inputs = json::array(), labels = json::array();
    for (const auto& x : data.inputs) inputs.push_back(rational_vector_to_json(x));
    for (const auto& y : data.labels) labels.push_back(y);
    j["inputs"] = inputs;
    j["labels"] = labels;
    return j;
}

inline std::pair<BnnArchitecture, Dataset> dataset_from_json(const json& j) {
    BnnArchitecture arch;
    Dataset data;
    arch.layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
    std::string loss = j.at("loss").get<std::string>();
    if (loss == "zero_one")
        arch.loss = LossKind::ZeroOne;
    else if (loss == "absolute_linear")
        arch.loss = LossKind::AbsoluteLinear;
    else
        throw ParseError("dataset.loss: unknown loss '" + loss + "'");
    data.radius = rational_from_json(j.at("radius"), "dataset.radius");
    for (std::size_t i = 0; i < j.at("inputs").size(); ++i)
        data.inputs.push_back(rational_vector_from_json(j["inputs"][i], "dataset.inputs[" + std::to_string(i) + "]"));
    for (const json& y : j.at("labels")) data.labels.push_back(y.get<std::vector<int>>());
    validate_dataset(arch, data);
    return {arch, data};
}

// ---------------------------------------------------------------------------
// piecewise-linear function files: leftmost slope plus ordered
// (breakpoint, slope-after) pairs

inline json pwl_to_json(const PwlFunction& f) {
    json j;
    j["leftmost_slope"] = rational_to_json(f.slopes().front());
    json pieces = json::array();
    for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
        json piece;
        piece["breakpoint"] = rational_to_json(f.breakpoints()[i]);
        piece["slope_after"] = rational_to_json(f.slopes()[i + 1]);
        pieces.push_back(piece);
    }
    j["pieces"] = pieces;
    return j;
}

inline PwlFunction pwl_from_json(const json& j) {
    std::vector<Rational> slopes{rational_from_json(j.at("leftmost_slope"), "pwl.leftmost_slope")};
    std::vector<Rational> breakpoints;
    for (const json& piece : j.at("pieces")) {
        breakpoints.push_back(rational_from_json(piece.at("breakpoint"), "pwl.breakpoint"));
        slopes.push_back(rational_from_json(piece.at("slope_after"), "pwl.slope_after"));
    }
    return PwlFunction(std::move(slopes), std::move(breakpoints));
}

// ---------------------------------------------------------------------------
// trained-weights files

inline json weights_to_json(const BnnArchitecture& arch, const WeightAssignment& w) {
    json j;
    j["layer_sizes"] = arch.layer_sizes;
    json layers = json::array();
    for (const auto& mat : w.weights) {
        json rows = json::array();
        for (const auto& row : mat) rows.push_back(rational_vector_to_json(row));
        layers.push_back(rows);
    }
    j["weights"] = layers;
    j["thresholds"] = rational_vector_to_json(w.thresholds);
    return j;
}

// ---------------------------------------------------------------------------
// encoded-model files: the model document plus the column map

inline json encoded_to_json(const EncodedMilp& enc) {
    json j;
    j["model"] = model_to_json(enc.mip);
    j["epsilon"] = rational_to_json(enc.epsilon);
    json map;
    map["m1"] = rational_to_json(enc.m1);
    map["mk"] = rational_vector_to_json(enc.mk);
    map["u"] = enc.map.u;
    map["w"] = enc.map.w;
    map["lambda"] = enc.map.lambda;
    map["s"] = enc.map.s;
    if (!enc.map.z.empty()) map["z"] = enc.map.z;
    if (!enc.map.abs_delta.empty()) {
        map["abs_delta"] = enc.map.abs_delta;
        map["abs_p"] = enc.map.abs_p;
        map["abs_q"] = enc.map.abs_q;
    }
    j["var_map"] = map;
    j["layer_sizes"] = enc.arch.layer_sizes;
    j["loss"] = enc.arch.loss == LossKind::ZeroOne ? "zero_one" : "absolute_linear";
    j["num_samples"] = enc.num_samples;
    return j;
}

// ---------------------------------------------------------------------------
// CSV emission; exact "p/q" plus decimal convenience columns

inline std::string sweep_to_csv(const ValueFunctionSamples& samples) {
    std::ostringstream os;
    os << "offset,value,status,offset_decimal,value_decimal\n";
    for (std::size_t i = 0; i < samples.offsets.size(); ++i) {
        os << format_rational(samples.offsets[i]) << ",";
        if (samples.values[i])
            os << format_rational(*samples.values[i]) << ",optimal," << decimal_approx(samples.offsets[i]) << ","
               << decimal_approx(*samples.values[i]);
        else
            os << ",infeasible," << decimal_approx(samples.offsets[i]) << ",";
        os << "\n";
    }
    return os.str();
}

inline std::string pwl_to_csv(const PwlFunction& f, const std::vector<Rational>& points) {
    std::ostringstream os;
    os << "b,f_b,b_decimal,f_b_decimal\n";
    for (const Rational& b : points) {
        Rational v = f.eval(b);
        os << format_rational(b) << "," << format_rational(v) << "," << decimal_approx(b) << ","
           << decimal_approx(v) << "\n";
    }
    return os.str();
}

inline std::string trace_to_csv(const IterationTrace& trace) {
    std::ostringstream os;
    os << "k,v_k,g_k,alpha_k,objective\n";
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
        os << k << "," << format_rational(trace.iterates[k]) << ",";
        if (k < trace.chosen.size())
            os << format_rational(trace.chosen[k]) << "," << format_rational(trace.step_sizes[k]);
        else
            os << ",";
        os << "," << format_rational(trace.objective_values[k]) << "\n";
    }
    return os.str();
}

inline std::string join_components(const std::vector<Rational>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += format_rational(v[i]);
    }
    return out;
}

inline std::string trace_to_csv(const VectorTrace& trace) {
    std::ostringstream os;
    os << "k,v_k,g_k,alpha_k,objective\n";
    for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
        os << k << "," << join_components(trace.iterates[k]) << ",";
        if (k < trace.chosen.size())
            os << join_components(trace.chosen[k]) << "," << format_rational(trace.step_sizes[k]);
        else
            os << ",";
        os << "," << format_rational(trace.objective_values[k]) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// small file helpers

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

inline void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

} // namespace subdual

#endif // SUBDUAL_IO_HPP
