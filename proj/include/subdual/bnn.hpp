#ifndef SUBDUAL_BNN_HPP
#define SUBDUAL_BNN_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "subdual/errors.hpp"
#include "subdual/model.hpp"
#include "subdual/rational.hpp"
#include "subdual/solve.hpp"

namespace subdual {

enum class LossKind { ZeroOne, AbsoluteLinear };

/// Layer sizes (L_0, ..., L_n): real-valued input layer, binary activations
/// everywhere else.
struct BnnArchitecture {
    std::vector<std::size_t> layer_sizes;
    LossKind loss = LossKind::ZeroOne;

    std::size_t depth() const { return layer_sizes.size() - 1; } // weight layers 1..depth
    std::size_t inputs() const { return layer_sizes.front(); }
    std::size_t outputs() const { return layer_sizes.back(); }
};

inline void validate_architecture(const BnnArchitecture& arch) {
    if (arch.layer_sizes.size() < 2) throw ShapeMismatch("architecture needs at least two layers");
    for (std::size_t s : arch.layer_sizes)
        if (s < 1) throw ShapeMismatch("every layer needs at least one neuron");
}

/// weights[k-1] is the L_{k-1} x L_k matrix of layer k; thresholds[k-1] is
/// lambda_k. All entries rescaled into [-1, 1].
struct WeightAssignment {
    std::vector<std::vector<std::vector<Rational>>> weights;
    std::vector<Rational> thresholds;
};

inline void validate_weights(const BnnArchitecture& arch, const WeightAssignment& w) {
    validate_architecture(arch);
    if (w.weights.size() != arch.depth() || w.thresholds.size() != arch.depth())
        throw ShapeMismatch("weight assignment does not match architecture depth");
    for (std::size_t k = 1; k <= arch.depth(); ++k) {
        const auto& mat = w.weights[k - 1];
        if (mat.size() != arch.layer_sizes[k - 1]) throw ShapeMismatch("weight matrix rows mismatch");
        for (const auto& row : mat) {
            if (row.size() != arch.layer_sizes[k]) throw ShapeMismatch("weight matrix columns mismatch");
            for (const Rational& v : row)
                if (v < -1 || v > 1) throw ShapeMismatch("weights must lie in [-1, 1]");
        }
        if (w.thresholds[k - 1] < -1 || w.thresholds[k - 1] > 1)
            throw ShapeMismatch("thresholds must lie in [-1, 1]");
    }
}

/// Training set with a strict Euclidean norm bound: ||input||_2 < radius for
/// every input (checked on squares, no square roots needed).
struct Dataset {
    std::vector<std::vector<Rational>> inputs;
    std::vector<std::vector<int>> labels;
    Rational radius = 1;
};

inline void validate_dataset(const BnnArchitecture& arch, const Dataset& data) {
    validate_architecture(arch);
    if (data.inputs.empty() || data.inputs.size() != data.labels.size())
        throw ShapeMismatch("dataset needs m >= 1 input/label pairs");
    if (data.radius <= 0) throw ShapeMismatch("norm radius must be positive");
    for (const auto& x : data.inputs) {
        if (x.size() != arch.inputs()) throw ShapeMismatch("input length must equal the input layer size");
        Rational norm_sq = 0;
        for (const Rational& v : x) norm_sq += v * v;
        if (!(norm_sq < data.radius * data.radius))
            throw ShapeMismatch("every input norm must be strictly below the radius");
    }
    for (const auto& y : data.labels) {
        if (y.size() != arch.outputs()) throw ShapeMismatch("label length must equal the output layer size");
        for (int v : y)
            if (v != 0 && v != 1) throw ShapeMismatch("labels must be binary");
    }
}

struct ForwardTrace {
    std::vector<std::vector<Rational>> preactivations; // per layer k = 1..n
    std::vector<std::vector<int>> activations;         // per layer k = 1..n
};

/// Exact forward pass: a_j = sum_l w_lj sigma_l per layer, sigma_j = 1 iff
/// a_j >= lambda_k.
inline ForwardTrace forward_trace(const BnnArchitecture& arch, const WeightAssignment& w,
                                  const std::vector<Rational>& x) {
    validate_weights(arch, w);
    if (x.size() != arch.inputs()) throw ShapeMismatch("input length must equal the input layer size");
    ForwardTrace trace;
    std::vector<Rational> prev = x;
    for (std::size_t k = 1; k <= arch.depth(); ++k) {
        const std::size_t width = arch.layer_sizes[k];
        std::vector<Rational> pre(width);
        std::vector<int> bits(width);
        for (std::size_t j = 0; j < width; ++j) {
            Rational a = 0;
            for (std::size_t l = 0; l < prev.size(); ++l) a += w.weights[k - 1][l][j] * prev[l];
            pre[j] = a;
            bits[j] = a >= w.thresholds[k - 1] ? 1 : 0;
        }
        trace.preactivations.push_back(std::move(pre));
        trace.activations.push_back(bits);
        prev.assign(bits.begin(), bits.end());
    }
    return trace;
}

inline std::vector<int> forward(const BnnArchitecture& arch, const WeightAssignment& w,
                                const std::vector<Rational>& x) {
    return forward_trace(arch, w, x).activations.back();
}

/// Column map of the encoded training MILP. Indices refer to the integer
/// block (u, loss indicators) or the continuous block (w, lambda, s,
/// deviation splits) of the ConicMip.
struct VarMap {
    // u[i][k-1][j]: activation of neuron j, layer k, sample i (integer block)
    std::vector<std::vector<std::vector<std::size_t>>> u;
    // ZeroOne: z[i] mismatch indicator per sample (integer block)
    std::vector<std::size_t> z;
    // AbsoluteLinear: delta[i][j] complementarity bit per output (integer block)
    std::vector<std::vector<std::size_t>> abs_delta;
    // w[k-1][l][j] and lambda[k-1] (continuous block)
    std::vector<std::vector<std::vector<std::size_t>>> w;
    std::vector<std::size_t> lambda;
    // s[i][k-2][l][j]: linearized w_lj^(k) * u_l^(k-1) (continuous block)
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> s;
    // AbsoluteLinear: split deviations p - q = u - y (continuous block)
    std::vector<std::vector<std::size_t>> abs_p, abs_q;
};

struct EncodedMilp {
    ConicMip mip;
    VarMap map;
    Rational epsilon;
    Rational m1;             // nr + 1
    std::vector<Rational> mk; // d_{k-1} + 1 for k = 2..n
    BnnArchitecture arch;
    std::size_t num_samples = 0;
};

/// Training-to-MILP encoding. Emits, per sample, the first-layer big-M pair
/// with M1 = n r + 1, the deeper-layer big-M pairs over the linearization sums
/// with M_k = d_{k-1} + 1, the four s/u/w linearization inequalities, and the
/// loss rows; boxes are w, lambda, s in [-1,1] and u binary. Strict "<" rows
/// are realized as "<=" with the caller's epsilon pulled off the rhs.
inline EncodedMilp encode(const BnnArchitecture& arch, const Dataset& data, const Rational& epsilon) {
    if (epsilon <= 0) throw BadEpsilon("epsilon must be positive, got " + format_rational(epsilon));
    validate_dataset(arch, data);

    EncodedMilp enc;
    enc.arch = arch;
    enc.epsilon = epsilon;
    enc.num_samples = data.inputs.size();
    const std::size_t n = arch.depth();
    const std::size_t m = data.inputs.size();
    enc.m1 = Rational(arch.inputs()) * data.radius + 1;
    for (std::size_t k = 2; k <= n; ++k) enc.mk.push_back(Rational(arch.layer_sizes[k - 1]) + 1);

    ConicMip& mip = enc.mip;
    VarMap& map = enc.map;

    // ---- integer columns: u (sample, layer, neuron), then loss indicators
    std::size_t next_int = 0;
    map.u.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        map.u[i].resize(n);
        for (std::size_t k = 1; k <= n; ++k) {
            map.u[i][k - 1].resize(arch.layer_sizes[k]);
            for (std::size_t j = 0; j < arch.layer_sizes[k]; ++j) map.u[i][k - 1][j] = next_int++;
        }
    }
    if (arch.loss == LossKind::ZeroOne) {
        for (std::size_t i = 0; i < m; ++i) map.z.push_back(next_int++);
    } else {
        map.abs_delta.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < arch.outputs(); ++j) map.abs_delta[i].push_back(next_int++);
    }
    mip.int_bounds.assign(next_int, bounds(0, 1));

    // ---- continuous columns: w, lambda, s, then deviation splits
    std::size_t next_cont = 0;
    map.w.resize(n);
    for (std::size_t k = 1; k <= n; ++k) {
        map.w[k - 1].resize(arch.layer_sizes[k - 1]);
        for (std::size_t l = 0; l < arch.layer_sizes[k - 1]; ++l) {
            map.w[k - 1][l].resize(arch.layer_sizes[k]);
            for (std::size_t j = 0; j < arch.layer_sizes[k]; ++j) map.w[k - 1][l][j] = next_cont++;
        }
    }
    for (std::size_t k = 1; k <= n; ++k) map.lambda.push_back(next_cont++);
    map.s.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        map.s[i].resize(n >= 2 ? n - 1 : 0);
        for (std::size_t k = 2; k <= n; ++k) {
            map.s[i][k - 2].resize(arch.layer_sizes[k - 1]);
            for (std::size_t l = 0; l < arch.layer_sizes[k - 1]; ++l) {
                map.s[i][k - 2][l].resize(arch.layer_sizes[k]);
                for (std::size_t j = 0; j < arch.layer_sizes[k]; ++j) map.s[i][k - 2][l][j] = next_cont++;
            }
        }
    }
    if (arch.loss == LossKind::AbsoluteLinear) {
        map.abs_p.resize(m);
        map.abs_q.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < arch.outputs(); ++j) {
                map.abs_p[i].push_back(next_cont++);
                map.abs_q[i].push_back(next_cont++);
            }
    }
    mip.cont_bounds.assign(next_cont, bounds(-1, 1));
    for (std::size_t i = 0; i < m && arch.loss == LossKind::AbsoluteLinear; ++i)
        for (std::size_t j = 0; j < arch.outputs(); ++j) {
            mip.cont_bounds[map.abs_p[i][j]] = bounds(0, 1);
            mip.cont_bounds[map.abs_q[i][j]] = bounds(0, 1);
        }

    // ---- objective
    mip.c.assign(next_int, Rational(0));
    mip.d.assign(next_cont, Rational(0));
    if (arch.loss == LossKind::ZeroOne) {
        for (std::size_t i = 0; i < m; ++i) mip.c[map.z[i]] = 1;
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < arch.outputs(); ++j) {
                mip.d[map.abs_p[i][j]] = 1;
                mip.d[map.abs_q[i][j]] = 1;
            }
    }

    // ---- rows (layer-major, then sample, then neuron)
    auto new_row = [&](RowSense sense, const Rational& rhs) -> std::size_t {
        mip.A.emplace_back(next_int, Rational(0));
        mip.G.emplace_back(next_cont, Rational(0));
        mip.row_sense.push_back(sense);
        mip.b.push_back(rhs);
        return mip.A.size() - 1;
    };

    // first layer: activation threshold pairs against the raw inputs
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < arch.layer_sizes[1]; ++j) {
            std::size_t r1 = new_row(RowSense::GreaterEq, epsilon);
            mip.A[r1][map.u[i][0][j]] = enc.m1;
            mip.G[r1][map.lambda[0]] = 1;
            for (std::size_t l = 0; l < arch.inputs(); ++l) mip.G[r1][map.w[0][l][j]] = -data.inputs[i][l];

            std::size_t r2 = new_row(RowSense::GreaterEq, -enc.m1);
            mip.A[r2][map.u[i][0][j]] = -enc.m1;
            mip.G[r2][map.lambda[0]] = -1;
            for (std::size_t l = 0; l < arch.inputs(); ++l) mip.G[r2][map.w[0][l][j]] = data.inputs[i][l];
        }

    // deeper layers: threshold pairs over the linearization sums
    for (std::size_t k = 2; k <= n; ++k) {
        const Rational mk = enc.mk[k - 2];
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < arch.layer_sizes[k]; ++j) {
                std::size_t r1 = new_row(RowSense::GreaterEq, epsilon);
                mip.A[r1][map.u[i][k - 1][j]] = mk;
                mip.G[r1][map.lambda[k - 1]] = 1;
                for (std::size_t l = 0; l < arch.layer_sizes[k - 1]; ++l)
                    mip.G[r1][map.s[i][k - 2][l][j]] = -1;

                std::size_t r2 = new_row(RowSense::GreaterEq, -mk);
                mip.A[r2][map.u[i][k - 1][j]] = -mk;
                mip.G[r2][map.lambda[k - 1]] = -1;
                for (std::size_t l = 0; l < arch.layer_sizes[k - 1]; ++l)
                    mip.G[r2][map.s[i][k - 2][l][j]] = 1;
            }
    }

    // linearization of s = w * u_prev (four inequalities each)
    for (std::size_t k = 2; k <= n; ++k)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < arch.layer_sizes[k - 1]; ++l)
                for (std::size_t j = 0; j < arch.layer_sizes[k]; ++j) {
                    const std::size_t s_col = map.s[i][k - 2][l][j];
                    const std::size_t u_prev = map.u[i][k - 2][l];
                    const std::size_t w_col = map.w[k - 1][l][j];

                    std::size_t r1 = new_row(RowSense::GreaterEq, 0); // u - s >= 0
                    mip.A[r1][u_prev] = 1;
                    mip.G[r1][s_col] = -1;

                    std::size_t r2 = new_row(RowSense::GreaterEq, 0); // s + u >= 0
                    mip.A[r2][u_prev] = 1;
                    mip.G[r2][s_col] = 1;

                    std::size_t r3 = new_row(RowSense::GreaterEq, -1); // w - s - u >= -1
                    mip.A[r3][u_prev] = -1;
                    mip.G[r3][w_col] = 1;
                    mip.G[r3][s_col] = -1;

                    std::size_t r4 = new_row(RowSense::GreaterEq, -1); // s - w - u >= -1
                    mip.A[r4][u_prev] = -1;
                    mip.G[r4][w_col] = -1;
                    mip.G[r4][s_col] = 1;
                }

    // loss rows
    if (arch.loss == LossKind::ZeroOne) {
        // z_i >= |u - y| per output, z_i <= total mismatch: forces z_i to be
        // exactly the 0-1 loss at every feasible point
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < arch.outputs(); ++j) {
                const std::size_t u_out = map.u[i][n - 1][j];
                if (data.labels[i][j] == 0) {
                    std::size_t r = new_row(RowSense::GreaterEq, 0); // z - u >= 0
                    mip.A[r][map.z[i]] = 1;
                    mip.A[r][u_out] = -1;
                } else {
                    std::size_t r = new_row(RowSense::GreaterEq, 1); // z + u >= 1
                    mip.A[r][map.z[i]] = 1;
                    mip.A[r][u_out] = 1;
                }
            }
            Rational ones = 0;
            std::size_t r = new_row(RowSense::GreaterEq, 0); // sum_j mismatch_j - z >= 0
            for (std::size_t j = 0; j < arch.outputs(); ++j) {
                const std::size_t u_out = map.u[i][n - 1][j];
                if (data.labels[i][j] == 0) {
                    mip.A[r][u_out] = 1;
                } else {
                    mip.A[r][u_out] = -1;
                    ones += 1;
                }
            }
            mip.A[r][map.z[i]] = -1;
            mip.b[r] = -ones;
        }
    } else {
        // split deviations with complementarity bits: p - q = u - y,
        // p <= delta, q <= 1 - delta, so p + q = |u - y| at every feasible point
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < arch.outputs(); ++j) {
                const std::size_t u_out = map.u[i][n - 1][j];
                std::size_t r1 = new_row(RowSense::Eq, -Rational(data.labels[i][j]));
                mip.G[r1][map.abs_p[i][j]] = 1;
                mip.G[r1][map.abs_q[i][j]] = -1;
                mip.A[r1][u_out] = -1;

                std::size_t r2 = new_row(RowSense::GreaterEq, 0); // delta - p >= 0
                mip.A[r2][map.abs_delta[i][j]] = 1;
                mip.G[r2][map.abs_p[i][j]] = -1;

                std::size_t r3 = new_row(RowSense::GreaterEq, -1); // -q - delta >= -1
                mip.A[r3][map.abs_delta[i][j]] = -1;
                mip.G[r3][map.abs_q[i][j]] = -1;
            }
    }

    mip.num_rows = mip.A.size();
    return enc;
}

struct TrainingDecode {
    WeightAssignment weights;
    std::vector<std::vector<int>> predictions; // output-layer u per sample
    Rational loss = 0;                          // MILP objective
};

/// Reads weights, thresholds and output-layer activations back out of an
/// Optimal solution via the encoder's column map.
inline TrainingDecode decode(const MipSolution& sol, const EncodedMilp& enc) {
    if (sol.status != SolveStatus::Optimal)
        throw StatusNotOptimal("decode requires an Optimal MILP solution");
    TrainingDecode out;
    const BnnArchitecture& arch = enc.arch;
    const std::size_t n = arch.depth();
    out.weights.weights.resize(n);
    for (std::size_t k = 1; k <= n; ++k) {
        out.weights.weights[k - 1].assign(arch.layer_sizes[k - 1],
                                          std::vector<Rational>(arch.layer_sizes[k], Rational(0)));
        for (std::size_t l = 0; l < arch.layer_sizes[k - 1]; ++l)
            for (std::size_t j = 0; j < arch.layer_sizes[k]; ++j)
                out.weights.weights[k - 1][l][j] = sol.y[enc.map.w[k - 1][l][j]];
        out.weights.thresholds.push_back(sol.y[enc.map.lambda[k - 1]]);
    }
    for (std::size_t i = 0; i < enc.num_samples; ++i) {
        std::vector<int> bits;
        for (std::size_t j = 0; j < arch.outputs(); ++j)
            bits.push_back(sol.x[enc.map.u[i][n - 1][j]] == 1 ? 1 : 0);
        out.predictions.push_back(bits);
    }
    out.loss = sol.objective;
    return out;
}

/// Empirical loss of a weight assignment on a dataset, recomputed by exact
/// forward passes (the oracle side of objective fidelity).
inline Rational empirical_loss(const BnnArchitecture& arch, const WeightAssignment& w, const Dataset& data) {
    Rational total = 0;
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        std::vector<int> yhat = forward(arch, w, data.inputs[i]);
        if (arch.loss == LossKind::ZeroOne) {
            bool mismatch = false;
            for (std::size_t j = 0; j < yhat.size(); ++j)
                if (yhat[j] != data.labels[i][j]) mismatch = true;
            if (mismatch) total += 1;
        } else {
            for (std::size_t j = 0; j < yhat.size(); ++j) total += abs_rat(Rational(yhat[j] - data.labels[i][j]));
        }
    }
    return total;
}

} // namespace subdual

#endif // SUBDUAL_BNN_HPP
