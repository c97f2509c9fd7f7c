#pragma once

#include "cfs/network.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace cfs {

/// Constant external inputs v_1..v_m over a horizon, and the step count
/// for the integrator.
struct ConstantInput {
    std::vector<double> values;
    double horizon = 1.0;
    int steps = 1000;
};

/// Trajectories from a truncated-state network integration. The state of
/// each node is a truncated series whose empty-word coefficient stays 1:
/// drift and input shifts never feed the empty word.
struct SimResult {
    std::vector<double> times;
    std::vector<std::vector<double>> outputs;   // outputs[node][time index]
    std::vector<Series<double>> final_states;
};

inline Series<double> to_double_series(const Series<Rational>& x) {
    Series<double> out(x.alphabet(), x.cap());
    for (const auto& [w, a] : x.terms()) out.set(w, a.get_d());
    return out;
}

/// Iterated integral of constant inputs: u_{i_1}...u_{i_k} t^k / k!, with
/// u_0 = 1 on the drift channel. `values` holds v_1..v_m.
inline double iterated_integral_const(const Word& eta, const std::vector<double>& values,
                                      double t) {
    double factor = 1.0;
    for (std::size_t i = 0; i < eta.length(); ++i) {
        const int letter = eta.letter(i);
        factor *= (letter == 0) ? t : values.at(letter - 1) * t;
        factor /= static_cast<double>(eta.length() - i);
    }
    return factor;
}

/// Truncated Chen-Fliess evaluation: sum over supported words of length at
/// most N of coefficient times iterated integral.
inline double fliess_eval(const Series<double>& c, const std::vector<double>& values, double t,
                          int N) {
    double total = 0.0;
    for (const auto& [w, a] : c.terms()) {
        if (static_cast<int>(w.length()) > N) continue;
        total += a * iterated_integral_const(w, values, t);
    }
    return total;
}

namespace detail {

/// Letter driving node j's input channel in the formal state equation.
inline int input_letter(const NetworkSpec& spec, int node) {
    return spec.kind == InterconnectionKind::cascade ? 1 : node;
}

struct NetworkDynamics {
    const NetworkSpec& spec;
    std::vector<Series<double>> node_series;  // c_j truncated, double coefficients
    std::vector<double> v;

    std::vector<double> node_outputs(const std::vector<Series<double>>& states) const {
        std::vector<double> y(states.size());
        for (std::size_t j = 0; j < states.size(); ++j)
            y[j] = scalar_product(node_series[j], states[j]);
        return y;
    }

    std::vector<double> node_inputs(const std::vector<double>& y) const {
        const int m = static_cast<int>(y.size());
        std::vector<double> u(y.size());
        switch (spec.kind) {
            case InterconnectionKind::additive:
                for (int i = 1; i <= m; ++i) {
                    double total = v[i - 1];
                    for (int j = 1; j <= m; ++j)
                        total += spec.M.at(i, j).get_d() * y[j - 1];
                    u[i - 1] = total;
                }
                break;
            case InterconnectionKind::multiplicative:
                for (int i = 1; i <= m; ++i) {
                    double prod = v[i - 1];
                    for (int j = 1; j <= m; ++j) prod *= spec.M.at(i, j).get_d() * y[j - 1];
                    u[i - 1] = prod;
                }
                break;
            case InterconnectionKind::cascade:
                // Chain: the external input drives the inner node (slot 1),
                // whose output drives the outer node (slot 2).
                u[0] = v[0];
                u[1] = y[0];
                break;
        }
        return u;
    }

    /// dz_j = (x_0 + x_{input letter} u_j) z_j, truncated at the state cap.
    std::vector<Series<double>> derivative(const std::vector<Series<double>>& states) const {
        const std::vector<double> u = node_inputs(node_outputs(states));
        std::vector<Series<double>> dz;
        dz.reserve(states.size());
        for (std::size_t j = 0; j < states.size(); ++j) {
            Series<double> d = prepend_letter(0, states[j]);
            d = add(d, scale(u[j], prepend_letter(input_letter(spec, static_cast<int>(j) + 1),
                                                  states[j])));
            dz.push_back(std::move(d));
        }
        return dz;
    }
};

inline std::vector<Series<double>> axpy(const std::vector<Series<double>>& base, double factor,
                                        const std::vector<Series<double>>& delta) {
    std::vector<Series<double>> out;
    out.reserve(base.size());
    for (std::size_t j = 0; j < base.size(); ++j)
        out.push_back(add(base[j], scale(factor, delta[j])));
    return out;
}

}  // namespace detail

/// Integrates the coupled truncated-series state equations with the
/// classical 4th-order one-step method, sampling every node output. For the
/// cascade kind the inner node is slot 1 and the outer node slot 2; the
/// composed map's output is the outer node's.
inline SimResult simulate_network(const NetworkSpec& spec, const ConstantInput& input, int N,
                                  int steps) {
    if (steps < 1) throw validation_error("simulation needs at least one step");
    if (input.horizon <= 0) throw validation_error("simulation horizon must be positive");
    if (N < 1) throw validation_error("simulation state degree must be at least 1");
    const std::size_t nodes = spec.nodes.size();
    const std::size_t channels = spec.kind == InterconnectionKind::cascade ? 1 : nodes;
    if (input.values.size() != channels)
        throw validation_error("expected " + std::to_string(channels) +
                               " external input values, got " + std::to_string(input.values.size()));

    detail::NetworkDynamics dyn{spec, {}, input.values};
    const Alphabet a = spec.alphabet();
    if (spec.kind == InterconnectionKind::cascade) {
        // Chain order: slot 1 is the inner node, slot 2 the outer one.
        dyn.node_series.push_back(to_double_series(truncate(spec.nodes[1].series, N)));
        dyn.node_series.push_back(to_double_series(truncate(spec.nodes[0].series, N)));
    } else {
        for (const NodeSpec& node : spec.nodes)
            dyn.node_series.push_back(to_double_series(truncate(node.series, N)));
    }

    std::vector<Series<double>> state(nodes, Series<double>::one(a, N));
    const double h = input.horizon / steps;

    SimResult result;
    result.times.reserve(steps + 1);
    result.outputs.assign(nodes, {});
    auto record = [&](double t, const std::vector<Series<double>>& z) {
        result.times.push_back(t);
        const std::vector<double> y = dyn.node_outputs(z);
        for (std::size_t j = 0; j < nodes; ++j) {
            if (std::isnan(y[j]))
                throw validation_error("simulation produced NaN at t=" + std::to_string(t));
            result.outputs[j].push_back(y[j]);
        }
    };
    record(0.0, state);
    for (int step = 0; step < steps; ++step) {
        const auto k1 = dyn.derivative(state);
        const auto k2 = dyn.derivative(detail::axpy(state, h / 2, k1));
        const auto k3 = dyn.derivative(detail::axpy(state, h / 2, k2));
        const auto k4 = dyn.derivative(detail::axpy(state, h, k3));
        for (std::size_t j = 0; j < nodes; ++j) {
            Series<double> increment = add(k1[j], scale(2.0, add(k2[j], k3[j])));
            increment = add(increment, k4[j]);
            state[j] = add(state[j], scale(h / 6, increment));
        }
        record(h * (step + 1), state);
    }
    result.final_states = std::move(state);
    return result;
}

struct OrderCheckRow {
    int degree;
    double max_error;
};

/// Compares the network's generating series, truncated at each requested
/// degree, against one reference integration of the truncated-state
/// equations carried at a few degrees of extra headroom. The reported
/// error(N) behaves like T^{N+1} on well-behaved inputs (guidance:
/// |v_i| <= 0.1, horizon <= 0.5).
inline std::vector<OrderCheckRow> verify_order(const NetworkSpec& spec, const ConstantInput& input,
                                               const std::vector<int>& degrees) {
    if (degrees.empty()) throw validation_error("verify needs at least one degree");
    int max_degree = 0;
    for (int N : degrees) {
        if (N < 0) throw validation_error("verify degrees must be nonnegative");
        max_degree = std::max(max_degree, N);
    }
    const int reference_degree = max_degree + 3;

    // Build the representation once at the reference degree so one exact
    // series serves every truncation level.
    NetworkSpec wide = spec;
    wide.degree = reference_degree;
    for (NodeSpec& node : wide.nodes) node.series = truncate(node.series, reference_degree);
    const FormalRepresentation rep = build(wide);
    const int k_count = output_count(spec);
    std::vector<Series<double>> predicted;
    predicted.reserve(k_count);
    for (int k = 1; k <= k_count; ++k)
        predicted.push_back(to_double_series(generating_series(rep, k, max_degree)));

    const SimResult sim = simulate_network(wide, input, reference_degree, input.steps);

    std::vector<OrderCheckRow> rows;
    rows.reserve(degrees.size());
    for (int N : degrees) {
        double worst = 0.0;
        for (int k = 1; k <= k_count; ++k) {
            // Cascade exposes one composed output, read on the outer node.
            const std::size_t node = spec.kind == InterconnectionKind::cascade
                                         ? 1
                                         : static_cast<std::size_t>(k - 1);
            for (std::size_t idx = 0; idx < sim.times.size(); ++idx) {
                const double value =
                    fliess_eval(predicted[k - 1], input.values, sim.times[idx], N);
                worst = std::max(worst, std::abs(value - sim.outputs[node][idx]));
            }
        }
        rows.push_back({N, worst});
    }
    return rows;
}

/// Tolerance-based group-likeness for float states: checks the character
/// identity on every word pair within the budget.
inline bool is_group_like_approx(const Series<double>& z, int N, double tolerance) {
    if (std::abs(z.coefficient(Word()) - 1.0) > tolerance) return false;
    const std::vector<Word> words = enumerate_words(z.alphabet(), N - 1);
    for (const Word& u : words) {
        if (u.empty()) continue;
        for (const Word& v : words) {
            if (v.empty()) continue;
            if (static_cast<int>(u.length() + v.length()) > N) continue;
            const Series<double> prod = shuffle(Series<double>::monomial(z.alphabet(), N, u),
                                                Series<double>::monomial(z.alphabet(), N, v));
            const double lhs = scalar_product(prod, z);
            const double rhs = z.coefficient(u) * z.coefficient(v);
            if (std::abs(lhs - rhs) > tolerance) return false;
        }
    }
    return true;
}

}  // namespace cfs
