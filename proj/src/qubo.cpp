#include "cgvrp/qubo.hpp"

#include <cmath>

#include "json.hpp"

namespace cgvrp {

namespace {

void add_quadratic(QuboProblem& qubo, int a, int b, double value) {
    if (value == 0.0) return;
    if (a == b) {
        qubo.linear[a] += value; // x^2 = x
        return;
    }
    if (a > b) std::swap(a, b);
    qubo.quadratic[{a, b}] += value;
}

void validate_spec(const SubproblemSpec& spec) {
    if (spec.T < 2) {
        throw ParameterError("subproblem: T must be >= 2");
    }
    if (spec.T > spec.instance.n_locations) {
        throw ParameterError("subproblem: T must be <= n_locations");
    }
    if (spec.lambda1 < 0 || spec.lambda2 < 0 || spec.lambda3 < 0) {
        throw ParameterError("subproblem: penalty multipliers must be >= 0");
    }
    if (static_cast<int>(spec.duals.y.size()) != spec.instance.n_locations) {
        throw ParameterError("subproblem: duals do not cover all locations");
    }
}

} // namespace

QuboProblem build_alim_qubo(const SubproblemSpec& spec) {
    validate_spec(spec);
    const Instance& inst = spec.instance;
    const int N = inst.n_locations;
    const int T = spec.T;
    const int slots = T - 1;

    QuboProblem qubo;
    qubo.n_locations = N;
    qubo.T = T;
    qubo.n_vars = N * slots;
    qubo.linear.assign(qubo.n_vars, 0.0);

    // Distance legs. t = 0 is fixed at the depot: the 0->1 leg and the
    // (T-1)->0 wrap leg are linear, interior legs quadratic.
    for (int j = 0; j < N; ++j) {
        qubo.linear[qubo.var_index(j, 1)] += inst.dist[0][j];
        qubo.linear[qubo.var_index(j, T - 1)] += inst.dist[j][0];
    }
    for (int t = 1; t + 1 <= T - 1; ++t) {
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                add_quadratic(qubo, qubo.var_index(i, t),
                              qubo.var_index(j, t + 1), inst.dist[i][j]);
            }
        }
    }

    // Reduced-cost term: -sum_t sum_i y*_i x_{i,t}; the depot dual is 0.
    for (int t = 1; t <= T - 1; ++t) {
        for (int i = 0; i < N; ++i) {
            qubo.linear[qubo.var_index(i, t)] -= spec.duals.y[i];
        }
    }

    // Capacity: lambda1 (S - W) + lambda1 (S - W)^2 with S = sum w_i x_{i,t}.
    // The depot contributes nothing (w_0 = 0).
    const double l1 = spec.lambda1;
    const double W = inst.capacity;
    qubo.offset += l1 * (W * W - W);
    for (int t = 1; t <= T - 1; ++t) {
        for (int i = 0; i < N; ++i) {
            const double w = inst.demands[i];
            if (w == 0.0) continue;
            const int a = qubo.var_index(i, t);
            qubo.linear[a] += l1 * (w + w * w - 2.0 * W * w);
            for (int t2 = 1; t2 <= T - 1; ++t2) {
                for (int i2 = 0; i2 < N; ++i2) {
                    const double w2 = inst.demands[i2];
                    if (w2 == 0.0) continue;
                    const int b = qubo.var_index(i2, t2);
                    if (b <= a) continue;
                    add_quadratic(qubo, a, b, 2.0 * l1 * w * w2);
                }
            }
        }
    }

    // At-most-one visit per time: lambda2 sum_t S_t (S_t - 1), which is
    // 2 * lambda2 over same-slot pairs. The fixed t = 0 slot contributes 0.
    for (int t = 1; t <= T - 1; ++t) {
        for (int i = 0; i < N; ++i) {
            for (int j = i + 1; j < N; ++j) {
                add_quadratic(qubo, qubo.var_index(i, t),
                              qubo.var_index(j, t), 2.0 * spec.lambda2);
            }
        }
    }
    return qubo;
}

QuboProblem add_onehot_penalty(const QuboProblem& qubo,
                               const SubproblemSpec& spec) {
    validate_spec(spec);
    QuboProblem out = qubo;
    const double l3 = spec.lambda3;
    const int N = out.n_locations;
    for (int t = 1; t <= out.T - 1; ++t) {
        out.offset += l3; // (0 - 1)^2 baseline per slot
        for (int i = 0; i < N; ++i) {
            out.linear[out.var_index(i, t)] -= l3; // x^2 - 2x = -x
            for (int j = i + 1; j < N; ++j) {
                add_quadratic(out, out.var_index(i, t), out.var_index(j, t),
                              2.0 * l3);
            }
        }
    }
    return out;
}

IsingHamiltonian qubo_to_ising(const QuboProblem& qubo) {
    IsingHamiltonian ising;
    ising.n_qubits = qubo.n_vars;
    ising.h.assign(qubo.n_vars, 0.0);
    ising.constant = qubo.offset;
    for (int a = 0; a < qubo.n_vars; ++a) {
        // c x = c/2 - (c/2) z
        ising.constant += qubo.linear[a] / 2.0;
        ising.h[a] -= qubo.linear[a] / 2.0;
    }
    for (const auto& [pair, q] : qubo.quadratic) {
        // q x_a x_b = q/4 (1 - z_a - z_b + z_a z_b)
        const auto [a, b] = pair;
        ising.constant += q / 4.0;
        ising.h[a] -= q / 4.0;
        ising.h[b] -= q / 4.0;
        ising.coupling[{a, b}] += q / 4.0;
    }
    return ising;
}

double evaluate(const QuboProblem& qubo, std::uint64_t bits) {
    double energy = qubo.offset;
    for (int a = 0; a < qubo.n_vars; ++a) {
        if ((bits >> a) & 1ULL) energy += qubo.linear[a];
    }
    for (const auto& [pair, q] : qubo.quadratic) {
        if (((bits >> pair.first) & 1ULL) && ((bits >> pair.second) & 1ULL)) {
            energy += q;
        }
    }
    return energy;
}

double evaluate(const QuboProblem& qubo, const std::vector<int>& bits) {
    if (static_cast<int>(bits.size()) != qubo.n_vars) {
        throw DimensionError("evaluate: bitstring length mismatch");
    }
    std::uint64_t packed = 0;
    for (int a = 0; a < qubo.n_vars; ++a) {
        if (bits[a]) packed |= 1ULL << a;
    }
    return evaluate(qubo, packed);
}

double ising_energy(const IsingHamiltonian& hamiltonian, std::uint64_t bits) {
    double energy = hamiltonian.constant;
    for (int q = 0; q < hamiltonian.n_qubits; ++q) {
        const double z = ((bits >> q) & 1ULL) ? -1.0 : 1.0;
        energy += hamiltonian.h[q] * z;
    }
    for (const auto& [pair, j] : hamiltonian.coupling) {
        const bool same = (((bits >> pair.first) ^ (bits >> pair.second)) & 1ULL) == 0;
        energy += same ? j : -j;
    }
    return energy;
}

QubitCounts qubit_counts(const Instance& instance, int T) {
    if (T < 2) {
        throw ParameterError("qubit_counts: T must be >= 2");
    }
    QubitCounts counts;
    const long long N = instance.n_locations;
    counts.alim = N * T;
    long long log2w = 0;
    while ((1LL << log2w) < instance.capacity) ++log2w; // ceil(log2 W)
    counts.slack = N * (T + 1) + log2w - 1;
    return counts;
}

namespace {

nlohmann::json pairs_to_json(const std::map<std::pair<int, int>, double>& map) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [pair, value] : map) {
        arr.push_back({pair.first, pair.second, value});
    }
    return arr;
}

} // namespace

std::string qubo_to_json_string(const QuboProblem& qubo) {
    nlohmann::json doc;
    doc["n_vars"] = qubo.n_vars;
    doc["n_locations"] = qubo.n_locations;
    doc["T"] = qubo.T;
    doc["linear"] = qubo.linear;
    doc["quadratic"] = pairs_to_json(qubo.quadratic);
    doc["offset"] = qubo.offset;
    return doc.dump(2);
}

std::string ising_to_json_string(const IsingHamiltonian& h) {
    nlohmann::json doc;
    doc["n_qubits"] = h.n_qubits;
    doc["h"] = h.h;
    doc["coupling"] = pairs_to_json(h.coupling);
    doc["constant"] = h.constant;
    return doc.dump(2);
}

} // namespace cgvrp
