#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cgvrp/instance.hpp"
#include "cgvrp/master.hpp"

namespace cgvrp {

// Pricing subproblem parameters. The decision variables are x_{i,t} for
// location i and time step t; t = 0 is fixed to the depot and substituted
// out, so the variable register covers t in [1, T-1] only.
struct SubproblemSpec {
    Instance instance;
    DualSolution duals;    // y[0] == 0; customers carry the LP duals
    int T = 2;             // time steps, 2 <= T <= n_locations
    double lambda1 = 1.0;  // capacity multiplier (linear + quadratic)
    double lambda2 = 1.0;  // at-most-one-visit-per-time multiplier
    double lambda3 = 1.0;  // one-hot penalty, X-mixer QAOA baseline only
};

// Quadratic binary objective: offset + sum linear_a x_a + sum quad_ab x_a x_b.
// The quadratic map is keyed by ordered pairs (a < b); diagonal terms are
// folded into linear since x^2 = x.
struct QuboProblem {
    int n_vars = 0;
    int n_locations = 0;
    int T = 2;
    std::vector<double> linear;
    std::map<std::pair<int, int>, double> quadratic;
    double offset = 0.0;

    // Variable layout: qubit (t-1)*N + i holds x_{i,t}, t in [1, T-1].
    int var_index(int location, int t) const {
        return (t - 1) * n_locations + location;
    }
    std::pair<int, int> var_loc_time(int q) const {
        return {q % n_locations, q / n_locations + 1};
    }
};

// Diagonal cost Hamiltonian: constant + sum h_q Z_q + sum J_ab Z_a Z_b,
// with spin z = 1 - 2x (bit 0 -> +1, bit 1 -> -1).
struct IsingHamiltonian {
    int n_qubits = 0;
    std::vector<double> h;
    std::map<std::pair<int, int>, double> coupling;
    double constant = 0.0;
};

// Penalized pricing objective with the t = 0 depot assignment substituted
// out: distance legs (the t=0->1 and wrap legs become linear), the reduced
// cost term -sum y*_i x_{i,t}, the capacity penalty
// lambda1*(sum w x - W) + lambda1*(sum w x - W)^2 (linear piece kept even
// when slack, no max clamp), and the per-time at-most-one penalty
// lambda2 * sum_t S_t (S_t - 1). The one-hot equality itself is NOT
// penalized here; the XY mixer enforces it, or add_onehot_penalty adds it
// for the X-mixer baseline.
QuboProblem build_alim_qubo(const SubproblemSpec& spec);

// Adds lambda3 * sum_{t>=1} (S_t - 1)^2 on top of an ALiM objective.
QuboProblem add_onehot_penalty(const QuboProblem& qubo,
                               const SubproblemSpec& spec);

// Exact substitution x = (1 - z) / 2; energies agree bitwise with the QUBO.
IsingHamiltonian qubo_to_ising(const QuboProblem& qubo);

// Bit b of `bits` is variable b.
double evaluate(const QuboProblem& qubo, std::uint64_t bits);
double evaluate(const QuboProblem& qubo, const std::vector<int>& bits);
double ising_energy(const IsingHamiltonian& h, std::uint64_t bits);

struct QubitCounts {
    long long alim = 0;  // N * T
    long long slack = 0; // N * (T+1) + ceil(log2 W) - 1
};

// Qubit accounting for comparison tables. Reports the full time-indexed
// register sizes; the simulator itself carries N*(T-1) qubits after fixing
// the t = 0 column.
QubitCounts qubit_counts(const Instance& instance, int T);

// Debug/cross-tool export.
std::string qubo_to_json_string(const QuboProblem& qubo);
std::string ising_to_json_string(const IsingHamiltonian& h);

} // namespace cgvrp
