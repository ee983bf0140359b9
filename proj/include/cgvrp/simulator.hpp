#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cgvrp/qubo.hpp"

namespace cgvrp {

// Dense statevectors are capped at 24 qubits (256 MiB of amplitudes).
inline constexpr int kMaxStatevectorQubits = 24;

// Flat array of 2^n complex amplitudes. Basis-state index s encodes qubit q
// as bit q of s. Bitstring rendering puts qubit 0 first (index position q
// holds qubit q), so strings read in increasing qubit order.
struct Statevector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amps;

    double norm_sq() const;
};

std::string bits_to_string(std::uint64_t bits, int n_qubits);
std::uint64_t string_to_bits(const std::string& s);

enum class AnsatzKind { XMixerQaoa, XYMixerAnsatz };

// Register layout: time slot t in [1, T-1] owns the contiguous qubit block
// [(t-1)*N, t*N); qubit (t-1)*N + i holds x_{i,t}.
struct AnsatzConfig {
    AnsatzKind kind = AnsatzKind::XYMixerAnsatz;
    int p = 1;
    int n_locations = 0; // N
    int T = 2;

    int slots() const { return T - 1; }
    int n_qubits() const { return n_locations * (T - 1); }
    int slot_offset(int t) const { return (t - 1) * n_locations; }
};

struct Params {
    std::vector<double> gammas;
    std::vector<double> betas;
};

// Measurement counts keyed by bitstring (see Statevector for the rendering
// convention). Sampling is reproducible across platforms: probabilities are
// accumulated in ascending basis-index order and each shot draws one
// mt19937_64 value mapped to [0,1) via its top 53 bits, then binary-searches
// the cumulative table.
struct SampleSet {
    std::map<std::string, int> counts;
    int shots = 0;
};

// X kind: uniform superposition. XY kind: the one basis state with the depot
// occupied in every time slot, which satisfies every one-hot constraint.
Statevector prepare_initial_state(const AnsatzConfig& config);

// Diagonal energies E(x) for all 2^n basis states.
std::vector<double> energy_table(const IsingHamiltonian& hamiltonian);

// amp_x *= exp(-i gamma E(x)). Per-basis probabilities are unchanged.
void apply_phase_separator(Statevector& state, double gamma,
                           const IsingHamiltonian& hamiltonian);
void apply_phase_separator(Statevector& state, double gamma,
                           const std::vector<double>& energies);

// exp(-i beta sum_q X_q), applied qubit by qubit (the terms commute).
void apply_x_mixer(Statevector& state, double beta);

// Exact exp(-i beta H_ring) on each time-slot block, where H_ring is the
// per-slot XY ring (1/2) sum_i (X_i X_{i+1 mod N} + Y_i Y_{i+1 mod N}).
// Built sector-by-sector over block Hamming weight, so the block weight is
// conserved exactly and one-hot feasibility is preserved.
void apply_xy_ring_mixer(Statevector& state, double beta,
                         const AnsatzConfig& config);

// Full 2^N x 2^N slot evolution operator (exact, weight-sector
// block-diagonal); exposed for tests.
Eigen::MatrixXcd xy_slot_unitary(int n_locations, double beta);

// U_M(beta_p) U_P(gamma_p) ... U_M(beta_1) U_P(gamma_1) |psi0>.
Statevector run_ansatz(const AnsatzConfig& config,
                       const IsingHamiltonian& hamiltonian,
                       const Params& params);

double expectation(const Statevector& state,
                   const IsingHamiltonian& hamiltonian);
double expectation(const Statevector& state,
                   const std::vector<double>& energies);

SampleSet sample(const Statevector& state, int shots, std::uint64_t seed);

// Prepares ansatz states repeatedly for parameter optimization. The X-mixer
// path runs on the full register with a cached energy table. The XY path
// evolves only the per-slot one-hot subspace the circuit can reach (dimension
// N^(T-1)); within it the slot mixer is the weight-1 sector of the ring
// evolution, applied along each slot axis. Both paths are exact; slot
// exponentials are cached per beta.
class AnsatzEngine {
public:
    AnsatzEngine(const AnsatzConfig& config,
                 const IsingHamiltonian& hamiltonian);

    double expectation_at(const Params& params);
    SampleSet sample_at(const Params& params, int shots, std::uint64_t seed);
    // Mean sampled cost: the shot-estimate of expectation_at.
    double sampled_energy_at(const Params& params, int shots,
                             std::uint64_t seed);
    // Full statevector (XY subspace states are embedded).
    Statevector state_at(const Params& params);

    const AnsatzConfig& config() const { return config_; }

private:
    std::vector<std::complex<double>> run_subspace(const Params& params);
    std::vector<double> subspace_probs(const Params& params);
    const Eigen::MatrixXcd& slot_mixer(double beta);

    AnsatzConfig config_;
    IsingHamiltonian hamiltonian_;
    // X path
    std::vector<double> table_;
    // XY path
    long long dim_ = 0;
    std::vector<double> sub_energies_;
    std::vector<std::uint64_t> sub_bits_; // subspace index -> basis index
    std::map<std::uint64_t, Eigen::MatrixXcd> mixer_cache_; // beta bits -> U1
};

} // namespace cgvrp
