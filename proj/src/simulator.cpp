#include "cgvrp/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "cgvrp/rng.hpp"

namespace cgvrp {

namespace {

using cd = std::complex<double>;

void check_register(int n_qubits) {
    if (n_qubits < 1) {
        throw ParameterError("statevector: need at least 1 qubit");
    }
    if (n_qubits > kMaxStatevectorQubits) {
        throw GuardError("statevector: " + std::to_string(n_qubits) +
                         " qubits exceeds the " +
                         std::to_string(kMaxStatevectorQubits) + "-qubit cap");
    }
}

void check_config(const AnsatzConfig& config) {
    if (config.p < 1) {
        throw ParameterError("ansatz: p must be >= 1");
    }
    if (config.T < 2) {
        throw ParameterError("ansatz: T must be >= 2");
    }
    if (config.kind == AnsatzKind::XYMixerAnsatz && config.n_locations < 2) {
        throw ParameterError("ansatz: XY mixer needs at least 2 locations");
    }
    if (config.n_locations < 1) {
        throw ParameterError("ansatz: need at least 1 location");
    }
}

void check_params(const AnsatzConfig& config, const Params& params) {
    if (static_cast<int>(params.gammas.size()) != config.p ||
        static_cast<int>(params.betas.size()) != config.p) {
        throw DimensionError("ansatz: params length does not match p");
    }
}

} // namespace

double Statevector::norm_sq() const {
    double sum = 0.0;
    for (const cd& a : amps) sum += std::norm(a);
    return sum;
}

std::string bits_to_string(std::uint64_t bits, int n_qubits) {
    std::string s(n_qubits, '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((bits >> q) & 1ULL) s[q] = '1';
    }
    return s;
}

std::uint64_t string_to_bits(const std::string& s) {
    std::uint64_t bits = 0;
    for (std::size_t q = 0; q < s.size(); ++q) {
        if (s[q] == '1') {
            bits |= 1ULL << q;
        } else if (s[q] != '0') {
            throw ParameterError("bitstring: invalid character");
        }
    }
    return bits;
}

Statevector prepare_initial_state(const AnsatzConfig& config) {
    check_config(config);
    const int n = config.n_qubits();
    check_register(n);
    Statevector state;
    state.n_qubits = n;
    const std::size_t size = 1ULL << n;
    if (config.kind == AnsatzKind::XMixerQaoa) {
        state.amps.assign(size, cd(1.0 / std::sqrt(double(size)), 0.0));
    } else {
        state.amps.assign(size, cd(0.0, 0.0));
        std::uint64_t index = 0;
        for (int t = 1; t <= config.T - 1; ++t) {
            index |= 1ULL << config.slot_offset(t); // depot bit of each slot
        }
        state.amps[index] = cd(1.0, 0.0);
    }
    return state;
}

std::vector<double> energy_table(const IsingHamiltonian& hamiltonian) {
    const int n = hamiltonian.n_qubits;
    check_register(n);
    const std::size_t size = 1ULL << n;
    std::vector<double> energies(size, hamiltonian.constant);
    for (int q = 0; q < n; ++q) {
        const double hq = hamiltonian.h[q];
        if (hq == 0.0) continue;
        const std::size_t bit = 1ULL << q;
        for (std::size_t s = 0; s < size; ++s) {
            energies[s] += (s & bit) ? -hq : hq;
        }
    }
    for (const auto& [pair, j] : hamiltonian.coupling) {
        if (j == 0.0) continue;
        const std::size_t ba = 1ULL << pair.first;
        const std::size_t bb = 1ULL << pair.second;
        for (std::size_t s = 0; s < size; ++s) {
            const bool same = ((s & ba) != 0) == ((s & bb) != 0);
            energies[s] += same ? j : -j;
        }
    }
    return energies;
}

void apply_phase_separator(Statevector& state, double gamma,
                           const std::vector<double>& energies) {
    if (energies.size() != state.amps.size()) {
        throw DimensionError("phase separator: energy table size mismatch");
    }
    for (std::size_t s = 0; s < state.amps.size(); ++s) {
        if (state.amps[s] != cd(0.0, 0.0)) {
            state.amps[s] *= std::polar(1.0, -gamma * energies[s]);
        }
    }
}

void apply_phase_separator(Statevector& state, double gamma,
                           const IsingHamiltonian& hamiltonian) {
    if (hamiltonian.n_qubits != state.n_qubits) {
        throw DimensionError("phase separator: qubit count mismatch");
    }
    apply_phase_separator(state, gamma, energy_table(hamiltonian));
}

void apply_x_mixer(Statevector& state, double beta) {
    const double c = std::cos(beta);
    const cd ms(0.0, -std::sin(beta));
    for (int q = 0; q < state.n_qubits; ++q) {
        const std::size_t bit = 1ULL << q;
        for (std::size_t s = 0; s < state.amps.size(); ++s) {
            if (s & bit) continue;
            const cd a0 = state.amps[s];
            const cd a1 = state.amps[s | bit];
            state.amps[s] = c * a0 + ms * a1;
            state.amps[s | bit] = ms * a0 + c * a1;
        }
    }
}

Eigen::MatrixXcd xy_slot_unitary(int n_locations, double beta) {
    const int N = n_locations;
    if (N < 2) {
        throw ParameterError("xy mixer: need at least 2 locations");
    }
    const int dim = 1 << N;
    Eigen::MatrixXcd unitary = Eigen::MatrixXcd::Zero(dim, dim);
    // Ring edges (i, i+1 mod N); for N = 2 the two terms hit the same pair.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < N; ++i) {
        edges.emplace_back(i, (i + 1) % N);
    }
    // Weight sectors are invariant; exponentiate each separately so the
    // full operator has exact zeros across sectors.
    for (int w = 0; w <= N; ++w) {
        std::vector<int> basis;
        for (int s = 0; s < dim; ++s) {
            if (std::popcount(static_cast<unsigned>(s)) == w) {
                basis.push_back(s);
            }
        }
        const int k = static_cast<int>(basis.size());
        std::vector<int> position(dim, -1);
        for (int idx = 0; idx < k; ++idx) position[basis[idx]] = idx;
        Eigen::MatrixXd sector = Eigen::MatrixXd::Zero(k, k);
        for (int idx = 0; idx < k; ++idx) {
            const int s = basis[idx];
            for (const auto& [a, b] : edges) {
                const int mask = (1 << a) | (1 << b);
                const int held = s & mask;
                if (held == (1 << a) || held == (1 << b)) {
                    sector(position[s ^ mask], idx) += 1.0;
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(sector);
        Eigen::VectorXcd phases(k);
        for (int idx = 0; idx < k; ++idx) {
            phases[idx] = std::polar(1.0, -beta * eigen.eigenvalues()[idx]);
        }
        const Eigen::MatrixXcd sector_u = eigen.eigenvectors().cast<cd>() *
                                          phases.asDiagonal() *
                                          eigen.eigenvectors().transpose().cast<cd>();
        for (int r = 0; r < k; ++r) {
            for (int col = 0; col < k; ++col) {
                unitary(basis[r], basis[col]) = sector_u(r, col);
            }
        }
    }
    return unitary;
}

void apply_xy_ring_mixer(Statevector& state, double beta,
                         const AnsatzConfig& config) {
    if (config.n_qubits() != state.n_qubits) {
        throw DimensionError("xy mixer: register layout does not cover state");
    }
    const int N = config.n_locations;
    const Eigen::MatrixXcd unitary = xy_slot_unitary(N, beta);
    const int block = 1 << N;
    std::vector<cd> scratch(block);
    for (int t = 1; t <= config.T - 1; ++t) {
        const int offset = config.slot_offset(t);
        const std::size_t low_size = 1ULL << offset;
        const std::size_t high_size =
            1ULL << (state.n_qubits - offset - N);
        for (std::size_t hi = 0; hi < high_size; ++hi) {
            for (std::size_t lo = 0; lo < low_size; ++lo) {
                const std::size_t base = (hi << (offset + N)) | lo;
                bool nonzero = false;
                for (int k = 0; k < block; ++k) {
                    scratch[k] =
                        state.amps[base | (std::size_t(k) << offset)];
                    if (scratch[k] != cd(0.0, 0.0)) nonzero = true;
                }
                if (!nonzero) continue;
                for (int r = 0; r < block; ++r) {
                    cd acc(0.0, 0.0);
                    for (int k = 0; k < block; ++k) {
                        if (scratch[k] != cd(0.0, 0.0)) {
                            acc += unitary(r, k) * scratch[k];
                        }
                    }
                    state.amps[base | (std::size_t(r) << offset)] = acc;
                }
            }
        }
    }
}

double expectation(const Statevector& state,
                   const std::vector<double>& energies) {
    if (energies.size() != state.amps.size()) {
        throw DimensionError("expectation: energy table size mismatch");
    }
    double value = 0.0;
    for (std::size_t s = 0; s < state.amps.size(); ++s) {
        const double p = std::norm(state.amps[s]);
        if (p != 0.0) value += p * energies[s];
    }
    return value;
}

double expectation(const Statevector& state,
                   const IsingHamiltonian& hamiltonian) {
    if (hamiltonian.n_qubits != state.n_qubits) {
        throw DimensionError("expectation: qubit count mismatch");
    }
    return expectation(state, energy_table(hamiltonian));
}

namespace {

// Shared multinomial core: draws `shots` indices from the cumulative
// distribution of `probs` (ascending index order).
std::vector<std::size_t> draw_indices(const std::vector<double>& probs,
                                      int shots, std::uint64_t seed) {
    std::vector<double> cumulative(probs.size());
    double total = 0.0;
    for (std::size_t s = 0; s < probs.size(); ++s) {
        total += probs[s];
        cumulative[s] = total;
    }
    Rng rng(seed);
    std::vector<std::size_t> picks(shots);
    for (int k = 0; k < shots; ++k) {
        const double u = uniform_unit(rng) * total;
        picks[k] = std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                   cumulative.begin();
        if (picks[k] >= probs.size()) picks[k] = probs.size() - 1;
    }
    return picks;
}

} // namespace

SampleSet sample(const Statevector& state, int shots, std::uint64_t seed) {
    if (shots < 1) {
        throw ParameterError("sample: shots must be >= 1");
    }
    std::vector<double> probs(state.amps.size());
    for (std::size_t s = 0; s < probs.size(); ++s) {
        probs[s] = std::norm(state.amps[s]);
    }
    SampleSet set;
    set.shots = shots;
    for (std::size_t pick : draw_indices(probs, shots, seed)) {
        ++set.counts[bits_to_string(pick, state.n_qubits)];
    }
    return set;
}

Statevector run_ansatz(const AnsatzConfig& config,
                       const IsingHamiltonian& hamiltonian,
                       const Params& params) {
    AnsatzEngine engine(config, hamiltonian);
    return engine.state_at(params);
}

AnsatzEngine::AnsatzEngine(const AnsatzConfig& config,
                           const IsingHamiltonian& hamiltonian)
    : config_(config), hamiltonian_(hamiltonian) {
    check_config(config_);
    if (hamiltonian_.n_qubits != config_.n_qubits()) {
        throw DimensionError("ansatz: Hamiltonian qubit count mismatch");
    }
    if (config_.kind == AnsatzKind::XMixerQaoa) {
        check_register(config_.n_qubits());
        table_ = energy_table(hamiltonian_);
        return;
    }
    const int N = config_.n_locations;
    dim_ = 1;
    for (int s = 0; s < config_.slots(); ++s) dim_ *= N;
    sub_bits_.resize(dim_);
    sub_energies_.resize(dim_);
    for (long long idx = 0; idx < dim_; ++idx) {
        long long rest = idx;
        std::uint64_t bits = 0;
        for (int s = 0; s < config_.slots(); ++s) {
            const int loc = static_cast<int>(rest % N);
            rest /= N;
            bits |= 1ULL << (s * N + loc);
        }
        sub_bits_[idx] = bits;
        sub_energies_[idx] = ising_energy(hamiltonian_, bits);
    }
}

const Eigen::MatrixXcd& AnsatzEngine::slot_mixer(double beta) {
    std::uint64_t key = 0;
    static_assert(sizeof(beta) == sizeof(key));
    std::memcpy(&key, &beta, sizeof(key));
    auto it = mixer_cache_.find(key);
    if (it != mixer_cache_.end()) return it->second;
    const int N = config_.n_locations;
    // Weight-1 sector of the slot ring evolution: on one-hot slot states the
    // ring acts as the cycle-graph adjacency matrix.
    Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        adjacency(i, (i + 1) % N) += 1.0;
        adjacency((i + 1) % N, i) += 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(adjacency);
    Eigen::VectorXcd phases(N);
    for (int i = 0; i < N; ++i) {
        phases[i] = std::polar(1.0, -beta * eigen.eigenvalues()[i]);
    }
    Eigen::MatrixXcd u1 = eigen.eigenvectors().cast<cd>() *
                          phases.asDiagonal() *
                          eigen.eigenvectors().transpose().cast<cd>();
    return mixer_cache_.emplace(key, std::move(u1)).first->second;
}

std::vector<cd> AnsatzEngine::run_subspace(const Params& params) {
    check_params(config_, params);
    const int N = config_.n_locations;
    const int slots = config_.slots();
    std::vector<cd> amps(dim_, cd(0.0, 0.0));
    amps[0] = cd(1.0, 0.0); // depot in every slot = subspace index 0
    std::vector<cd> scratch(N);
    for (int layer = 0; layer < config_.p; ++layer) {
        const double gamma = params.gammas[layer];
        for (long long idx = 0; idx < dim_; ++idx) {
            if (amps[idx] != cd(0.0, 0.0)) {
                amps[idx] *= std::polar(1.0, -gamma * sub_energies_[idx]);
            }
        }
        const Eigen::MatrixXcd& u1 = slot_mixer(params.betas[layer]);
        long long stride = 1;
        for (int s = 0; s < slots; ++s) {
            for (long long outer = 0; outer < dim_ / (stride * N); ++outer) {
                for (long long inner = 0; inner < stride; ++inner) {
                    const long long base = outer * stride * N + inner;
                    for (int l = 0; l < N; ++l) {
                        scratch[l] = amps[base + l * stride];
                    }
                    for (int r = 0; r < N; ++r) {
                        cd acc(0.0, 0.0);
                        for (int l = 0; l < N; ++l) {
                            acc += u1(r, l) * scratch[l];
                        }
                        amps[base + r * stride] = acc;
                    }
                }
            }
            stride *= N;
        }
    }
    return amps;
}

std::vector<double> AnsatzEngine::subspace_probs(const Params& params) {
    const std::vector<cd> amps = run_subspace(params);
    std::vector<double> probs(amps.size());
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        probs[idx] = std::norm(amps[idx]);
    }
    return probs;
}

double AnsatzEngine::expectation_at(const Params& params) {
    if (config_.kind == AnsatzKind::XMixerQaoa) {
        Statevector state = state_at(params);
        return expectation(state, table_);
    }
    const std::vector<double> probs = subspace_probs(params);
    double value = 0.0;
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
        if (probs[idx] != 0.0) value += probs[idx] * sub_energies_[idx];
    }
    return value;
}

SampleSet AnsatzEngine::sample_at(const Params& params, int shots,
                                  std::uint64_t seed) {
    if (shots < 1) {
        throw ParameterError("sample: shots must be >= 1");
    }
    if (config_.kind == AnsatzKind::XMixerQaoa) {
        Statevector state = state_at(params);
        return sample(state, shots, seed);
    }
    const std::vector<double> probs = subspace_probs(params);
    SampleSet set;
    set.shots = shots;
    const int n = config_.n_qubits();
    for (std::size_t pick : draw_indices(probs, shots, seed)) {
        ++set.counts[bits_to_string(sub_bits_[pick], n)];
    }
    return set;
}

double AnsatzEngine::sampled_energy_at(const Params& params, int shots,
                                       std::uint64_t seed) {
    if (shots < 1) {
        throw ParameterError("sample: shots must be >= 1");
    }
    if (config_.kind == AnsatzKind::XMixerQaoa) {
        Statevector state = state_at(params);
        std::vector<double> probs(state.amps.size());
        for (std::size_t s = 0; s < probs.size(); ++s) {
            probs[s] = std::norm(state.amps[s]);
        }
        double sum = 0.0;
        for (std::size_t pick : draw_indices(probs, shots, seed)) {
            sum += table_[pick];
        }
        return sum / shots;
    }
    const std::vector<double> probs = subspace_probs(params);
    double sum = 0.0;
    for (std::size_t pick : draw_indices(probs, shots, seed)) {
        sum += sub_energies_[pick];
    }
    return sum / shots;
}

Statevector AnsatzEngine::state_at(const Params& params) {
    check_params(config_, params);
    if (config_.kind == AnsatzKind::XMixerQaoa) {
        Statevector state = prepare_initial_state(config_);
        for (int layer = 0; layer < config_.p; ++layer) {
            apply_phase_separator(state, params.gammas[layer], table_);
            apply_x_mixer(state, params.betas[layer]);
        }
        return state;
    }
    check_register(config_.n_qubits());
    const std::vector<cd> amps = run_subspace(params);
    Statevector state;
    state.n_qubits = config_.n_qubits();
    state.amps.assign(1ULL << state.n_qubits, cd(0.0, 0.0));
    for (long long idx = 0; idx < dim_; ++idx) {
        state.amps[sub_bits_[idx]] = amps[idx];
    }
    return state;
}

} // namespace cgvrp
