#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cgvrp/simulator.hpp"

namespace cgvrp {

struct OptimizerConfig {
    int max_evals = 250;
    // Defaults to gamma_k = beta_k = 0.01 (near-identity circuit start).
    std::optional<Params> initial_params;
    double initial_step = 0.25;
    // Absolute objective-spread tolerance across the simplex.
    double convergence_tol = 1e-6;
    // Jitters the initial simplex deterministically; 0 means no jitter.
    std::uint64_t seed = 0;
};

struct OptResult {
    Params best_params;
    double best_value = 0.0;
    int n_evals = 0;
    // Incumbent improvements: (evaluation index, objective value).
    std::vector<std::pair<int, double>> trace;
};

// Nelder-Mead over the flattened (gamma_1..gamma_p, beta_1..beta_p) vector,
// standard coefficients (reflect 1, expand 2, contract 1/2, shrink 1/2).
// Never returns a value worse than the initial evaluation.
OptResult minimize(const std::function<double(const Params&)>& objective,
                   int p, const OptimizerConfig& config = {});

} // namespace cgvrp
