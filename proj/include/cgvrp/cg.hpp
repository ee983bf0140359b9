#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cgvrp/instance.hpp"
#include "cgvrp/master.hpp"
#include "cgvrp/optimizer.hpp"
#include "cgvrp/oracle.hpp"
#include "cgvrp/qubo.hpp"
#include "cgvrp/route.hpp"
#include "cgvrp/simulator.hpp"

namespace cgvrp {

enum class Subsolver { QaoansatzSim, QaoaSim, ExactOracle };

std::string subsolver_name(Subsolver s);
Subsolver subsolver_from_name(const std::string& name);

struct CgConfig {
    int T = 4;
    int K = 10; // candidate routes injected per iteration
    Subsolver subsolver = Subsolver::QaoansatzSim;
    int p = 2;
    int shots = 1000;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double lambda3 = 1.0;
    double convergence_eps = 1e-6;
    int max_iterations = 30;
    std::uint64_t seed = 0;
    // Exact expectation values in the parameter objective (deterministic);
    // false estimates the objective from `shots` samples per evaluation.
    bool exact_expectation = true;
    // Confirm convergence with exact pricing instead of the two-stall rule.
    bool verify_with_oracle = false;
    // Reuse the previous iteration's best parameters as the starting point.
    bool warm_start = false;
    OptimizerConfig optimizer;
};

struct CgIterationLog {
    int iteration = 0;
    double lp_objective = 0.0;
    DualSolution duals;
    // Best reduced cost among decoded candidates (+inf if none feasible),
    // or the exact minimum for the oracle subsolver.
    double min_reduced_cost = 0.0;
    int routes_added = 0;
    long long infeasible_samples = 0;
    double wall_time_ms = 0.0;
};

struct CgResult {
    std::vector<CgIterationLog> logs;
    RouteSet final_routes;
    RmpIntSolution final_solution;
    bool converged = false;
    double total_distance = 0.0;
    double final_lp_objective = 0.0;

    int iterations() const { return static_cast<int>(logs.size()); }
};

// Reconstructs routes from sampled bitstrings. A sample is rejected when a
// time slot violates one-hot, a customer repeats, or the load exceeds W;
// depot slots merely segment the tour (their legs cost d_0,0 = 0 or fold
// away). Results are deduplicated by canonical route and sorted by ascending
// reduced cost (ties lexicographic). The all-depot sample decodes to the
// empty route at reduced cost 0. `infeasible_shots`, when given, accumulates
// the rejected shot count.
std::vector<std::pair<Route, double>> decode_samples(
    const SampleSet& samples, const Instance& instance, int T,
    const DualSolution& duals, long long* infeasible_shots = nullptr);

struct PricingOutcome {
    std::vector<std::pair<Route, double>> candidates; // sorted by reduced cost
    double best_reduced_cost = 0.0; // +inf if no feasible sample decoded
    long long infeasible_samples = 0;
    Params best_params; // optimized variational parameters (sampled solvers)
};

// One pricing round under the configured subsolver. `salt` separates the
// optimizer/sampling seed streams of successive CG iterations.
PricingOutcome price_once(const Instance& instance, const DualSolution& duals,
                          const CgConfig& config, std::uint64_t salt = 0);

// Column generation: singleton initialization, LP duals -> pricing -> inject
// up to K distinct negative-reduced-cost routes, repeat until no improving
// route is found (two consecutive stalls for sampled subsolvers, or exact
// confirmation with verify_with_oracle), then solve the integer RMP over the
// final route pool.
CgResult run_cg(const Instance& instance, const CgConfig& config);

// One JSONL record per iteration: iteration, lp_objective, min_reduced_cost,
// routes_added, infeasible_samples, wall_time_ms.
std::string iteration_log_line(const CgIterationLog& log);

} // namespace cgvrp
