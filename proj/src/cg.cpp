#include "cgvrp/cg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "cgvrp/rng.hpp"
#include "json.hpp"

namespace cgvrp {

std::string subsolver_name(Subsolver s) {
    switch (s) {
        case Subsolver::QaoansatzSim: return "qaoansatz";
        case Subsolver::QaoaSim: return "qaoa";
        case Subsolver::ExactOracle: return "exact";
    }
    return "unknown";
}

Subsolver subsolver_from_name(const std::string& name) {
    if (name == "qaoansatz") return Subsolver::QaoansatzSim;
    if (name == "qaoa") return Subsolver::QaoaSim;
    if (name == "exact") return Subsolver::ExactOracle;
    throw ParameterError("unknown subsolver: " + name);
}

std::vector<std::pair<Route, double>> decode_samples(
    const SampleSet& samples, const Instance& instance, int T,
    const DualSolution& duals, long long* infeasible_shots) {
    const int N = instance.n_locations;
    const int slots = T - 1;
    long long rejected = 0;
    std::map<std::vector<int>, std::pair<Route, double>> unique;
    for (const auto& [bitstring, count] : samples.counts) {
        if (static_cast<int>(bitstring.size()) != N * slots) {
            throw DimensionError("decode: bitstring length mismatch");
        }
        // Per-slot one-hot check and location sequence.
        std::vector<int> sequence;
        sequence.reserve(slots);
        bool feasible = true;
        for (int s = 0; s < slots && feasible; ++s) {
            int location = -1;
            for (int i = 0; i < N; ++i) {
                if (bitstring[s * N + i] == '1') {
                    if (location >= 0) {
                        feasible = false;
                        break;
                    }
                    location = i;
                }
            }
            if (location < 0) feasible = false;
            if (feasible) sequence.push_back(location);
        }
        std::vector<int> customers;
        int load = 0;
        std::uint64_t seen = 0;
        if (feasible) {
            for (int location : sequence) {
                if (location == 0) continue; // depot slot segments the tour
                if ((seen >> location) & 1ULL) {
                    feasible = false; // repeated customer
                    break;
                }
                seen |= 1ULL << location;
                load += instance.demands[location];
                customers.push_back(location);
            }
        }
        if (feasible && load > instance.capacity) feasible = false;
        if (!feasible) {
            rejected += count;
            continue;
        }
        Route route = Route::make(instance, customers);
        double reduced = route.distance();
        for (int c : route.customers()) {
            reduced -= duals.y[c];
        }
        unique.emplace(route.customers(), std::make_pair(route, reduced));
    }
    if (infeasible_shots) *infeasible_shots += rejected;
    std::vector<std::pair<Route, double>> decoded;
    decoded.reserve(unique.size());
    for (auto& [key, entry] : unique) {
        decoded.push_back(std::move(entry));
    }
    std::sort(decoded.begin(), decoded.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second < b.second;
                  return a.first.customers() < b.first.customers();
              });
    return decoded;
}

PricingOutcome price_once(const Instance& instance, const DualSolution& duals,
                          const CgConfig& config, std::uint64_t salt) {
    PricingOutcome outcome;
    if (config.subsolver == Subsolver::ExactOracle) {
        // Exhaustive pricing; the best K candidates feed the K-injection
        // rule, and the reported minimum includes the empty route at 0.
        std::vector<std::pair<Route, double>> scored;
        for (const Route& route : enumerate_routes(instance).routes) {
            if (route.size() > config.T - 1) continue;
            double reduced = route.distance();
            for (int c : route.customers()) reduced -= duals.y[c];
            scored.emplace_back(route, reduced);
        }
        std::sort(scored.begin(), scored.end(),
                  [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second < b.second;
                      return a.first.customers() < b.first.customers();
                  });
        outcome.best_reduced_cost =
            scored.empty() ? 0.0 : std::min(scored.front().second, 0.0);
        const std::size_t keep =
            std::min<std::size_t>(scored.size(), config.K);
        outcome.candidates.assign(scored.begin(), scored.begin() + keep);
        return outcome;
    }

    SubproblemSpec spec{instance, duals, config.T, config.lambda1,
                        config.lambda2, config.lambda3};
    QuboProblem qubo = build_alim_qubo(spec);
    if (config.subsolver == Subsolver::QaoaSim) {
        qubo = add_onehot_penalty(qubo, spec);
    }
    const IsingHamiltonian hamiltonian = qubo_to_ising(qubo);
    AnsatzConfig ansatz;
    ansatz.kind = config.subsolver == Subsolver::QaoaSim
                      ? AnsatzKind::XMixerQaoa
                      : AnsatzKind::XYMixerAnsatz;
    ansatz.p = config.p;
    ansatz.n_locations = instance.n_locations;
    ansatz.T = config.T;
    AnsatzEngine engine(ansatz, hamiltonian);

    OptimizerConfig opt = config.optimizer;
    opt.seed = mix_seed(config.seed, salt * 2 + 1);
    int eval_index = 0;
    auto objective = [&](const Params& params) {
        if (config.exact_expectation) {
            return engine.expectation_at(params);
        }
        const std::uint64_t shot_seed =
            mix_seed(opt.seed, 0x51AB00 + eval_index);
        ++eval_index;
        return engine.sampled_energy_at(params, config.shots, shot_seed);
    };
    const OptResult opt_result = minimize(objective, config.p, opt);

    outcome.best_params = opt_result.best_params;
    const std::uint64_t sample_seed = mix_seed(config.seed, salt * 2 + 2);
    const SampleSet samples =
        engine.sample_at(opt_result.best_params, config.shots, sample_seed);
    outcome.candidates = decode_samples(samples, instance, config.T, duals,
                                        &outcome.infeasible_samples);
    outcome.best_reduced_cost =
        outcome.candidates.empty()
            ? std::numeric_limits<double>::infinity()
            : outcome.candidates.front().second;
    return outcome;
}

CgResult run_cg(const Instance& instance, const CgConfig& config) {
    if (config.K < 1) {
        throw ParameterError("run_cg: K must be >= 1");
    }
    if (config.T < 2 || config.T > instance.n_locations) {
        throw ParameterError("run_cg: need 2 <= T <= n_locations");
    }
    if (config.max_iterations < 1) {
        throw ParameterError("run_cg: max_iterations must be >= 1");
    }
    CgResult result;
    RouteSet routes = initial_route_set(instance);
    const bool sampled = config.subsolver != Subsolver::ExactOracle;
    int consecutive_stalls = 0;
    CgConfig iter_config = config;
    std::optional<Params> warm;

    for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
        const auto started = std::chrono::steady_clock::now();
        const RmpLpSolution lp = solve_rmp_lp(routes, instance);
        iter_config.optimizer.initial_params =
            (config.warm_start && warm) ? warm
                                        : config.optimizer.initial_params;
        PricingOutcome pricing =
            price_once(instance, lp.duals, iter_config, iteration);
        if (sampled) warm = pricing.best_params;

        CgIterationLog log;
        log.iteration = iteration;
        log.lp_objective = lp.objective;
        log.duals = lp.duals;
        log.min_reduced_cost = pricing.best_reduced_cost;
        log.infeasible_samples = pricing.infeasible_samples;

        bool converged_now = false;
        if (pricing.best_reduced_cost >= -config.convergence_eps) {
            if (!sampled) {
                converged_now = true;
            } else if (config.verify_with_oracle) {
                const auto [route, exact_reduced] =
                    exact_min_reduced_cost(instance, lp.duals, config.T);
                converged_now = exact_reduced >= -config.convergence_eps;
            } else {
                ++consecutive_stalls;
                converged_now = consecutive_stalls >= 2;
            }
        } else {
            consecutive_stalls = 0;
            for (const auto& [route, reduced] : pricing.candidates) {
                if (log.routes_added >= config.K) break;
                if (reduced >= -config.convergence_eps) break;
                if (route.empty()) continue;
                if (routes.add(route)) {
                    ++log.routes_added;
                }
            }
        }
        const auto finished = std::chrono::steady_clock::now();
        log.wall_time_ms =
            std::chrono::duration<double, std::milli>(finished - started)
                .count();
        result.logs.push_back(std::move(log));
        if (converged_now) {
            result.converged = true;
            break;
        }
    }

    result.final_lp_objective = solve_rmp_lp(routes, instance).objective;
    result.final_solution = solve_rmp_integer(routes, instance);
    result.total_distance = result.final_solution.objective;
    result.final_routes = std::move(routes);
    return result;
}

std::string iteration_log_line(const CgIterationLog& log) {
    nlohmann::json record;
    record["iteration"] = log.iteration;
    record["lp_objective"] = log.lp_objective;
    record["min_reduced_cost"] =
        std::isfinite(log.min_reduced_cost)
            ? nlohmann::json(log.min_reduced_cost)
            : nlohmann::json(nullptr);
    record["routes_added"] = log.routes_added;
    record["infeasible_samples"] = log.infeasible_samples;
    record["wall_time_ms"] = log.wall_time_ms;
    return record.dump();
}

} // namespace cgvrp
