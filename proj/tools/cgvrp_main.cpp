// cgvrp: generate CVRP instances, run the column-generation solver with
// simulated quantum pricing, and sweep the convergence experiments.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cgvrp/cg.hpp"
#include "cgvrp/instance.hpp"
#include "cgvrp/oracle.hpp"
#include "cgvrp/qubo.hpp"
#include "cgvrp/rng.hpp"

namespace {

using namespace cgvrp;

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kIo = 3,
    kInfeasible = 4,
    kGuard = 5,
    kInternal = 6,
};

struct SolveFlags {
    std::string instance_path;
    std::string subsolver = "qaoansatz";
    int p = 2;
    int T = 4;
    int K = 10;
    int shots = 1000;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double lambda3 = 1.0;
    double eps = 1e-6;
    int max_iters = 30;
    std::uint64_t seed = 0;
    bool shot_expectation = false;
    bool verify_oracle = false;
    std::string log_path;
    std::string summary_path;
};

CgConfig to_config(const SolveFlags& flags) {
    CgConfig config;
    config.subsolver = subsolver_from_name(flags.subsolver);
    config.p = flags.p;
    config.T = flags.T;
    config.K = flags.K;
    config.shots = flags.shots;
    config.lambda1 = flags.lambda1;
    config.lambda2 = flags.lambda2;
    config.lambda3 = flags.lambda3;
    config.convergence_eps = flags.eps;
    config.max_iterations = flags.max_iters;
    config.seed = flags.seed;
    config.exact_expectation = !flags.shot_expectation;
    config.verify_with_oracle = flags.verify_oracle;
    return config;
}

std::string route_to_string(const Route& route) {
    std::ostringstream out;
    out << "depot";
    for (int c : route.customers()) out << " -> " << c;
    out << " -> depot";
    return out.str();
}

int run_solve(const SolveFlags& flags) {
    const Instance instance = load_instance(flags.instance_path);
    const CgConfig config = to_config(flags);
    const auto started = std::chrono::steady_clock::now();
    const CgResult result = run_cg(instance, config);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - started)
            .count();

    if (!flags.log_path.empty()) {
        std::ofstream log(flags.log_path);
        if (!log) {
            throw SchemaError("cannot write log file: " + flags.log_path);
        }
        for (const CgIterationLog& entry : result.logs) {
            log << iteration_log_line(entry) << "\n";
        }
    }

    nlohmann::json summary;
    summary["instance"] = flags.instance_path;
    summary["subsolver"] = flags.subsolver;
    summary["converged"] = result.converged;
    summary["iterations"] = result.iterations();
    summary["final_distance"] = result.total_distance;
    summary["final_lp_objective"] = result.final_lp_objective;
    summary["routes_in_pool"] = result.final_routes.size();
    summary["wall_time_ms"] = wall_ms;
    if (flags.verify_oracle && instance.n_locations <= 8) {
        const double reference = exact_cvrp(instance).objective;
        summary["oracle_distance"] = reference;
        summary["integrality_gap_flagged"] =
            std::abs(result.total_distance - reference) > 1e-9;
    }

    std::cout << "converged: " << (result.converged ? "yes" : "no") << "\n";
    std::cout << "iterations: " << result.iterations() << "\n";
    std::cout << "total distance: " << result.total_distance << "\n";
    std::cout << "routes:\n";
    for (const Route& route : result.final_solution.selected) {
        std::cout << "  " << route_to_string(route)
                  << "  (distance " << route.distance() << ", load "
                  << route.load() << ")\n";
    }
    if (!flags.summary_path.empty()) {
        std::ofstream out(flags.summary_path);
        if (!out) {
            throw SchemaError("cannot write summary file: " +
                              flags.summary_path);
        }
        out << summary.dump(2) << "\n";
    } else {
        std::cout << summary.dump(2) << "\n";
    }
    return kOk;
}

struct ExperimentFlags {
    std::string kind;
    int customers = -1; // -1 = per-experiment default
    int capacity = 25;
    int demand_lo = 1;
    int demand_hi = 15;
    int T = 4;
    int p = 2;
    int K = 10;
    int shots = 1000;
    int samples = 10;
    int max_iters = 10;
    std::uint64_t base_seed = 1;
    std::string subsolver = "qaoansatz";
    std::string vary = "instance";
    std::string out_path;
    bool verify_oracle = true;
};

struct ExperimentTask {
    std::string sweep_value;
    std::uint64_t seed = 0;
    CgConfig config;
    std::uint64_t instance_seed = 0;
    int customers = 0;
};

struct TaskRows {
    std::vector<std::string> rows;
};

int worker_count(std::size_t n_tasks) {
    unsigned count = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("CGVRP_WORKERS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) count = static_cast<unsigned>(parsed);
    }
    if (count < 1) count = 1;
    return static_cast<int>(std::min<std::size_t>(count, n_tasks));
}

std::string csv_double(double value) {
    if (!std::isfinite(value)) return "";
    std::ostringstream out;
    out.precision(12);
    out << value;
    return out.str();
}

int run_experiment(const ExperimentFlags& flags) {
    std::vector<ExperimentTask> tasks;
    auto base_config = [&flags](Subsolver subsolver) {
        CgConfig config;
        config.subsolver = subsolver;
        config.T = flags.T;
        config.p = flags.p;
        config.K = flags.K;
        config.shots = flags.shots;
        config.max_iterations = flags.max_iters;
        config.verify_with_oracle = flags.verify_oracle;
        return config;
    };
    int customers = flags.customers;

    if (flags.kind == "compare_mixers") {
        if (customers < 0) customers = 4;
        for (const char* name : {"qaoansatz", "qaoa"}) {
            for (int s = 0; s < flags.samples; ++s) {
                ExperimentTask task;
                task.sweep_value = name;
                task.config = base_config(subsolver_from_name(name));
                task.customers = customers;
                task.seed = flags.base_seed + s;
                tasks.push_back(task);
            }
        }
    } else if (flags.kind == "layer_sweep") {
        if (customers < 0) customers = 5;
        for (int p : {1, 2, 3}) {
            for (int s = 0; s < flags.samples; ++s) {
                ExperimentTask task;
                task.sweep_value = std::to_string(p);
                task.config = base_config(subsolver_from_name(flags.subsolver));
                task.config.p = p;
                task.customers = customers;
                task.seed = flags.base_seed + s;
                tasks.push_back(task);
            }
        }
    } else if (flags.kind == "time_sweep") {
        if (customers < 0) customers = 5;
        for (int T : {2, 3, 4, 5}) {
            for (int s = 0; s < flags.samples; ++s) {
                ExperimentTask task;
                task.sweep_value = std::to_string(T);
                task.config = base_config(subsolver_from_name(flags.subsolver));
                task.config.T = T;
                task.customers = customers;
                task.seed = flags.base_seed + s;
                tasks.push_back(task);
            }
        }
    } else if (flags.kind == "k_sweep") {
        if (customers < 0) customers = 6;
        for (int K : {1, 5, 10}) {
            for (int s = 0; s < flags.samples; ++s) {
                ExperimentTask task;
                task.sweep_value = std::to_string(K);
                task.config = base_config(subsolver_from_name(flags.subsolver));
                task.config.K = K;
                task.customers = customers;
                task.seed = flags.base_seed + s;
                tasks.push_back(task);
            }
        }
    } else {
        throw ParameterError("unknown experiment: " + flags.kind);
    }

    // Seed policy: vary=instance draws a fresh instance per sample;
    // vary=solver reuses one instance and varies the solver seed.
    for (ExperimentTask& task : tasks) {
        task.instance_seed =
            flags.vary == "instance" ? task.seed : flags.base_seed;
        task.config.seed = task.seed;
    }

    std::vector<TaskRows> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto run_task = [&](std::size_t index) {
        const ExperimentTask& task = tasks[index];
        TaskRows& rows = results[index];
        std::ostringstream prefix;
        prefix << flags.kind << "," << task.sweep_value << "," << task.seed;
        try {
            const Instance instance =
                generate_instance(task.instance_seed, task.customers,
                                  flags.capacity, flags.demand_lo,
                                  flags.demand_hi);
            CgConfig config = task.config;
            if (config.T > instance.n_locations) {
                config.T = instance.n_locations;
            }
            const CgResult result = run_cg(instance, config);
            const double oracle_distance =
                instance.n_locations <= 8 ? exact_cvrp(instance).objective
                                          : std::nan("");
            for (const CgIterationLog& log : result.logs) {
                std::ostringstream row;
                row << prefix.str() << "," << log.iteration << ","
                    << csv_double(log.min_reduced_cost) << ","
                    << csv_double(log.lp_objective) << ","
                    << csv_double(result.total_distance) << ","
                    << csv_double(oracle_distance) << ",ok";
                rows.rows.push_back(row.str());
            }
        } catch (const Error& e) {
            rows.rows.push_back(prefix.str() + ",,,,,," +
                                std::string("error: ") + e.what());
        }
    };
    const int workers = worker_count(tasks.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t index = next.fetch_add(1); index < tasks.size();
                 index = next.fetch_add(1)) {
                run_task(index);
            }
        });
    }
    for (std::thread& t : pool) t.join();

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!flags.out_path.empty()) {
        file.open(flags.out_path);
        if (!file) {
            throw SchemaError("cannot write csv file: " + flags.out_path);
        }
        out = &file;
    }
    *out << "experiment,sweep_value,seed,iteration,min_reduced_cost,"
            "lp_objective,final_distance,oracle_distance,status\n";
    for (const TaskRows& rows : results) {
        for (const std::string& row : rows.rows) {
            *out << row << "\n";
        }
    }
    return kOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Column-generation CVRP solver with simulated quantum pricing"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random instance file");
    int gen_customers = 4;
    int gen_capacity = 25;
    int gen_lo = 1, gen_hi = 15;
    std::uint64_t gen_seed = 0;
    std::string gen_out = "instance.json";
    gen->add_option("--customers", gen_customers, "Customer count")
        ->check(CLI::PositiveNumber);
    gen->add_option("--capacity", gen_capacity, "Vehicle capacity W");
    gen->add_option("--demand-lo", gen_lo, "Smallest demand");
    gen->add_option("--demand-hi", gen_hi, "Largest demand");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "Output path");

    // solve
    auto* solve = app.add_subcommand("solve", "Run column generation");
    SolveFlags solve_flags;
    solve->add_option("instance", solve_flags.instance_path, "Instance file")
        ->required();
    solve->add_option("--subsolver", solve_flags.subsolver,
                      "qaoansatz | qaoa | exact");
    solve->add_option("--p", solve_flags.p, "Ansatz layers");
    solve->add_option("--T", solve_flags.T, "Subproblem time steps");
    solve->add_option("--K", solve_flags.K, "Routes injected per iteration");
    solve->add_option("--shots", solve_flags.shots, "Samples per circuit");
    solve->add_option("--lambda1", solve_flags.lambda1, "Capacity multiplier");
    solve->add_option("--lambda2", solve_flags.lambda2,
                      "At-most-one multiplier");
    solve->add_option("--lambda3", solve_flags.lambda3,
                      "One-hot penalty (qaoa only)");
    solve->add_option("--eps", solve_flags.eps, "Convergence tolerance");
    solve->add_option("--max-iters", solve_flags.max_iters, "Iteration cap");
    solve->add_option("--seed", solve_flags.seed, "Run seed");
    auto* exact_flag = solve->add_flag("--exact-expectation",
                                       "Exact objective (default)");
    solve->add_flag("--shot-expectation", solve_flags.shot_expectation,
                    "Estimate the objective from shots")
        ->excludes(exact_flag);
    solve->add_flag("--verify-oracle", solve_flags.verify_oracle,
                    "Cross-check convergence and the final distance");
    solve->add_option("--log", solve_flags.log_path, "Iteration JSONL path");
    solve->add_option("--summary", solve_flags.summary_path,
                      "Summary JSON path (stdout when omitted)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exact reference solution");
    std::string oracle_path;
    oracle->add_option("instance", oracle_path, "Instance file")->required();

    // dump-qubo
    auto* dump = app.add_subcommand(
        "dump-qubo", "Export the first-iteration pricing QUBO and Ising form");
    std::string dump_path;
    std::string dump_out;
    int dump_T = 4;
    double dump_l1 = 1.0, dump_l2 = 1.0, dump_l3 = 1.0;
    bool dump_onehot = false;
    dump->add_option("instance", dump_path, "Instance file")->required();
    dump->add_option("--T", dump_T, "Subproblem time steps");
    dump->add_option("--lambda1", dump_l1, "Capacity multiplier");
    dump->add_option("--lambda2", dump_l2, "At-most-one multiplier");
    dump->add_option("--lambda3", dump_l3, "One-hot penalty");
    dump->add_flag("--with-onehot-penalty", dump_onehot,
                   "Include the X-mixer baseline's one-hot penalty");
    dump->add_option("--out", dump_out, "Output path (stdout when omitted)");

    // experiment
    auto* experiment = app.add_subcommand(
        "experiment", "Sweep runs and emit a tidy CSV dataset");
    ExperimentFlags exp_flags;
    experiment
        ->add_option("kind", exp_flags.kind,
                     "compare_mixers | layer_sweep | time_sweep | k_sweep")
        ->required();
    experiment->add_option("--customers", exp_flags.customers,
                           "Customer count (per-experiment default)");
    experiment->add_option("--capacity", exp_flags.capacity, "Capacity W");
    experiment->add_option("--demand-lo", exp_flags.demand_lo, "Smallest demand");
    experiment->add_option("--demand-hi", exp_flags.demand_hi, "Largest demand");
    experiment->add_option("--T", exp_flags.T, "Time steps");
    experiment->add_option("--p", exp_flags.p, "Ansatz layers");
    experiment->add_option("--K", exp_flags.K, "Routes per iteration");
    experiment->add_option("--shots", exp_flags.shots, "Samples per circuit");
    experiment->add_option("--samples", exp_flags.samples,
                           "Samples per sweep point")
        ->check(CLI::PositiveNumber);
    experiment->add_option("--max-iters", exp_flags.max_iters, "Iteration cap");
    experiment->add_option("--seed", exp_flags.base_seed, "Base seed");
    experiment->add_option("--subsolver", exp_flags.subsolver,
                           "Subsolver for layer/time/k sweeps");
    experiment
        ->add_option("--vary", exp_flags.vary,
                     "What the samples vary: instance | solver")
        ->check(CLI::IsMember({"instance", "solver"}));
    bool no_verify = false;
    experiment->add_flag("--no-verify-oracle", no_verify,
                         "Trust sampled convergence without exact checks");

    experiment->add_option("--out", exp_flags.out_path,
                           "CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (gen->parsed()) {
            const Instance instance = generate_instance(
                gen_seed, gen_customers, gen_capacity, gen_lo, gen_hi);
            save_instance(instance, gen_out);
            std::cout << gen_out << "\n";
            return kOk;
        }
        if (solve->parsed()) {
            return run_solve(solve_flags);
        }
        if (oracle->parsed()) {
            const Instance instance = load_instance(oracle_path);
            const EnumeratedRoutes all = enumerate_routes(instance);
            const RmpIntSolution solution = exact_cvrp(instance);
            std::cout << "feasible routes: " << all.routes.size() << "\n";
            std::cout << "optimal distance: " << solution.objective << "\n";
            for (const Route& route : solution.selected) {
                std::cout << "  " << route_to_string(route) << "\n";
            }
            return kOk;
        }
        if (dump->parsed()) {
            const Instance instance = load_instance(dump_path);
            // First-iteration duals: the singleton-initialization LP.
            const RmpLpSolution lp =
                solve_rmp_lp(initial_route_set(instance), instance);
            SubproblemSpec spec{instance, lp.duals, dump_T,
                                dump_l1, dump_l2, dump_l3};
            QuboProblem qubo = build_alim_qubo(spec);
            if (dump_onehot) qubo = add_onehot_penalty(qubo, spec);
            nlohmann::json doc;
            doc["qubo"] = nlohmann::json::parse(qubo_to_json_string(qubo));
            doc["ising"] =
                nlohmann::json::parse(ising_to_json_string(qubo_to_ising(qubo)));
            if (dump_out.empty()) {
                std::cout << doc.dump(2) << "\n";
            } else {
                std::ofstream out(dump_out);
                if (!out) {
                    throw SchemaError("cannot write file: " + dump_out);
                }
                out << doc.dump(2) << "\n";
            }
            return kOk;
        }
        if (experiment->parsed()) {
            exp_flags.verify_oracle = !no_verify;
            return run_experiment(exp_flags);
        }
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kGuard;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}

} // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
