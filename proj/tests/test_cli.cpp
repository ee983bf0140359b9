#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

std::string cli_path() {
    const char* env = std::getenv("CGVRP_CLI");
    REQUIRE_MESSAGE(env != nullptr, "CGVRP_CLI must point at the binary");
    return env;
}

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

CommandResult run(const std::string& args) {
    const std::string out_path = "cli_out.tmp";
    const std::string command =
        cli_path() + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    std::remove(out_path.c_str());
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("gen writes a deterministic instance file") {
    const CommandResult first =
        run("gen --customers 5 --capacity 25 --seed 7 --out cli_a.json");
    CHECK(first.exit_code == 0);
    CHECK(first.output.find("cli_a.json") != std::string::npos);
    const CommandResult second =
        run("gen --customers 5 --capacity 25 --seed 7 --out cli_b.json");
    CHECK(second.exit_code == 0);
    CHECK(slurp("cli_a.json") == slurp("cli_b.json"));
    const auto doc = nlohmann::json::parse(slurp("cli_a.json"));
    CHECK(doc["n_locations"] == 6);
    CHECK(doc["schema_version"] == 1);
    std::remove("cli_b.json");
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("gen --customers 0").exit_code == 2);
    CHECK(run("definitely-not-a-subcommand").exit_code == 2);
    CHECK(run("").exit_code == 2);
    CHECK(run("solve").exit_code == 2); // missing instance argument
}

TEST_CASE("missing instance file exits with the io code and names the path") {
    const CommandResult result = run("solve no_such_instance.json");
    CHECK(result.exit_code == 3);
    CHECK(result.output.find("no_such_instance.json") != std::string::npos);
}

TEST_CASE("exact solve matches the oracle subcommand") {
    REQUIRE(run("gen --customers 4 --capacity 25 --seed 3 --out cli_c.json")
                .exit_code == 0);
    const CommandResult solve = run(
        "solve cli_c.json --subsolver exact --T 5 --verify-oracle "
        "--summary cli_summary.json --log cli_log.jsonl");
    CHECK(solve.exit_code == 0);
    const auto summary = nlohmann::json::parse(slurp("cli_summary.json"));
    CHECK(summary["converged"] == true);
    CHECK(summary["subsolver"] == "exact");
    // Either optimal or explicitly flagged.
    const bool flagged = summary["integrality_gap_flagged"].get<bool>();
    const double distance = summary["final_distance"].get<double>();
    const double reference = summary["oracle_distance"].get<double>();
    if (!flagged) {
        CHECK(distance == doctest::Approx(reference).epsilon(1e-9));
    }
    // JSONL log has one record per iteration.
    std::ifstream log("cli_log.jsonl");
    std::string line;
    int lines = 0;
    while (std::getline(log, line)) {
        const auto record = nlohmann::json::parse(line);
        CHECK(record.contains("lp_objective"));
        CHECK(record.contains("min_reduced_cost"));
        ++lines;
    }
    CHECK(lines == summary["iterations"].get<int>());
    std::remove("cli_c.json");
    std::remove("cli_summary.json");
    std::remove("cli_log.jsonl");
}

TEST_CASE("guard errors surface with their own exit code") {
    REQUIRE(run("gen --customers 9 --capacity 60 --seed 1 --out cli_big.json")
                .exit_code == 0);
    const CommandResult result = run("oracle cli_big.json");
    CHECK(result.exit_code == 5);
    CHECK(result.output.find("too large") != std::string::npos);
    std::remove("cli_big.json");
}

TEST_CASE("dump-qubo emits both forms") {
    REQUIRE(run("gen --customers 3 --capacity 25 --seed 2 --out cli_d.json")
                .exit_code == 0);
    const CommandResult result = run("dump-qubo cli_d.json --T 3");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    CHECK(doc.contains("qubo"));
    CHECK(doc.contains("ising"));
    CHECK(doc["qubo"]["n_vars"] == 8);
    std::remove("cli_d.json");
}

TEST_CASE("experiment sweeps emit a reproducible tidy csv") {
    const std::string flags =
        "experiment k_sweep --customers 4 --T 3 --samples 1 --seed 5 "
        "--subsolver exact --max-iters 6";
    const CommandResult first = run(flags + " --out cli_sweep.csv");
    CHECK(first.exit_code == 0);
    const std::string csv = slurp("cli_sweep.csv");
    CHECK(csv.find("experiment,sweep_value,seed,iteration,min_reduced_cost,"
                   "lp_objective,final_distance,oracle_distance,status") !=
          std::string::npos);
    CHECK(csv.find("k_sweep,1,5,1,") != std::string::npos);
    CHECK(csv.find("k_sweep,5,5,1,") != std::string::npos);
    CHECK(csv.find("k_sweep,10,5,1,") != std::string::npos);
    CHECK(csv.find(",ok") != std::string::npos);

    const CommandResult again = run(flags + " --out cli_sweep2.csv");
    CHECK(again.exit_code == 0);
    CHECK(slurp("cli_sweep2.csv") == csv); // bit-identical rerun
    std::remove("cli_sweep.csv");
    std::remove("cli_sweep2.csv");

    // samples_per_point=1 means exactly one seed per sweep value.
    int data_rows = 0;
    std::stringstream stream(csv);
    std::string line;
    std::getline(stream, line); // header
    std::string seen;
    while (std::getline(stream, line)) {
        if (!line.empty()) ++data_rows;
    }
    // One row per iteration, at least one per sweep value.
    CHECK(data_rows >= 3);
}

TEST_CASE("experiment rejects unknown kinds with the usage code") {
    CHECK(run("experiment unknown_sweep").exit_code == 2);
}
