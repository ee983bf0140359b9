#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "cgvrp/instance.hpp"
#include "cgvrp/oracle.hpp"
#include "cgvrp/qubo.hpp"
#include "cgvrp/rng.hpp"
#include "support/oracles.hpp"

using namespace cgvrp;

namespace {

DualSolution zero_duals(const Instance& inst) {
    DualSolution duals;
    duals.y.assign(inst.n_locations, 0.0);
    return duals;
}

DualSolution random_duals(const Instance& inst, std::uint64_t seed) {
    DualSolution duals;
    duals.y.assign(inst.n_locations, 0.0);
    Rng rng(seed);
    for (int c = 1; c < inst.n_locations; ++c) {
        duals.y[c] = uniform_unit(rng) * 2.0;
    }
    return duals;
}

SubproblemSpec make_spec(std::uint64_t seed, int n_customers, int T) {
    const Instance inst = generate_instance(seed, n_customers, 25, 1, 15);
    return SubproblemSpec{inst, random_duals(inst, seed + 1000), T, 1.0, 1.0,
                          1.0};
}

} // namespace

TEST_CASE("all-zero bitstring energy equals the capacity offset") {
    SubproblemSpec spec = make_spec(5, 3, 3);
    const QuboProblem qubo = build_alim_qubo(spec);
    // lambda1 (W^2 - W) with W = 25.
    CHECK(evaluate(qubo, 0) == doctest::Approx(600.0).epsilon(1e-12));
    CHECK(qubo.offset == doctest::Approx(600.0).epsilon(1e-12));
}

TEST_CASE("depot-parked bitstring keeps only the capacity terms") {
    SubproblemSpec spec = make_spec(6, 4, 4);
    const QuboProblem qubo = build_alim_qubo(spec);
    std::uint64_t bits = 0;
    for (int t = 1; t <= spec.T - 1; ++t) {
        bits |= 1ULL << qubo.var_index(0, t);
    }
    CHECK(evaluate(qubo, bits) == doctest::Approx(600.0).epsilon(1e-9));
}

TEST_CASE("two-customer T=2 energy matches the hand expansion") {
    const Instance inst = generate_instance(8, 2, 25, 1, 15);
    SubproblemSpec spec{inst, random_duals(inst, 99), 2, 1.0, 1.0, 1.0};
    const QuboProblem qubo = build_alim_qubo(spec);
    const std::uint64_t bits = 1ULL << qubo.var_index(1, 1);
    const double w1 = inst.demands[1];
    const double slack = w1 - inst.capacity;
    const double expected = inst.dist[0][1] + inst.dist[1][0] -
                            spec.duals.y[1] + slack + slack * slack;
    CHECK(evaluate(qubo, bits) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("onehot penalty vanishes exactly on feasible strings") {
    SubproblemSpec spec = make_spec(12, 3, 4);
    const QuboProblem base = build_alim_qubo(spec);
    const QuboProblem penalized = add_onehot_penalty(base, spec);
    const int N = spec.instance.n_locations;
    const int slots = spec.T - 1;

    // One location per slot: penalty contributes 0.
    std::uint64_t feasible = 0;
    feasible |= 1ULL << base.var_index(1, 1);
    feasible |= 1ULL << base.var_index(0, 2);
    feasible |= 1ULL << base.var_index(2, 3);
    CHECK(evaluate(penalized, feasible) ==
          doctest::Approx(evaluate(base, feasible)).epsilon(1e-9));

    // Two locations in slot 1: one extra lambda3.
    std::uint64_t doubled = feasible | (1ULL << base.var_index(2, 1));
    // Removing customer 2 from slot 3 leaves that slot empty: also lambda3.
    std::uint64_t emptied = feasible & ~(1ULL << base.var_index(2, 3));
    CHECK(evaluate(penalized, doubled) - evaluate(base, doubled) ==
          doctest::Approx(spec.lambda3).epsilon(1e-9));
    CHECK(evaluate(penalized, emptied) - evaluate(base, emptied) ==
          doctest::Approx(spec.lambda3).epsilon(1e-9));

    // Exhaustive: zero exactly on one-hot strings, positive otherwise.
    for (std::uint64_t bits = 0; bits < (1ULL << (N * slots)); ++bits) {
        bool onehot = true;
        for (int s = 0; s < slots; ++s) {
            int occupancy = 0;
            for (int i = 0; i < N; ++i) {
                occupancy += (bits >> (s * N + i)) & 1ULL;
            }
            if (occupancy != 1) onehot = false;
        }
        const double delta =
            evaluate(penalized, bits) - evaluate(base, bits);
        if (onehot) {
            CHECK(std::abs(delta) <= 1e-9);
        } else {
            CHECK(delta > 0.0);
        }
    }
}

TEST_CASE("builder rejects bad subproblem parameters") {
    const Instance inst = generate_instance(1, 3, 25, 1, 15);
    SubproblemSpec spec{inst, zero_duals(inst), 1, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(build_alim_qubo(spec), ParameterError);
    spec.T = inst.n_locations + 1;
    CHECK_THROWS_AS(build_alim_qubo(spec), ParameterError);
    spec.T = 3;
    spec.lambda1 = -1.0;
    CHECK_THROWS_AS(build_alim_qubo(spec), ParameterError);
}

TEST_CASE("ising conversion identities for tiny qubos") {
    QuboProblem single;
    single.n_vars = 1;
    single.n_locations = 1;
    single.T = 2;
    single.linear = {3.0};
    const IsingHamiltonian h1 = qubo_to_ising(single);
    CHECK(h1.h[0] == doctest::Approx(-1.5));
    CHECK(h1.constant == doctest::Approx(1.5));

    QuboProblem product;
    product.n_vars = 2;
    product.n_locations = 2;
    product.T = 2;
    product.linear = {0.0, 0.0};
    product.quadratic[{0, 1}] = 1.0;
    const IsingHamiltonian h2 = qubo_to_ising(product);
    CHECK(h2.coupling.at({0, 1}) == doctest::Approx(0.25));
    CHECK(h2.h[0] == doctest::Approx(-0.25));
    CHECK(h2.h[1] == doctest::Approx(-0.25));
    CHECK(h2.constant == doctest::Approx(0.25));
}

TEST_CASE("ising energies equal qubo energies on every bitstring") {
    for (std::uint64_t seed : {3, 14, 25}) {
        // Random 6-variable qubo via a 3-location, T=3 subproblem.
        SubproblemSpec spec = make_spec(seed, 2, 3);
        const QuboProblem qubo = add_onehot_penalty(build_alim_qubo(spec), spec);
        const IsingHamiltonian ising = qubo_to_ising(qubo);
        REQUIRE(qubo.n_vars == 6);
        for (std::uint64_t bits = 0; bits < 64; ++bits) {
            CHECK(std::abs(evaluate(qubo, bits) - ising_energy(ising, bits)) <=
                  1e-9);
        }
    }
}

TEST_CASE("builder energies match the term-by-term reference") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const int n_customers = 2 + static_cast<int>(seed % 2); // N = 3 or 4
        const int T = 3 + static_cast<int>(seed % 2);           // T = 3 or 4
        if ((n_customers + 1) * (T - 1) > 16) continue;
        SubproblemSpec spec = make_spec(seed, n_customers, T);
        const QuboProblem plain = build_alim_qubo(spec);
        const QuboProblem penalized = add_onehot_penalty(plain, spec);
        for (std::uint64_t bits = 0; bits < (1ULL << plain.n_vars); ++bits) {
            CHECK(std::abs(evaluate(plain, bits) -
                           testsupport::subproblem_energy_ref(spec, bits,
                                                              false)) <= 1e-9);
            CHECK(std::abs(evaluate(penalized, bits) -
                           testsupport::subproblem_energy_ref(spec, bits,
                                                              true)) <= 1e-9);
        }
    }
}

TEST_CASE("feasible-set minimum matches the exact pricing oracle") {
    // Over assignments that decode to valid routes (one-hot per slot,
    // distinct customers, load <= W), the objective splits into the tour
    // reduced cost plus the capacity terms; minimizing the reduced-cost part
    // must reproduce the oracle's exhaustive minimum (empty route at 0).
    for (std::uint64_t seed : {1, 2, 3, 4}) {
        const Instance inst = generate_instance(seed, 3, 25, 1, 15); // N = 4
        const int T = 3;
        SubproblemSpec spec{inst, random_duals(inst, seed + 50), T, 1.0, 1.0,
                            1.0};
        const QuboProblem qubo = build_alim_qubo(spec);
        const int N = inst.n_locations;
        const int slots = T - 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t bits = 0; bits < (1ULL << qubo.n_vars); ++bits) {
            std::vector<int> sequence;
            bool onehot = true;
            for (int s = 0; s < slots; ++s) {
                int location = -1;
                for (int i = 0; i < N; ++i) {
                    if ((bits >> (s * N + i)) & 1ULL) {
                        if (location >= 0) onehot = false;
                        location = i;
                    }
                }
                if (location < 0) onehot = false;
                sequence.push_back(location);
            }
            if (!onehot) continue;
            int load = 0;
            std::uint64_t seen = 0;
            bool distinct = true;
            for (int location : sequence) {
                if (location == 0) continue;
                if ((seen >> location) & 1ULL) distinct = false;
                seen |= 1ULL << location;
                load += inst.demands[location];
            }
            if (!distinct || load > inst.capacity) continue;
            const double slack = load - inst.capacity;
            const double capacity_terms =
                spec.lambda1 * (slack + slack * slack);
            best = std::min(best, evaluate(qubo, bits) - capacity_terms);
        }
        const auto [route, oracle_best] =
            exact_min_reduced_cost(inst, spec.duals, T);
        CHECK(best == doctest::Approx(oracle_best).epsilon(1e-9));
    }
}

TEST_CASE("evaluate validates bitstring length") {
    SubproblemSpec spec = make_spec(2, 2, 2);
    const QuboProblem qubo = build_alim_qubo(spec);
    CHECK_THROWS_AS(evaluate(qubo, std::vector<int>{1, 0}), DimensionError);
}

TEST_CASE("qubit accounting reproduces the published formulas") {
    const Instance five = generate_instance(1, 4, 25, 1, 15); // N = 5
    const QubitCounts c5 = qubit_counts(five, 4);
    CHECK(c5.alim == 20);
    CHECK(c5.slack == 29);

    const Instance six = generate_instance(1, 5, 25, 1, 15); // N = 6
    const QubitCounts c6 = qubit_counts(six, 4);
    CHECK(c6.alim == 24);
    CHECK(c6.slack == 34);

    const Instance unit = generate_instance(1, 4, 1, 1, 1); // W = 1
    const QubitCounts c1 = qubit_counts(unit, 3);
    CHECK(c1.alim == 15);
    CHECK(c1.slack == 5 * 4 - 1);
}

TEST_CASE("json export carries all coefficients") {
    SubproblemSpec spec = make_spec(4, 2, 2);
    const QuboProblem qubo = build_alim_qubo(spec);
    const std::string qubo_json = qubo_to_json_string(qubo);
    CHECK(qubo_json.find("\"offset\"") != std::string::npos);
    CHECK(qubo_json.find("\"quadratic\"") != std::string::npos);
    const std::string ising_json = ising_to_json_string(qubo_to_ising(qubo));
    CHECK(ising_json.find("\"coupling\"") != std::string::npos);
    CHECK(ising_json.find("\"constant\"") != std::string::npos);
}
