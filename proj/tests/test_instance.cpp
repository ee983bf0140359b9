#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cgvrp/instance.hpp"

using namespace cgvrp;

namespace {

std::string temp_path(const std::string& name) {
    return std::string("instance_test_") + name;
}

} // namespace

TEST_CASE("generated instance matches the experimental setup") {
    const Instance inst = generate_instance(42, 4, 25, 1, 15);
    CHECK(inst.n_locations == 5);
    CHECK(inst.capacity == 25);
    CHECK(inst.coords[0][0] == 0.5);
    CHECK(inst.coords[0][1] == 0.5);
    CHECK(inst.demands[0] == 0);
    for (int i = 1; i < inst.n_locations; ++i) {
        CHECK(inst.demands[i] >= 1);
        CHECK(inst.demands[i] <= 15);
        CHECK(inst.coords[i][0] >= 0.0);
        CHECK(inst.coords[i][0] <= 1.0);
    }
}

TEST_CASE("degenerate demand range pins every demand") {
    const Instance inst = generate_instance(7, 1, 25, 5, 5);
    CHECK(inst.demands == std::vector<int>{0, 5});
}

TEST_CASE("same seed gives bit-identical instances") {
    const Instance a = generate_instance(123, 6, 25, 1, 15);
    const Instance b = generate_instance(123, 6, 25, 1, 15);
    CHECK(a == b);
    CHECK(a.dist == b.dist);
    const Instance c = generate_instance(124, 6, 25, 1, 15);
    CHECK_FALSE(a == c);
}

TEST_CASE("distance matrix is symmetric with zero diagonal") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const Instance inst = generate_instance(seed, 5, 25, 1, 15);
        for (int i = 0; i < inst.n_locations; ++i) {
            CHECK(inst.dist[i][i] == 0.0);
            for (int j = 0; j < inst.n_locations; ++j) {
                CHECK(inst.dist[i][j] == inst.dist[j][i]);
                CHECK(inst.dist[i][j] >= 0.0);
            }
        }
    }
}

TEST_CASE("generator accepts total demand above capacity") {
    // Deliberate: W stays small relative to the total demand.
    const Instance inst = generate_instance(9, 6, 25, 10, 15);
    int total = 0;
    for (int w : inst.demands) total += w;
    CHECK(total > inst.capacity);
}

TEST_CASE("invalid generator arguments raise parameter errors") {
    CHECK_THROWS_AS(generate_instance(1, 0, 25, 1, 15), ParameterError);
    CHECK_THROWS_AS(generate_instance(1, 3, 25, 0, 15), ParameterError);
    CHECK_THROWS_AS(generate_instance(1, 3, 25, 9, 8), ParameterError);
    CHECK_THROWS_AS(generate_instance(1, 3, 25, 1, 26), ParameterError);
}

TEST_CASE("save then load round-trips exactly") {
    const Instance inst = generate_instance(11, 5, 25, 1, 15);
    const std::string path = temp_path("roundtrip.json");
    save_instance(inst, path);
    const Instance loaded = load_instance(path);
    CHECK(loaded == inst);
    for (int i = 0; i < inst.n_locations; ++i) {
        for (int j = 0; j < inst.n_locations; ++j) {
            CHECK(std::abs(loaded.dist[i][j] - inst.dist[i][j]) <= 1e-12);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("hand-written instance distances check out") {
    const std::string text = R"({
        "schema_version": 1, "n_locations": 3, "capacity": 10,
        "coords": [[0.5, 0.5], [0.5, 1.0], [0.1, 0.2]],
        "demands": [0, 3, 4]
    })";
    const Instance inst = instance_from_json_string(text);
    CHECK(inst.dist[0][1] == doctest::Approx(0.5).epsilon(1e-12));
    const double expected = std::sqrt(0.4 * 0.4 + 0.8 * 0.8);
    CHECK(inst.dist[1][2] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("schema errors name the offending field") {
    const std::string missing_capacity = R"({
        "schema_version": 1, "n_locations": 2,
        "coords": [[0.5, 0.5], [0.1, 0.1]], "demands": [0, 1]
    })";
    CHECK_THROWS_WITH_AS(instance_from_json_string(missing_capacity),
                         "missing key: capacity", SchemaError);

    const std::string unknown_key = R"({
        "schema_version": 1, "n_locations": 2, "capacity": 5,
        "coords": [[0.5, 0.5], [0.1, 0.1]], "demands": [0, 1], "extra": 1
    })";
    CHECK_THROWS_WITH_AS(instance_from_json_string(unknown_key),
                         "unknown key: extra", SchemaError);

    const std::string demand_too_big = R"({
        "schema_version": 1, "n_locations": 2, "capacity": 5,
        "coords": [[0.5, 0.5], [0.1, 0.1]], "demands": [0, 6]
    })";
    CHECK_THROWS_WITH_AS(instance_from_json_string(demand_too_big),
                         "demands[1]: demand exceeds capacity", SchemaError);

    const std::string bad_coord = R"({
        "schema_version": 1, "n_locations": 2, "capacity": 5,
        "coords": [[0.5, 0.5], [1.5, 0.1]], "demands": [0, 1]
    })";
    CHECK_THROWS_WITH_AS(instance_from_json_string(bad_coord),
                         "coords[1]: coordinate out of [0,1]", SchemaError);
}

TEST_CASE("loading a missing file fails cleanly") {
    CHECK_THROWS_AS(load_instance("definitely_not_here.json"), SchemaError);
}

TEST_CASE("coincident customer coordinates are tolerated") {
    const std::string text = R"({
        "schema_version": 1, "n_locations": 3, "capacity": 10,
        "coords": [[0.5, 0.5], [0.3, 0.3], [0.3, 0.3]],
        "demands": [0, 2, 2]
    })";
    const Instance inst = instance_from_json_string(text);
    CHECK(inst.dist[1][2] == 0.0);
}
