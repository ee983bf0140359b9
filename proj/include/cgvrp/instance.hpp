#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cgvrp/errors.hpp"

namespace cgvrp {

// A CVRP instance. Location 0 is the depot; locations 1..N-1 are customers.
// The distance matrix is Euclidean, derived from the coordinates at
// construction and never serialized.
struct Instance {
    int n_locations = 0;                         // N
    std::vector<std::array<double, 2>> coords;   // in [0,1]^2
    std::vector<int> demands;                    // demands[0] == 0
    int capacity = 0;                            // W
    std::vector<std::vector<double>> dist;       // N x N, symmetric, zero diagonal

    int n_customers() const { return n_locations - 1; }

    // Validates invariants and fills in the distance matrix.
    static Instance from_parts(std::vector<std::array<double, 2>> coords,
                               std::vector<int> demands, int capacity);

    bool operator==(const Instance& other) const;
};

// Random instance matching the experimental setup: depot at (0.5, 0.5),
// customer coordinates uniform in [0,1]^2, integer demands uniform in
// [demand_lo, demand_hi]. Deterministic for a fixed seed.
Instance generate_instance(std::uint64_t seed, int n_customers, int capacity,
                           int demand_lo, int demand_hi);

// JSON file format, schema_version 1:
//   {"schema_version":1, "n_locations":N, "capacity":W,
//    "coords":[[x,y],...], "demands":[0,...]}
// Unknown keys are rejected; errors name the offending field.
Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

std::string instance_to_json_string(const Instance& instance);
Instance instance_from_json_string(const std::string& text);

} // namespace cgvrp
