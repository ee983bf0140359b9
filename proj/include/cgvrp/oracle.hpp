#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cgvrp/instance.hpp"
#include "cgvrp/master.hpp"
#include "cgvrp/route.hpp"

namespace cgvrp {

// Brute-force ground truth for tests and verification. Exhaustive by design;
// guarded to desk-scale instances.

struct EnumeratedRoutes {
    std::vector<Route> routes;
};

// Every nonempty capacity-feasible customer subset, stored once in its
// minimum-distance visiting order (exhaustive permutation). Guard: N <= 10.
EnumeratedRoutes enumerate_routes(const Instance& instance);

// Minimum reduced cost d_r - sum a_ri y_i over enumerated routes with at
// most T-1 customers, compared against the empty route at 0. Ties go to
// fewer customers, then lexicographic order. nullopt = empty route.
std::pair<std::optional<Route>, double> exact_min_reduced_cost(
    const Instance& instance, const DualSolution& duals, int T);

// Exact CVRP optimum: minimum-distance exact cover over enumerate_routes.
// Guard: N <= 8.
RmpIntSolution exact_cvrp(const Instance& instance);

} // namespace cgvrp
