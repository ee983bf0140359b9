#pragma once

#include <vector>

#include "cgvrp/instance.hpp"
#include "cgvrp/route.hpp"

namespace cgvrp {

// Optimal multipliers of the covering constraints, one per customer.
// y[0] is the depot entry and is always 0 so locations index uniformly.
struct DualSolution {
    std::vector<double> y; // size n_locations, y[0] == 0

    double objective() const {
        double sum = 0.0;
        for (double v : y) sum += v;
        return sum;
    }
};

// Optimal solution of the LP relaxation (covering form, ">= 1" rows).
struct RmpLpSolution {
    std::vector<double> x_frac; // aligned with RouteSet order
    double objective = 0.0;
    DualSolution duals;
};

// Optimal solution of the integer set-partitioning form ("= 1" rows).
struct RmpIntSolution {
    std::vector<Route> selected;
    double objective = 0.0;
};

struct MasterOptions {
    // Absolute tolerance for simplex pivoting and feasibility checks.
    double tol = 1e-9;
};

// Primal simplex (two-phase, Bland's rule) on the covering LP. Duals are read
// off the optimal basis. Throws InfeasibleError naming the first uncovered
// customer if the route set does not cover everyone.
RmpLpSolution solve_rmp_lp(const RouteSet& routes, const Instance& instance,
                           const MasterOptions& options = {});

// Minimum-distance exact cover over the given routes: plain depth-first
// enumeration for small pools, LP-bound branch-and-bound beyond that.
// Throws InfeasibleError if no exact cover exists.
RmpIntSolution solve_rmp_integer(const RouteSet& routes,
                                 const Instance& instance,
                                 const MasterOptions& options = {});

} // namespace cgvrp
