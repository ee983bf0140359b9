#include "cgvrp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cgvrp {

namespace {

double tour_distance(const Instance& instance, const std::vector<int>& order) {
    double distance = 0.0;
    int prev = 0;
    for (int c : order) {
        distance += instance.dist[prev][c];
        prev = c;
    }
    return distance + instance.dist[prev][0];
}

} // namespace

EnumeratedRoutes enumerate_routes(const Instance& instance) {
    const int m = instance.n_customers();
    if (instance.n_locations > 10) {
        throw GuardError("enumerate_routes: instance too large (N > 10)");
    }
    EnumeratedRoutes out;
    for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
        std::vector<int> members;
        int load = 0;
        for (int c = 1; c <= m; ++c) {
            if ((mask >> (c - 1)) & 1ULL) {
                members.push_back(c);
                load += instance.demands[c];
            }
        }
        if (load > instance.capacity) continue;
        // Best visiting order by exhaustive permutation.
        std::vector<int> order = members;
        std::vector<int> best_order = order;
        double best_distance = tour_distance(instance, order);
        while (std::next_permutation(order.begin(), order.end())) {
            const double d = tour_distance(instance, order);
            if (d < best_distance - 1e-15) {
                best_distance = d;
                best_order = order;
            }
        }
        out.routes.push_back(Route::make(instance, best_order));
    }
    return out;
}

std::pair<std::optional<Route>, double> exact_min_reduced_cost(
    const Instance& instance, const DualSolution& duals, int T) {
    if (T < 2) {
        throw ParameterError("exact_min_reduced_cost: T must be >= 2");
    }
    const EnumeratedRoutes all = enumerate_routes(instance);
    std::optional<Route> best;
    double best_cost = 0.0; // the empty route
    for (const Route& route : all.routes) {
        if (route.size() > T - 1) continue;
        double reduced = route.distance();
        for (int c : route.customers()) {
            reduced -= duals.y[c];
        }
        const bool better =
            reduced < best_cost ||
            (reduced == best_cost && best &&
             (route.size() < best->size() ||
              (route.size() == best->size() &&
               route.customers() < best->customers())));
        if (better) {
            best = route;
            best_cost = reduced;
        }
    }
    return {best, best_cost};
}

namespace {

struct CvrpSearch {
    const Instance* instance = nullptr;
    const std::vector<Route>* routes = nullptr;
    std::vector<std::vector<int>> by_customer;
    std::vector<double> cheapest_rate; // min d_r/|r| over routes covering c
    std::uint64_t full_mask = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_pick;
    std::vector<int> current;

    double bound(std::uint64_t covered) const {
        double sum = 0.0;
        for (int c = 1; c < instance->n_locations; ++c) {
            if (!((covered >> c) & 1ULL)) sum += cheapest_rate[c];
        }
        return sum;
    }

    void dfs(std::uint64_t covered, double cost) {
        if (covered == full_mask) {
            if (cost < best_cost - 1e-15) {
                best_cost = cost;
                best_pick = current;
            }
            return;
        }
        if (cost + bound(covered) >= best_cost - 1e-12) return;
        int branch = -1;
        for (int c = 1; c < instance->n_locations; ++c) {
            if (!((covered >> c) & 1ULL)) {
                branch = c;
                break;
            }
        }
        for (int j : by_customer[branch]) {
            const Route& r = (*routes)[j];
            if ((r.cover_mask() & covered) != 0) continue;
            current.push_back(j);
            dfs(covered | r.cover_mask(), cost + r.distance());
            current.pop_back();
        }
    }
};

} // namespace

RmpIntSolution exact_cvrp(const Instance& instance) {
    if (instance.n_locations > 8) {
        throw GuardError("exact_cvrp: instance too large (N > 8)");
    }
    RmpIntSolution solution;
    if (instance.n_customers() == 0) {
        return solution;
    }
    const EnumeratedRoutes all = enumerate_routes(instance);
    CvrpSearch search;
    search.instance = &instance;
    search.routes = &all.routes;
    search.by_customer.assign(instance.n_locations, {});
    search.cheapest_rate.assign(instance.n_locations,
                                std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < all.routes.size(); ++j) {
        const Route& r = all.routes[j];
        for (int c : r.customers()) {
            search.by_customer[c].push_back(static_cast<int>(j));
            search.cheapest_rate[c] =
                std::min(search.cheapest_rate[c], r.distance() / r.size());
        }
    }
    for (int c = 1; c < instance.n_locations; ++c) {
        search.full_mask |= 1ULL << c;
    }
    search.dfs(0, 0.0);
    for (int j : search.best_pick) {
        solution.selected.push_back(all.routes[j]);
    }
    solution.objective = search.best_cost;
    return solution;
}

} // namespace cgvrp
