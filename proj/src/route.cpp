#include "cgvrp/route.hpp"

#include <algorithm>

namespace cgvrp {

Route Route::make(const Instance& instance, std::vector<int> customers) {
    Route route;
    std::uint64_t mask = 0;
    int load = 0;
    for (int c : customers) {
        if (c < 1 || c >= instance.n_locations) {
            throw ParameterError("route: customer index " + std::to_string(c) +
                                 " out of range");
        }
        if ((mask >> c) & 1ULL) {
            throw ParameterError("route: duplicate customer " +
                                 std::to_string(c));
        }
        mask |= 1ULL << c;
        load += instance.demands[c];
    }
    if (load > instance.capacity) {
        throw ParameterError("route: load " + std::to_string(load) +
                             " exceeds capacity " +
                             std::to_string(instance.capacity));
    }
    std::vector<int> reversed(customers.rbegin(), customers.rend());
    if (reversed < customers) {
        customers = std::move(reversed);
    }
    double distance = 0.0;
    int prev = 0;
    for (int c : customers) {
        distance += instance.dist[prev][c];
        prev = c;
    }
    distance += instance.dist[prev][0];
    route.customers_ = std::move(customers);
    route.distance_ = distance;
    route.load_ = load;
    route.mask_ = mask;
    return route;
}

bool RouteSet::add(const Route& route) {
    if (!seen_.insert(route.customers()).second) {
        return false;
    }
    routes_.push_back(route);
    return true;
}

bool RouteSet::contains(const Route& route) const {
    return seen_.count(route.customers()) > 0;
}

RouteSet initial_route_set(const Instance& instance) {
    RouteSet set;
    for (int c = 1; c < instance.n_locations; ++c) {
        set.add(Route::make(instance, {c}));
    }
    return set;
}

} // namespace cgvrp
