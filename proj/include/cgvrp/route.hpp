#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "cgvrp/instance.hpp"

namespace cgvrp {

// One vehicle route: an ordered customer sequence, implicitly depot-anchored
// at both ends. Stored in canonical direction (the lexicographically smaller
// of the sequence and its reversal; distance is symmetric so this is free).
// The empty route (depot only) is valid and has distance 0.
class Route {
public:
    // Validates distinct customers, index bounds and load <= capacity,
    // computes the cached distance/load/cover mask, canonicalizes.
    static Route make(const Instance& instance, std::vector<int> customers);

    const std::vector<int>& customers() const { return customers_; }
    double distance() const { return distance_; }
    int load() const { return load_; }
    bool empty() const { return customers_.empty(); }
    int size() const { return static_cast<int>(customers_.size()); }

    // Bit c set iff customer c is visited.
    std::uint64_t cover_mask() const { return mask_; }
    bool covers(int customer) const { return (mask_ >> customer) & 1ULL; }

    bool operator==(const Route& other) const {
        return customers_ == other.customers_;
    }
    bool operator<(const Route& other) const {
        return customers_ < other.customers_;
    }

private:
    Route() = default;
    std::vector<int> customers_;
    double distance_ = 0.0;
    int load_ = 0;
    std::uint64_t mask_ = 0;
};

// Ordered, deduplicated collection of canonical routes.
class RouteSet {
public:
    // Returns false (and keeps the set unchanged) for duplicates.
    bool add(const Route& route);
    bool contains(const Route& route) const;

    const std::vector<Route>& routes() const { return routes_; }
    std::size_t size() const { return routes_.size(); }
    const Route& operator[](std::size_t i) const { return routes_[i]; }

private:
    std::vector<Route> routes_;
    std::set<std::vector<int>> seen_;
};

// One singleton route per customer (depot -> i -> depot).
RouteSet initial_route_set(const Instance& instance);

} // namespace cgvrp
