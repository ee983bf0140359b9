#include "cgvrp/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cgvrp/rng.hpp"
#include "json.hpp"

namespace cgvrp {

namespace {

std::vector<std::vector<double>> euclidean_matrix(
    const std::vector<std::array<double, 2>>& coords) {
    const int n = static_cast<int>(coords.size());
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = coords[i][0] - coords[j][0];
            const double dy = coords[i][1] - coords[j][1];
            dist[i][j] = dist[j][i] = std::sqrt(dx * dx + dy * dy);
        }
    }
    return dist;
}

} // namespace

Instance Instance::from_parts(std::vector<std::array<double, 2>> coords,
                              std::vector<int> demands, int capacity) {
    if (coords.empty()) {
        throw SchemaError("coords: must contain at least the depot");
    }
    if (coords.size() != demands.size()) {
        throw SchemaError("demands: length " + std::to_string(demands.size()) +
                          " does not match coords length " +
                          std::to_string(coords.size()));
    }
    if (capacity < 1) {
        throw SchemaError("capacity: must be >= 1");
    }
    for (std::size_t i = 0; i < coords.size(); ++i) {
        for (int axis = 0; axis < 2; ++axis) {
            const double v = coords[i][axis];
            if (!(v >= 0.0 && v <= 1.0)) {
                throw SchemaError("coords[" + std::to_string(i) +
                                  "]: coordinate out of [0,1]");
            }
        }
    }
    if (demands[0] != 0) {
        throw SchemaError("demands[0]: depot demand must be 0");
    }
    for (std::size_t i = 1; i < demands.size(); ++i) {
        if (demands[i] < 1) {
            throw SchemaError("demands[" + std::to_string(i) +
                              "]: customer demand must be >= 1");
        }
        if (demands[i] > capacity) {
            throw SchemaError("demands[" + std::to_string(i) +
                              "]: demand exceeds capacity");
        }
    }
    Instance instance;
    instance.n_locations = static_cast<int>(coords.size());
    instance.coords = std::move(coords);
    instance.demands = std::move(demands);
    instance.capacity = capacity;
    instance.dist = euclidean_matrix(instance.coords);
    return instance;
}

bool Instance::operator==(const Instance& other) const {
    return n_locations == other.n_locations && coords == other.coords &&
           demands == other.demands && capacity == other.capacity;
}

Instance generate_instance(std::uint64_t seed, int n_customers, int capacity,
                           int demand_lo, int demand_hi) {
    if (n_customers < 1) {
        throw ParameterError("generate_instance: n_customers must be >= 1");
    }
    if (demand_lo < 1 || demand_lo > demand_hi) {
        throw ParameterError("generate_instance: need 1 <= demand_lo <= demand_hi");
    }
    if (demand_hi > capacity) {
        throw ParameterError("generate_instance: demand_hi exceeds capacity");
    }
    Rng rng(seed);
    std::vector<std::array<double, 2>> coords;
    coords.reserve(n_customers + 1);
    coords.push_back({0.5, 0.5}); // depot at the center
    std::vector<int> demands;
    demands.reserve(n_customers + 1);
    demands.push_back(0);
    for (int i = 0; i < n_customers; ++i) {
        const double x = uniform_unit(rng);
        const double y = uniform_unit(rng);
        coords.push_back({x, y});
        demands.push_back(static_cast<int>(uniform_int(rng, demand_lo, demand_hi)));
    }
    return Instance::from_parts(std::move(coords), std::move(demands), capacity);
}

namespace {

using nlohmann::json;

Instance instance_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw SchemaError("instance: top level must be an object");
    }
    static const char* kKeys[] = {"schema_version", "n_locations", "capacity",
                                  "coords", "demands"};
    for (const auto& item : doc.items()) {
        bool known = false;
        for (const char* key : kKeys) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw SchemaError("unknown key: " + item.key());
        }
    }
    for (const char* key : kKeys) {
        if (!doc.contains(key)) {
            throw SchemaError(std::string("missing key: ") + key);
        }
    }
    if (!doc["schema_version"].is_number_integer() ||
        doc["schema_version"].get<int>() != 1) {
        throw SchemaError("schema_version: expected 1");
    }
    if (!doc["n_locations"].is_number_integer()) {
        throw SchemaError("n_locations: expected integer");
    }
    if (!doc["capacity"].is_number_integer()) {
        throw SchemaError("capacity: expected integer");
    }
    const int n = doc["n_locations"].get<int>();
    const auto& jcoords = doc["coords"];
    const auto& jdemands = doc["demands"];
    if (!jcoords.is_array() || static_cast<int>(jcoords.size()) != n) {
        throw SchemaError("coords: expected array of length n_locations");
    }
    if (!jdemands.is_array() || static_cast<int>(jdemands.size()) != n) {
        throw SchemaError("demands: expected array of length n_locations");
    }
    std::vector<std::array<double, 2>> coords;
    coords.reserve(n);
    for (int i = 0; i < n; ++i) {
        const auto& c = jcoords[i];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() ||
            !c[1].is_number()) {
            throw SchemaError("coords[" + std::to_string(i) +
                              "]: expected [x, y]");
        }
        coords.push_back({c[0].get<double>(), c[1].get<double>()});
    }
    std::vector<int> demands;
    demands.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (!jdemands[i].is_number_integer()) {
            throw SchemaError("demands[" + std::to_string(i) +
                              "]: expected integer");
        }
        demands.push_back(jdemands[i].get<int>());
    }
    return Instance::from_parts(std::move(coords), std::move(demands),
                                doc["capacity"].get<int>());
}

json instance_to_json(const Instance& instance) {
    json doc;
    doc["schema_version"] = 1;
    doc["n_locations"] = instance.n_locations;
    doc["capacity"] = instance.capacity;
    json coords = json::array();
    for (const auto& c : instance.coords) {
        coords.push_back({c[0], c[1]});
    }
    doc["coords"] = std::move(coords);
    doc["demands"] = instance.demands;
    return doc;
}

} // namespace

std::string instance_to_json_string(const Instance& instance) {
    return instance_to_json(instance).dump(2);
}

Instance instance_from_json_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("instance: invalid JSON: ") + e.what());
    }
    return instance_from_json(doc);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("cannot open instance file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json_string(buffer.str());
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw SchemaError("cannot write instance file: " + path);
    }
    out << instance_to_json_string(instance) << "\n";
}

} // namespace cgvrp
