#include "cgvrp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cgvrp/rng.hpp"

namespace cgvrp {

namespace {

Params unflatten(const std::vector<double>& v, int p) {
    Params params;
    params.gammas.assign(v.begin(), v.begin() + p);
    params.betas.assign(v.begin() + p, v.end());
    return params;
}

} // namespace

OptResult minimize(const std::function<double(const Params&)>& objective,
                   int p, const OptimizerConfig& config) {
    if (p < 1) {
        throw ParameterError("minimize: p must be >= 1");
    }
    if (config.max_evals < 1) {
        throw ParameterError("minimize: max_evals must be >= 1");
    }
    if (config.initial_step <= 0.0) {
        throw ParameterError("minimize: initial_step must be positive");
    }
    const int dim = 2 * p;

    std::vector<double> start(dim, 0.01);
    if (config.initial_params) {
        if (static_cast<int>(config.initial_params->gammas.size()) != p ||
            static_cast<int>(config.initial_params->betas.size()) != p) {
            throw ParameterError("minimize: initial params length mismatch");
        }
        std::copy(config.initial_params->gammas.begin(),
                  config.initial_params->gammas.end(), start.begin());
        std::copy(config.initial_params->betas.begin(),
                  config.initial_params->betas.end(), start.begin() + p);
    }

    OptResult result;
    int n_evals = 0;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_point = start;
    auto eval = [&](const std::vector<double>& point) {
        const double value = objective(unflatten(point, p));
        ++n_evals;
        if (value < best_value) {
            best_value = value;
            best_point = point;
            result.trace.emplace_back(n_evals, value);
        }
        return value;
    };

    // Initial simplex: start point plus one step along each axis, optionally
    // jittered (deterministically per seed) for seeded restarts.
    Rng rng(config.seed);
    std::vector<std::vector<double>> simplex;
    simplex.push_back(start);
    for (int i = 0; i < dim; ++i) {
        std::vector<double> vertex = start;
        vertex[i] += config.initial_step;
        if (config.seed != 0) {
            for (int j = 0; j < dim; ++j) {
                vertex[j] +=
                    (uniform_unit(rng) - 0.5) * 0.5 * config.initial_step;
            }
        }
        simplex.push_back(vertex);
    }
    std::vector<double> values;
    values.reserve(dim + 1);
    for (const auto& vertex : simplex) {
        if (n_evals >= config.max_evals) break;
        values.push_back(eval(vertex));
    }
    while (values.size() < simplex.size()) {
        // Budget exhausted during initialization; fall back to what we have.
        simplex.pop_back();
    }

    auto order = [&] {
        std::vector<int> idx(values.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return values[a] < values[b];
        });
        std::vector<std::vector<double>> new_simplex;
        std::vector<double> new_values;
        for (int i : idx) {
            new_simplex.push_back(simplex[i]);
            new_values.push_back(values[i]);
        }
        simplex = std::move(new_simplex);
        values = std::move(new_values);
    };

    while (n_evals < config.max_evals && simplex.size() == std::size_t(dim) + 1) {
        order();
        if (values.back() - values.front() < config.convergence_tol) {
            break;
        }
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v + 1 < simplex.size(); ++v) {
            for (int i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
        }
        for (int i = 0; i < dim; ++i) centroid[i] /= dim;

        auto blend = [&](double coeff) {
            std::vector<double> point(dim);
            for (int i = 0; i < dim; ++i) {
                point[i] = centroid[i] + coeff * (simplex.back()[i] - centroid[i]);
            }
            return point;
        };

        const std::vector<double> reflected = blend(-1.0);
        const double fr = eval(reflected);
        if (fr < values.front()) {
            if (n_evals < config.max_evals) {
                const std::vector<double> expanded = blend(-2.0);
                const double fe = eval(expanded);
                if (fe < fr) {
                    simplex.back() = expanded;
                    values.back() = fe;
                    continue;
                }
            }
            simplex.back() = reflected;
            values.back() = fr;
            continue;
        }
        if (fr < values[values.size() - 2]) {
            simplex.back() = reflected;
            values.back() = fr;
            continue;
        }
        if (n_evals >= config.max_evals) break;
        const bool outside = fr < values.back();
        const std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
        const double fc = eval(contracted);
        if (fc < std::min(fr, values.back())) {
            simplex.back() = contracted;
            values.back() = fc;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t v = 1; v < simplex.size() && n_evals < config.max_evals;
             ++v) {
            for (int i = 0; i < dim; ++i) {
                simplex[v][i] =
                    simplex[0][i] + 0.5 * (simplex[v][i] - simplex[0][i]);
            }
            values[v] = eval(simplex[v]);
        }
    }

    result.best_params = unflatten(best_point, p);
    result.best_value = best_value;
    result.n_evals = n_evals;
    return result;
}

} // namespace cgvrp
