#include "cgvrp/master.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace cgvrp {

namespace {

// Dense two-phase primal simplex for
//   min c^T v  s.t.  M v = b, v >= 0,
// with Bland's anti-cycling rule (lowest eligible index enters; ties in the
// ratio test leave by lowest variable index). The basis inverse is refreshed
// from scratch every pivot via LU; problems here are tens of rows at most.
class Simplex {
public:
    Simplex(Eigen::MatrixXd columns, Eigen::VectorXd b, double tol)
        : m_(static_cast<int>(columns.rows())),
          n_(static_cast<int>(columns.cols())),
          columns_(std::move(columns)),
          b_(std::move(b)),
          tol_(tol) {}

    // Runs both phases. Returns false if phase 1 cannot reach zero
    // (infeasible system).
    bool solve(const Eigen::VectorXd& costs) {
        // Phase 1: artificial basis, minimize sum of artificials.
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
        Eigen::VectorXd phase1_costs = Eigen::VectorXd::Zero(n_ + m_);
        for (int i = 0; i < m_; ++i) phase1_costs[n_ + i] = 1.0;
        run_phase(phase1_costs, /*allow_artificial_entering=*/false);
        if (objective(phase1_costs) > 1e-7) {
            return false;
        }
        // Phase 2: original costs, artificials pinned at zero cost and
        // forbidden from entering.
        Eigen::VectorXd phase2_costs = Eigen::VectorXd::Zero(n_ + m_);
        phase2_costs.head(n_) = costs;
        run_phase(phase2_costs, false);
        finish(phase2_costs);
        return true;
    }

    const Eigen::VectorXd& primal() const { return primal_; }   // size n_
    const Eigen::VectorXd& duals() const { return duals_; }     // size m_
    double objective_value() const { return objective_value_; }

private:
    Eigen::VectorXd column(int j) const {
        if (j < n_) return columns_.col(j);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
        e[j - n_] = 1.0; // artificial
        return e;
    }

    Eigen::MatrixXd basis_matrix() const {
        Eigen::MatrixXd B(m_, m_);
        for (int i = 0; i < m_; ++i) B.col(i) = column(basis_[i]);
        return B;
    }

    double objective(const Eigen::VectorXd& costs) const {
        Eigen::VectorXd xb =
            basis_matrix().partialPivLu().solve(b_);
        double sum = 0.0;
        for (int i = 0; i < m_; ++i) sum += costs[basis_[i]] * xb[i];
        return sum;
    }

    void run_phase(const Eigen::VectorXd& costs, bool allow_artificial_entering) {
        const int max_pivots = 20000;
        for (int pivot = 0; pivot < max_pivots; ++pivot) {
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix());
            Eigen::VectorXd xb = lu.solve(b_);
            Eigen::VectorXd cb(m_);
            for (int i = 0; i < m_; ++i) cb[i] = costs[basis_[i]];
            Eigen::VectorXd y = lu.transpose().solve(cb);

            // Bland: lowest-index nonbasic column with negative reduced cost.
            int entering = -1;
            const int limit = allow_artificial_entering ? n_ + m_ : n_;
            for (int j = 0; j < limit; ++j) {
                if (is_basic(j)) continue;
                const double rc = costs[j] - y.dot(column(j));
                if (rc < -tol_) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return; // optimal for this phase

            Eigen::VectorXd direction = lu.solve(column(entering));
            int leaving_row = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i) {
                if (direction[i] > tol_) {
                    const double ratio = std::max(xb[i], 0.0) / direction[i];
                    if (ratio < best_ratio - tol_ ||
                        (ratio < best_ratio + tol_ &&
                         (leaving_row < 0 || basis_[i] < basis_[leaving_row]))) {
                        best_ratio = ratio;
                        leaving_row = i;
                    }
                }
            }
            if (leaving_row < 0) {
                throw Error("simplex: unbounded direction in covering LP");
            }
            basis_[leaving_row] = entering;
        }
        throw Error("simplex: pivot limit exceeded");
    }

    bool is_basic(int j) const {
        return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
    }

    void finish(const Eigen::VectorXd& costs) {
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix());
        Eigen::VectorXd xb = lu.solve(b_);
        Eigen::VectorXd cb(m_);
        for (int i = 0; i < m_; ++i) cb[i] = costs[basis_[i]];
        duals_ = lu.transpose().solve(cb);
        primal_ = Eigen::VectorXd::Zero(n_);
        objective_value_ = 0.0;
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                primal_[basis_[i]] = std::max(xb[i], 0.0);
            }
            objective_value_ += costs[basis_[i]] * xb[i];
        }
    }

    int m_;
    int n_;
    Eigen::MatrixXd columns_;
    Eigen::VectorXd b_;
    double tol_;
    std::vector<int> basis_;
    Eigen::VectorXd primal_;
    Eigen::VectorXd duals_;
    double objective_value_ = 0.0;
};

void check_coverage(const RouteSet& routes, const Instance& instance) {
    for (int c = 1; c < instance.n_locations; ++c) {
        bool covered = false;
        for (const Route& r : routes.routes()) {
            if (r.covers(c)) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            throw InfeasibleError("customer " + std::to_string(c) +
                                  " is not covered by any route");
        }
    }
}

} // namespace

RmpLpSolution solve_rmp_lp(const RouteSet& routes, const Instance& instance,
                           const MasterOptions& options) {
    const int m = instance.n_customers();
    const int n = static_cast<int>(routes.size());
    RmpLpSolution solution;
    solution.duals.y.assign(instance.n_locations, 0.0);
    solution.x_frac.assign(n, 0.0);
    if (m == 0) {
        return solution; // vacuous LP
    }
    check_coverage(routes, instance);

    // Covering form: route columns a_ri, then surplus columns -e_i.
    Eigen::MatrixXd columns = Eigen::MatrixXd::Zero(m, n + m);
    Eigen::VectorXd costs = Eigen::VectorXd::Zero(n + m);
    for (int j = 0; j < n; ++j) {
        const Route& r = routes[j];
        for (int c : r.customers()) {
            columns(c - 1, j) = 1.0;
        }
        costs[j] = r.distance();
    }
    for (int i = 0; i < m; ++i) {
        columns(i, n + i) = -1.0;
    }
    Simplex simplex(std::move(columns), Eigen::VectorXd::Ones(m), options.tol);
    if (!simplex.solve(costs)) {
        throw InfeasibleError("covering LP is infeasible");
    }
    for (int j = 0; j < n; ++j) {
        solution.x_frac[j] = simplex.primal()[j];
    }
    solution.objective = simplex.objective_value();
    for (int i = 0; i < m; ++i) {
        // Tiny negatives from the final LU solve are numerical noise.
        solution.duals.y[i + 1] = std::max(simplex.duals()[i], 0.0);
    }
    return solution;
}

namespace {

struct PartitionSearch {
    const std::vector<Route>* routes = nullptr;
    const Instance* instance = nullptr;
    MasterOptions options;
    bool use_lp_bound = false;
    std::uint64_t full_mask = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_pick;
    std::vector<int> current;

    // Routes covering a given customer, in set order.
    std::vector<std::vector<int>> by_customer;

    double lp_bound(std::uint64_t covered) const {
        // Reduced covering LP over uncovered customers only; routes
        // overlapping covered customers are dropped.
        std::vector<int> relabel(instance->n_locations, -1);
        std::vector<int> kept;
        int next = 1;
        for (int c = 1; c < instance->n_locations; ++c) {
            if (!((covered >> c) & 1ULL)) {
                relabel[c] = next++;
                kept.push_back(c);
            }
        }
        if (kept.empty()) return 0.0;
        // Assemble the reduced LP directly.
        std::vector<const Route*> usable;
        for (const Route& r : *routes) {
            if (r.empty()) continue;
            if ((r.cover_mask() & covered) == 0) usable.push_back(&r);
        }
        const int m = static_cast<int>(kept.size());
        const int n = static_cast<int>(usable.size());
        for (int c : kept) {
            bool ok = false;
            for (const Route* r : usable) {
                if (r->covers(c)) { ok = true; break; }
            }
            if (!ok) return std::numeric_limits<double>::infinity();
        }
        Eigen::MatrixXd columns = Eigen::MatrixXd::Zero(m, n + m);
        Eigen::VectorXd costs = Eigen::VectorXd::Zero(n + m);
        for (int j = 0; j < n; ++j) {
            for (int c : usable[j]->customers()) {
                columns(relabel[c] - 1, j) = 1.0;
            }
            costs[j] = usable[j]->distance();
        }
        for (int i = 0; i < m; ++i) columns(i, n + i) = -1.0;
        Simplex simplex(std::move(columns), Eigen::VectorXd::Ones(m),
                        options.tol);
        if (!simplex.solve(costs)) {
            return std::numeric_limits<double>::infinity();
        }
        return simplex.objective_value();
    }

    void dfs(std::uint64_t covered, double cost) {
        if (cost >= best_cost - 1e-12) return;
        if (covered == full_mask) {
            best_cost = cost;
            best_pick = current;
            return;
        }
        if (use_lp_bound) {
            // Conservative margin: only prune subtrees provably worse, so
            // LP solve noise cannot cut an equal-cost optimum.
            const double bound = lp_bound(covered);
            if (cost + bound >= best_cost + 1e-7) return;
        }
        int branch_customer = -1;
        for (int c = 1; c < instance->n_locations; ++c) {
            if (!((covered >> c) & 1ULL)) {
                branch_customer = c;
                break;
            }
        }
        for (int j : by_customer[branch_customer]) {
            const Route& r = (*routes)[j];
            if ((r.cover_mask() & covered) != 0) continue;
            current.push_back(j);
            dfs(covered | r.cover_mask(), cost + r.distance());
            current.pop_back();
        }
    }
};

} // namespace

RmpIntSolution solve_rmp_integer(const RouteSet& routes,
                                 const Instance& instance,
                                 const MasterOptions& options) {
    RmpIntSolution solution;
    const int m = instance.n_customers();
    if (m == 0) {
        return solution;
    }
    check_coverage(routes, instance);

    PartitionSearch search;
    search.routes = &routes.routes();
    search.instance = &instance;
    search.options = options;
    search.use_lp_bound = routes.size() > 25;
    for (int c = 1; c < instance.n_locations; ++c) {
        search.full_mask |= 1ULL << c;
    }
    search.by_customer.assign(instance.n_locations, {});
    for (std::size_t j = 0; j < routes.size(); ++j) {
        for (int c : routes[j].customers()) {
            search.by_customer[c].push_back(static_cast<int>(j));
        }
    }
    search.dfs(0, 0.0);
    if (!std::isfinite(search.best_cost)) {
        throw InfeasibleError("no exact cover exists over the given routes");
    }
    for (int j : search.best_pick) {
        solution.selected.push_back(routes[j]);
    }
    solution.objective = search.best_cost;
    return solution;
}

} // namespace cgvrp
