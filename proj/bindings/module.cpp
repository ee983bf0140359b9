#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cgvrp/cg.hpp"
#include "cgvrp/instance.hpp"
#include "cgvrp/master.hpp"
#include "cgvrp/optimizer.hpp"
#include "cgvrp/oracle.hpp"
#include "cgvrp/qubo.hpp"
#include "cgvrp/route.hpp"
#include "cgvrp/simulator.hpp"

namespace py = pybind11;
using namespace cgvrp;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Column-generation CVRP solver with simulated quantum pricing";

    py::register_exception<ParameterError>(m, "ParameterError",
                                           PyExc_ValueError);
    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError",
                                            PyExc_RuntimeError);
    py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError",
                                           PyExc_ValueError);

    py::class_<Instance>(m, "Instance")
        .def_readonly("n_locations", &Instance::n_locations)
        .def_readonly("coords", &Instance::coords)
        .def_readonly("demands", &Instance::demands)
        .def_readonly("capacity", &Instance::capacity)
        .def_readonly("dist", &Instance::dist)
        .def_property_readonly("n_customers", &Instance::n_customers)
        .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
        .def("__repr__", [](const Instance& inst) {
            return "<Instance N=" + std::to_string(inst.n_locations) +
                   " W=" + std::to_string(inst.capacity) + ">";
        });

    m.def("generate_instance", &generate_instance, py::arg("seed"),
          py::arg("n_customers"), py::arg("capacity") = 25,
          py::arg("demand_lo") = 1, py::arg("demand_hi") = 15);
    m.def("load_instance", &load_instance, py::arg("path"));
    m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));

    py::class_<Route>(m, "Route")
        .def_property_readonly("customers",
                               [](const Route& r) { return r.customers(); })
        .def_property_readonly("distance", &Route::distance)
        .def_property_readonly("load", &Route::load)
        .def("covers", &Route::covers)
        .def("__len__", &Route::size)
        .def("__eq__", [](const Route& a, const Route& b) { return a == b; })
        .def("__repr__", [](const Route& r) {
            std::string out = "<Route [";
            for (std::size_t i = 0; i < r.customers().size(); ++i) {
                if (i) out += ",";
                out += std::to_string(r.customers()[i]);
            }
            return out + "]>";
        });
    m.def("make_route",
          [](const Instance& inst, std::vector<int> customers) {
              return Route::make(inst, std::move(customers));
          },
          py::arg("instance"), py::arg("customers"));

    py::class_<RouteSet>(m, "RouteSet")
        .def(py::init<>())
        .def("add", &RouteSet::add)
        .def("contains", &RouteSet::contains)
        .def_property_readonly("routes",
                               [](const RouteSet& s) { return s.routes(); })
        .def("__len__", &RouteSet::size);
    m.def("initial_route_set", &initial_route_set, py::arg("instance"));

    py::class_<DualSolution>(m, "DualSolution")
        .def(py::init([](std::vector<double> y) {
                 DualSolution d;
                 d.y = std::move(y);
                 return d;
             }),
             py::arg("y"))
        .def_readonly("y", &DualSolution::y)
        .def_property_readonly("objective", &DualSolution::objective);

    py::class_<RmpLpSolution>(m, "RmpLpSolution")
        .def_readonly("x_frac", &RmpLpSolution::x_frac)
        .def_readonly("objective", &RmpLpSolution::objective)
        .def_readonly("duals", &RmpLpSolution::duals);
    py::class_<RmpIntSolution>(m, "RmpIntSolution")
        .def_readonly("selected", &RmpIntSolution::selected)
        .def_readonly("objective", &RmpIntSolution::objective);
    m.def("solve_rmp_lp",
          [](const RouteSet& routes, const Instance& inst) {
              return solve_rmp_lp(routes, inst);
          },
          py::arg("routes"), py::arg("instance"));
    m.def("solve_rmp_integer",
          [](const RouteSet& routes, const Instance& inst) {
              return solve_rmp_integer(routes, inst);
          },
          py::arg("routes"), py::arg("instance"));

    py::class_<SubproblemSpec>(m, "SubproblemSpec")
        .def(py::init([](const Instance& inst, const DualSolution& duals,
                         int T, double l1, double l2, double l3) {
                 return SubproblemSpec{inst, duals, T, l1, l2, l3};
             }),
             py::arg("instance"), py::arg("duals"), py::arg("T"),
             py::arg("lambda1") = 1.0, py::arg("lambda2") = 1.0,
             py::arg("lambda3") = 1.0)
        .def_readonly("T", &SubproblemSpec::T)
        .def_readonly("lambda1", &SubproblemSpec::lambda1)
        .def_readonly("lambda2", &SubproblemSpec::lambda2)
        .def_readonly("lambda3", &SubproblemSpec::lambda3);

    py::class_<QuboProblem>(m, "QuboProblem")
        .def_readonly("n_vars", &QuboProblem::n_vars)
        .def_readonly("linear", &QuboProblem::linear)
        .def_readonly("offset", &QuboProblem::offset)
        .def_property_readonly(
            "quadratic",
            [](const QuboProblem& q) {
                std::map<std::pair<int, int>, double> out(q.quadratic.begin(),
                                                          q.quadratic.end());
                return out;
            })
        .def("var_index", &QuboProblem::var_index, py::arg("location"),
             py::arg("t"))
        .def("to_json", &qubo_to_json_string);
    py::class_<IsingHamiltonian>(m, "IsingHamiltonian")
        .def_readonly("n_qubits", &IsingHamiltonian::n_qubits)
        .def_readonly("h", &IsingHamiltonian::h)
        .def_readonly("constant", &IsingHamiltonian::constant)
        .def_property_readonly(
            "coupling",
            [](const IsingHamiltonian& h) {
                std::map<std::pair<int, int>, double> out(h.coupling.begin(),
                                                          h.coupling.end());
                return out;
            })
        .def("to_json", &ising_to_json_string);

    m.def("build_alim_qubo", &build_alim_qubo, py::arg("spec"));
    m.def("add_onehot_penalty", &add_onehot_penalty, py::arg("qubo"),
          py::arg("spec"));
    m.def("qubo_to_ising", &qubo_to_ising, py::arg("qubo"));
    m.def("evaluate",
          [](const QuboProblem& qubo, const std::vector<int>& bits) {
              return evaluate(qubo, bits);
          },
          py::arg("qubo"), py::arg("bits"));
    m.def("ising_energy",
          [](const IsingHamiltonian& h, const std::string& bits) {
              return ising_energy(h, string_to_bits(bits));
          },
          py::arg("hamiltonian"), py::arg("bits"));

    py::class_<QubitCounts>(m, "QubitCounts")
        .def_readonly("alim", &QubitCounts::alim)
        .def_readonly("slack", &QubitCounts::slack)
        .def("__iter__", [](const QubitCounts& c) {
            return py::iter(py::make_tuple(c.alim, c.slack));
        });
    m.def("qubit_counts", &qubit_counts, py::arg("instance"), py::arg("T"));

    py::enum_<AnsatzKind>(m, "AnsatzKind")
        .value("X_MIXER_QAOA", AnsatzKind::XMixerQaoa)
        .value("XY_MIXER_ANSATZ", AnsatzKind::XYMixerAnsatz);
    py::class_<AnsatzConfig>(m, "AnsatzConfig")
        .def(py::init([](AnsatzKind kind, int p, int n_locations, int T) {
                 return AnsatzConfig{kind, p, n_locations, T};
             }),
             py::arg("kind"), py::arg("p"), py::arg("n_locations"),
             py::arg("T"))
        .def_readonly("kind", &AnsatzConfig::kind)
        .def_readonly("p", &AnsatzConfig::p)
        .def_readonly("n_locations", &AnsatzConfig::n_locations)
        .def_readonly("T", &AnsatzConfig::T)
        .def_property_readonly("n_qubits", &AnsatzConfig::n_qubits);
    py::class_<Params>(m, "Params")
        .def(py::init([](std::vector<double> gammas, std::vector<double> betas) {
                 return Params{std::move(gammas), std::move(betas)};
             }),
             py::arg("gammas"), py::arg("betas"))
        .def_readonly("gammas", &Params::gammas)
        .def_readonly("betas", &Params::betas);
    py::class_<Statevector>(m, "Statevector")
        .def_readonly("n_qubits", &Statevector::n_qubits)
        .def_readonly("amps", &Statevector::amps)
        .def("norm_sq", &Statevector::norm_sq);
    py::class_<SampleSet>(m, "SampleSet")
        .def_readonly("counts", &SampleSet::counts)
        .def_readonly("shots", &SampleSet::shots);

    m.def("prepare_initial_state", &prepare_initial_state, py::arg("config"));
    m.def("run_ansatz", &run_ansatz, py::arg("config"), py::arg("hamiltonian"),
          py::arg("params"));
    m.def("expectation",
          [](const Statevector& state, const IsingHamiltonian& h) {
              return expectation(state, h);
          },
          py::arg("state"), py::arg("hamiltonian"));
    m.def("sample", &sample, py::arg("state"), py::arg("shots"),
          py::arg("seed"));

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("max_evals", &OptimizerConfig::max_evals)
        .def_readwrite("initial_step", &OptimizerConfig::initial_step)
        .def_readwrite("convergence_tol", &OptimizerConfig::convergence_tol)
        .def_readwrite("seed", &OptimizerConfig::seed);
    py::class_<OptResult>(m, "OptResult")
        .def_readonly("best_params", &OptResult::best_params)
        .def_readonly("best_value", &OptResult::best_value)
        .def_readonly("n_evals", &OptResult::n_evals)
        .def_readonly("trace", &OptResult::trace);
    m.def("minimize",
          [](const std::function<double(const Params&)>& objective, int p,
             const OptimizerConfig& config) {
              return minimize(objective, p, config);
          },
          py::arg("objective"), py::arg("p"),
          py::arg("config") = OptimizerConfig{});

    py::enum_<Subsolver>(m, "Subsolver")
        .value("QAOANSATZ_SIM", Subsolver::QaoansatzSim)
        .value("QAOA_SIM", Subsolver::QaoaSim)
        .value("EXACT_ORACLE", Subsolver::ExactOracle);
    py::class_<CgConfig>(m, "CgConfig")
        .def(py::init<>())
        .def_readwrite("T", &CgConfig::T)
        .def_readwrite("K", &CgConfig::K)
        .def_readwrite("subsolver", &CgConfig::subsolver)
        .def_readwrite("p", &CgConfig::p)
        .def_readwrite("shots", &CgConfig::shots)
        .def_readwrite("lambda1", &CgConfig::lambda1)
        .def_readwrite("lambda2", &CgConfig::lambda2)
        .def_readwrite("lambda3", &CgConfig::lambda3)
        .def_readwrite("convergence_eps", &CgConfig::convergence_eps)
        .def_readwrite("max_iterations", &CgConfig::max_iterations)
        .def_readwrite("seed", &CgConfig::seed)
        .def_readwrite("exact_expectation", &CgConfig::exact_expectation)
        .def_readwrite("verify_with_oracle", &CgConfig::verify_with_oracle)
        .def_readwrite("warm_start", &CgConfig::warm_start)
        .def_readwrite("optimizer", &CgConfig::optimizer);
    py::class_<CgIterationLog>(m, "CgIterationLog")
        .def_readonly("iteration", &CgIterationLog::iteration)
        .def_readonly("lp_objective", &CgIterationLog::lp_objective)
        .def_readonly("duals", &CgIterationLog::duals)
        .def_readonly("min_reduced_cost", &CgIterationLog::min_reduced_cost)
        .def_readonly("routes_added", &CgIterationLog::routes_added)
        .def_readonly("infeasible_samples", &CgIterationLog::infeasible_samples)
        .def_readonly("wall_time_ms", &CgIterationLog::wall_time_ms);
    py::class_<CgResult>(m, "CgResult")
        .def_readonly("logs", &CgResult::logs)
        .def_readonly("final_routes", &CgResult::final_routes)
        .def_readonly("final_solution", &CgResult::final_solution)
        .def_readonly("converged", &CgResult::converged)
        .def_readonly("total_distance", &CgResult::total_distance)
        .def_readonly("final_lp_objective", &CgResult::final_lp_objective)
        .def_property_readonly("iterations", &CgResult::iterations);

    m.def("decode_samples",
          [](const SampleSet& samples, const Instance& inst, int T,
             const DualSolution& duals) {
              return decode_samples(samples, inst, T, duals);
          },
          py::arg("samples"), py::arg("instance"), py::arg("T"),
          py::arg("duals"));
    m.def("run_cg", &run_cg, py::arg("instance"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<EnumeratedRoutes>(m, "EnumeratedRoutes")
        .def_readonly("routes", &EnumeratedRoutes::routes);
    m.def("enumerate_routes", &enumerate_routes, py::arg("instance"));
    m.def("exact_min_reduced_cost", &exact_min_reduced_cost,
          py::arg("instance"), py::arg("duals"), py::arg("T"));
    m.def("exact_cvrp", &exact_cvrp, py::arg("instance"));
}
