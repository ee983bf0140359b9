"""Column-generation CVRP solver with simulated quantum pricing."""

from ._core import (
    AnsatzConfig,
    AnsatzKind,
    CgConfig,
    CgIterationLog,
    CgResult,
    DualSolution,
    EnumeratedRoutes,
    Instance,
    IsingHamiltonian,
    OptResult,
    OptimizerConfig,
    Params,
    QuboProblem,
    QubitCounts,
    RmpIntSolution,
    RmpLpSolution,
    Route,
    RouteSet,
    SampleSet,
    Statevector,
    SubproblemSpec,
    Subsolver,
    add_onehot_penalty,
    build_alim_qubo,
    decode_samples,
    enumerate_routes,
    evaluate,
    exact_cvrp,
    exact_min_reduced_cost,
    expectation,
    generate_instance,
    initial_route_set,
    ising_energy,
    load_instance,
    make_route,
    minimize,
    prepare_initial_state,
    qubit_counts,
    qubo_to_ising,
    run_ansatz,
    run_cg,
    sample,
    save_instance,
    solve_rmp_integer,
    solve_rmp_lp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
