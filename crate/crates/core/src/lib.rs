//! Grid-world maritime path planning and energy dispatch.
//!
//! The crate covers the full pipeline of a renewable-powered vessel study:
//!
//! * [`environment`] — seeded synthetic grid worlds (polar resistance, wind,
//!   obstacles) with a stable on-disk document format;
//! * [`energy`] — least-squares fitting of the per-km energy cost model and
//!   the renewable generation model;
//! * [`aco`], [`horizon`], [`metaheuristics`] — one-horizon move-sequence
//!   search: ant colony optimization, exhaustive enumeration, and the
//!   GA/PSO/WOA family including the WOA–ACO hybrid;
//! * [`planner`] — the receding-horizon loop plus geometric baseline routes
//!   (direct, wind-first, 50-50 deviation);
//! * [`dispatch`] + [`simplex`] — battery/backup dispatch along a planned
//!   route as an exactly-solved linear program;
//! * [`scenario`], [`report`], [`plot`] — the seeded benchmark harness with
//!   deterministic CSV tables and SVG path overlays.
//!
//! # Determinism
//!
//! Every stochastic component draws from explicitly seeded, splittable
//! streams, and all parallel reductions merge in a fixed order: rerunning
//! any scenario reproduces identical bytes. The `parallel` feature (on by
//! default) enables the rayon fan-outs; disabling it selects sequential
//! fallbacks with bit-identical results.

pub mod aco;
pub mod dispatch;
pub mod energy;
pub mod environment;
pub mod error;
pub mod grid;
pub mod horizon;
pub mod metaheuristics;
pub mod planner;
pub mod plot;
pub mod report;
pub mod rng;
pub mod scenario;
pub mod simplex;

pub use aco::{
    aco_horizon_search, aco_horizon_search_sequential, candidate_cost, candidate_score,
    construct_candidate, decode_sequence, heuristic, move_probabilities, pheromone_update,
    terminal_estimate, AcoParams, AcoSearchOutcome, Candidate, InfeasibleMode, PheromoneMatrix,
};
pub use dispatch::{
    demand_from_path, renewable_series, soc_trajectory, solve_dispatch, BatteryParams,
    DispatchProblem, DispatchSchedule,
};
pub use energy::{
    fit_energy_model, fit_linear_model, fit_renewable_model, parse_samples, solve_least_squares,
    EnergyModelCoefficients, FitReport, RenewableModelCoefficients, Sample, SampleSet,
};
pub use environment::{
    generate_environment, load_environment, uniform_cost_environment, with_obstacles, EnvDocument,
    EnvSpec, FieldSpec, GridEnvironment, ObstacleRect,
};
pub use error::{Error, Result};
pub use grid::{geodesic_length, move_between, move_length, GridPos, MOVES, NUM_MOVES};
pub use horizon::{
    exhaustive_horizon_search, exhaustive_horizon_search_sequential,
    exhaustive_horizon_search_with_cap, Fitness, HorizonOutcome, HorizonProblem, MoveSequence,
    DEFAULT_ENUMERATION_CAP,
};
pub use metaheuristics::{
    ga_horizon_search, pso_horizon_search, woa_aco_horizon_search, woa_horizon_search,
    HybridSearchOutcome, MetaSearchOutcome, MetaheuristicParams,
};
pub use planner::{
    combined_5050_path, default_deviation_amplitude, direct_path, evaluate_baseline,
    evaluate_fixed_path, is_eight_connected, path_from_csv, path_to_csv, plan, step_energy,
    wind_first_path, AcoOptimizer, ExhaustiveOptimizer, GaOptimizer, HorizonOptimizer, MpcParams,
    PlanResult, PsoOptimizer, TerminationStatus, WoaAcoOptimizer, WoaOptimizer,
};
pub use plot::{emit_plot, PlotPath};
pub use report::{median, summarize, BenchReport, BenchRow, PlannerSummary};
pub use rng::{candidate_rng, master_rng, mix_seed};
pub use scenario::{
    benchmark_coefficients, benchmark_env_spec, benchmark_planners, benchmark_scenario,
    run_scenario, run_scenario_with, scenario_from_json, CostModelSource, DispatchBlock,
    DispatchOutcome, EnvironmentSource, PlannerEntry, RunOptions, ScenarioRun, ScenarioSpec,
    PLANNER_NAMES,
};
pub use simplex::{solve_lp, LpConstraint, LpProblem, LpSolution, Relation};
