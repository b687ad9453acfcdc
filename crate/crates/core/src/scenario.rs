//! Scenario harness: a declarative JSON description of an experiment
//! (environment, cost model, planner lineup, seeds, optional dispatch) runs
//! into a benchmark report plus table/plot artifacts.
//!
//! Determinism contract: a scenario file fully determines every numeric in
//! the report and every output byte. Independent (planner, seed) runs may
//! execute concurrently, but assembly is a serial merge in (planner, seed)
//! order, so the schedule never shows in the output. Wall-clock timings are
//! recorded only when explicitly requested, precisely because they would
//! break that contract.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aco::AcoParams;
use crate::dispatch::{
    demand_from_path, renewable_series, solve_dispatch, BatteryParams, DispatchProblem,
    DispatchSchedule,
};
use crate::energy::{
    fit_energy_model, parse_samples, EnergyModelCoefficients, RenewableModelCoefficients,
};
use crate::environment::{
    generate_environment, load_environment, EnvSpec, FieldSpec, GridEnvironment, ObstacleRect,
};
use crate::error::{Error, Result};
use crate::grid::GridPos;
use crate::horizon::DEFAULT_ENUMERATION_CAP;
use crate::metaheuristics::MetaheuristicParams;
use crate::planner::{
    combined_5050_path, default_deviation_amplitude, direct_path, evaluate_baseline,
    evaluate_fixed_path, plan, wind_first_path, AcoOptimizer, ExhaustiveOptimizer, GaOptimizer,
    HorizonOptimizer, MpcParams, PlanResult, PsoOptimizer, TerminationStatus, WoaAcoOptimizer,
    WoaOptimizer,
};
use crate::plot::{emit_plot, PlotPath};
use crate::report::{BenchReport, BenchRow};

/// Planner identifiers accepted in scenario files.
pub const PLANNER_NAMES: [&str; 9] = [
    "direct",
    "wind-first",
    "50-50",
    "aco",
    "exhaustive",
    "ga",
    "pso",
    "woa",
    "woa-aco",
];

/// Environment input: inline generation recipe or a reference to an
/// environment document on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EnvironmentSource {
    File { path: String },
    Inline(EnvSpec),
}

/// Cost-model input: explicit coefficients `[gamma1, gamma2, gamma3,
/// gamma4]` or a sample file to fit them from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CostModelSource {
    Coefficients { coefficients: [f64; 4] },
    Samples { samples: String },
}

/// One planner in the lineup. `name` selects the algorithm; the optional
/// blocks override its defaults. Unused blocks are ignored by baselines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlannerEntry {
    pub name: String,
    /// Report label; defaults to `name`. Must be unique within a scenario.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Horizon-problem parameters (horizon, weights, pricing, ACO tuning).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<AcoParams>,
    /// Population-optimizer tuning for ga/pso/woa/woa-aco.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<MetaheuristicParams>,
    /// Colony settings for the woa-aco refinement stage.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colony: Option<AcoParams>,
    /// Deviation amplitude for the 50-50 baseline (cells).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    /// Enumeration cap override for the exhaustive planner.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
}

impl PlannerEntry {
    /// Entry with the given name and all-default parameters.
    pub fn named(name: &str) -> Self {
        PlannerEntry {
            name: name.to_string(),
            label: None,
            params: None,
            meta: None,
            colony: None,
            amplitude: None,
            cap: None,
        }
    }

    /// Report label for this entry.
    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or(&self.name)
    }

    /// Builds this entry's planner and runs it once on `env`.
    pub fn run(
        &self,
        env: &GridEnvironment,
        start: GridPos,
        target: GridPos,
        mpc: &MpcParams,
        seed: u64,
    ) -> Result<PlanResult> {
        run_kind(&self.build()?, self, env, start, target, mpc, seed)
    }

    /// This entry with every tuning default made explicit, so runs can log
    /// the exact configuration they used. Optimizer entries gain their
    /// default parameter blocks (including the derived woa-aco colony and
    /// the exhaustive enumeration cap); baselines come back unchanged — the
    /// 50-50 amplitude depends on the route endpoints and stays implicit
    /// until run time.
    pub fn resolved(&self) -> PlannerEntry {
        let mut entry = self.clone();
        if matches!(
            self.name.as_str(),
            "aco" | "exhaustive" | "ga" | "pso" | "woa" | "woa-aco"
        ) {
            let params = entry.params.get_or_insert_with(AcoParams::default).clone();
            if self.name == "exhaustive" {
                entry.cap.get_or_insert(DEFAULT_ENUMERATION_CAP);
            }
            if matches!(self.name.as_str(), "ga" | "pso" | "woa" | "woa-aco") {
                let meta = entry
                    .meta
                    .get_or_insert_with(MetaheuristicParams::default)
                    .clone();
                if self.name == "woa-aco" {
                    // Default refinement colony: one pheromone generation
                    // per cycle with the population reused as the ant count.
                    entry.colony.get_or_insert(AcoParams {
                        n_ants: meta.population,
                        generations: 1,
                        ..params
                    });
                }
            }
        }
        entry
    }

    fn build(&self) -> Result<PlannerKind> {
        let entry = self.resolved();
        let params = entry.params.clone().unwrap_or_default();
        let meta = entry.meta.clone().unwrap_or_default();
        params.validate()?;
        meta.validate()?;
        let kind = match entry.name.as_str() {
            "direct" => PlannerKind::Direct,
            "wind-first" => PlannerKind::WindFirst,
            "50-50" => PlannerKind::Fifty {
                amplitude: entry.amplitude,
            },
            "aco" => PlannerKind::Optimizer(Box::new(AcoOptimizer { params })),
            "exhaustive" => PlannerKind::Optimizer(Box::new(ExhaustiveOptimizer {
                params,
                cap: entry.cap.unwrap_or(DEFAULT_ENUMERATION_CAP),
            })),
            "ga" => PlannerKind::Optimizer(Box::new(GaOptimizer { params, meta })),
            "pso" => PlannerKind::Optimizer(Box::new(PsoOptimizer { params, meta })),
            "woa" => PlannerKind::Optimizer(Box::new(WoaOptimizer { params, meta })),
            "woa-aco" => {
                let colony = entry
                    .colony
                    .clone()
                    .expect("resolved woa-aco entry always carries a colony");
                colony.validate()?;
                PlannerKind::Optimizer(Box::new(WoaAcoOptimizer {
                    params,
                    meta,
                    colony,
                }))
            }
            other => {
                return Err(Error::Spec(format!(
                    "unknown planner {other:?}; valid names: {}",
                    PLANNER_NAMES.join(", ")
                )))
            }
        };
        Ok(kind)
    }
}

enum PlannerKind {
    Direct,
    WindFirst,
    Fifty { amplitude: Option<f64> },
    Optimizer(Box<dyn HorizonOptimizer + Send + Sync>),
}

/// Executes one already-built planner. Baseline paths are priced as fixed
/// routes; optimizers go through the receding-horizon loop. Planners that do
/// not report their own wall time get the elapsed time measured here.
#[allow(clippy::too_many_arguments)]
fn run_kind(
    kind: &PlannerKind,
    entry: &PlannerEntry,
    env: &GridEnvironment,
    start: GridPos,
    target: GridPos,
    mpc: &MpcParams,
    seed: u64,
) -> Result<PlanResult> {
    let label = entry.label();
    let started = Instant::now();
    let mut result = match kind {
        PlannerKind::Direct => evaluate_baseline(env, label, direct_path(start, target), seed),
        PlannerKind::WindFirst => {
            evaluate_baseline(env, label, wind_first_path(start, target), seed)
        }
        PlannerKind::Fifty { amplitude } => {
            let amp = amplitude.unwrap_or_else(|| default_deviation_amplitude(start, target));
            evaluate_baseline(env, label, combined_5050_path(start, target, amp), seed)
        }
        PlannerKind::Optimizer(opt) => plan(env, start, target, opt.as_ref(), mpc, label, seed)?,
    };
    if result.wall_time_ms == 0.0 {
        result.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    }
    Ok(result)
}

/// Optional dispatch stage appended to a scenario: forecasts over a fixed
/// slot grid plus battery and price settings. The demand profile comes from
/// the best feasible planned route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispatchBlock {
    /// Solar irradiance forecast per slot.
    pub irradiance: Vec<f64>,
    /// Wind-speed forecast per slot, m/s.
    pub wind_speed_ms: Vec<f64>,
    /// Renewable generation model; omitted means the built-in fitted model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub renewable_model: Option<RenewableModelCoefficients>,
    #[serde(default = "default_delta_t")]
    pub delta_t_h: f64,
    /// Vessel speed used to convert the route into a time-binned load.
    #[serde(default = "default_cruise_speed")]
    pub cruise_speed_kmh: f64,
    #[serde(default)]
    pub battery: BatteryParams,
    #[serde(default = "default_c_battery")]
    pub c_battery: f64,
    #[serde(default = "default_c_backup")]
    pub c_backup: f64,
}

fn default_delta_t() -> f64 {
    1.0
}

fn default_cruise_speed() -> f64 {
    10.0
}

fn default_c_battery() -> f64 {
    0.1
}

fn default_c_backup() -> f64 {
    0.5
}

/// A complete experiment description; see `scenarios/` for worked examples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    /// Scenario name; also the artifact file stem.
    pub name: String,
    pub environment: EnvironmentSource,
    pub cost_model: CostModelSource,
    /// Lower clamp applied to modeled per-km costs.
    #[serde(default)]
    pub cost_floor: f64,
    pub start: GridPos,
    pub target: GridPos,
    pub planners: Vec<PlannerEntry>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub mpc: MpcParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dispatch: Option<DispatchBlock>,
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
        {
            return Err(Error::Spec(format!(
                "scenario name {:?} must be nonempty and use only [A-Za-z0-9._-]",
                self.name
            )));
        }
        if self.planners.is_empty() {
            return Err(Error::Spec("scenario lists no planners".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Spec("scenario lists no seeds".into()));
        }
        if !(self.cost_floor.is_finite() && self.cost_floor >= 0.0) {
            return Err(Error::Spec(format!(
                "cost_floor must be finite and >= 0, got {}",
                self.cost_floor
            )));
        }
        self.mpc.validate()?;
        for (i, entry) in self.planners.iter().enumerate() {
            entry
                .build()
                .map_err(|e| Error::Spec(format!("planners[{i}]: {e}")))?;
            for later in &self.planners[i + 1..] {
                if later.label() == entry.label() {
                    return Err(Error::Spec(format!(
                        "duplicate planner label {:?}; set distinct `label` fields",
                        entry.label()
                    )));
                }
            }
        }
        if let Some(d) = &self.dispatch {
            if d.irradiance.len() != d.wind_speed_ms.len() || d.irradiance.is_empty() {
                return Err(Error::Spec(format!(
                    "dispatch forecasts must be nonempty and equal length, got {} and {}",
                    d.irradiance.len(),
                    d.wind_speed_ms.len()
                )));
            }
            d.battery.validate()?;
        }
        Ok(())
    }

    /// Builds the environment and applies the cost model. Relative file
    /// references resolve against `base_dir`.
    pub fn resolve_environment(&self, base_dir: &Path) -> Result<GridEnvironment> {
        let raw = match &self.environment {
            EnvironmentSource::File { path } => {
                let text = fs::read_to_string(base_dir.join(path))?;
                load_environment(&text)?
            }
            EnvironmentSource::Inline(spec) => generate_environment(spec)?,
        };
        let coeffs = match &self.cost_model {
            CostModelSource::Coefficients { coefficients } => EnergyModelCoefficients {
                gamma1: coefficients[0],
                gamma2: coefficients[1],
                gamma3: coefficients[2],
                gamma4: coefficients[3],
            },
            CostModelSource::Samples { samples } => {
                let text = fs::read_to_string(base_dir.join(samples))?;
                let set = parse_samples(&text)?;
                fit_energy_model(&set)?.0
            }
        };
        raw.apply_cost_model(&coeffs, self.cost_floor)
    }
}

/// Parses a scenario document, rejecting unknown keys.
pub fn scenario_from_json(text: &str) -> Result<ScenarioSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("scenario file: {e}")))
}

/// Execution switches that do not alter any planned path or energy value.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Record real wall-clock times in the report (otherwise zeroed so that
    /// repeated runs are byte-identical).
    pub timing: bool,
    /// Worker threads for the run fan-out; `None` uses the global default.
    pub jobs: Option<usize>,
    /// Base directory for relative file references in the spec.
    pub base_dir: Option<PathBuf>,
}

/// Dispatch stage output bundled with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispatchOutcome {
    /// Label of the planner whose route set the demand profile.
    pub planner: String,
    pub seed: u64,
    pub problem: DispatchProblem,
    pub schedule: DispatchSchedule,
}

/// Everything a scenario run produces, pre-rendering.
pub struct ScenarioRun {
    pub spec: ScenarioSpec,
    pub environment: GridEnvironment,
    pub report: BenchReport,
    /// Raw planner outputs, index-aligned with `report.rows`.
    pub results: Vec<PlanResult>,
    pub dispatch: Option<DispatchOutcome>,
}

impl ScenarioRun {
    /// The delimited benchmark table.
    pub fn table(&self) -> String {
        self.report.to_csv()
    }

    /// Path-overlay SVG: per planner, the best seed's route (ties to the
    /// earliest seed), legend showing the re-evaluated energy.
    pub fn plot(&self) -> String {
        let mut paths = Vec::new();
        let mut seen: Vec<&str> = Vec::new();
        for entry in &self.spec.planners {
            let label = entry.label();
            if seen.contains(&label) {
                continue;
            }
            seen.push(label);
            let best = self
                .report
                .rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.planner == label)
                .min_by(|(ia, a), (ib, b)| a.energy_kwh.total_cmp(&b.energy_kwh).then(ia.cmp(ib)));
            if let Some((i, row)) = best {
                paths.push(PlotPath {
                    label: label.to_string(),
                    positions: self.results[i].path.clone(),
                    cost: row.energy_kwh,
                });
            }
        }
        emit_plot(&self.environment, &paths)
    }

    /// Writes `<name>.csv`, `<name>.svg`, `<name>.report.json` and (when a
    /// dispatch stage ran) `<name>.dispatch.json` under `dir`; returns the
    /// created paths.
    pub fn write_artifacts(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let stem = &self.spec.name;
        let mut written = Vec::new();
        let mut emit = |name: String, contents: String| -> Result<()> {
            let path = dir.join(name);
            fs::write(&path, contents)?;
            written.push(path);
            Ok(())
        };
        emit(format!("{stem}.csv"), self.table())?;
        emit(format!("{stem}.svg"), self.plot())?;
        emit(format!("{stem}.report.json"), self.report.to_json())?;
        if let Some(d) = &self.dispatch {
            let json = serde_json::to_string_pretty(d).expect("dispatch serialization");
            emit(format!("{stem}.dispatch.json"), json)?;
        }
        Ok(written)
    }
}

/// Runs a scenario with default options.
pub fn run_scenario(spec: &ScenarioSpec) -> Result<ScenarioRun> {
    run_scenario_with(spec, &RunOptions::default())
}

/// Runs every (planner, seed) pair, re-evaluates each emitted path
/// independently, and assembles the report in (planner, seed) order.
pub fn run_scenario_with(spec: &ScenarioSpec, options: &RunOptions) -> Result<ScenarioRun> {
    spec.validate()?;
    let base_dir = options
        .base_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("."));
    let env = spec.resolve_environment(&base_dir)?;
    for (what, pos) in [("start", spec.start), ("target", spec.target)] {
        if !env.is_valid(&pos) {
            return Err(Error::Spec(format!(
                "{what} {pos} is outside the grid or inside an obstacle"
            )));
        }
    }

    let kinds: Vec<PlannerKind> = spec
        .planners
        .iter()
        .map(|e| e.build())
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, u64)> = (0..spec.planners.len())
        .flat_map(|p| spec.seeds.iter().map(move |&s| (p, s)))
        .collect();

    let run_one = |&(p, seed): &(usize, u64)| -> Result<PlanResult> {
        run_kind(
            &kinds[p],
            &spec.planners[p],
            &env,
            spec.start,
            spec.target,
            &spec.mpc,
            seed,
        )
    };

    #[cfg(feature = "parallel")]
    let results: Vec<PlanResult> = {
        let fan_out = || jobs.par_iter().map(run_one).collect::<Result<Vec<_>>>();
        match options.jobs {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Spec(format!("cannot build a {n}-thread pool: {e}")))?
                .install(fan_out)?,
            None => fan_out()?,
        }
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<PlanResult> = jobs.iter().map(run_one).collect::<Result<Vec<_>>>()?;

    let rows: Vec<BenchRow> = results
        .iter()
        .map(|r| BenchRow {
            planner: r.planner.clone(),
            seed: r.seed,
            // Single source of truth: the independent re-evaluation of the
            // emitted path, never the planner's self-reported total. A run
            // that never reached the target gets ∞ no matter how cheap its
            // partial path was — finite energy always means a completed,
            // collision-free voyage.
            energy_kwh: if r.status == TerminationStatus::Reached {
                evaluate_fixed_path(&env, &r.path)
            } else {
                f64::INFINITY
            },
            steps: r.steps,
            status: r.status,
            wall_ms: if options.timing { r.wall_time_ms } else { 0.0 },
        })
        .collect();
    let report = BenchReport::from_rows(&spec.name, &env.digest(), rows);

    let dispatch = match &spec.dispatch {
        Some(block) => run_dispatch_stage(&env, block, &report, &results)?,
        None => None,
    };

    Ok(ScenarioRun {
        spec: spec.clone(),
        environment: env,
        report,
        results,
        dispatch,
    })
}

/// Feeds the best feasible route into the dispatch LP. Returns `None` when
/// no planner produced a feasible route.
fn run_dispatch_stage(
    env: &GridEnvironment,
    block: &DispatchBlock,
    report: &BenchReport,
    results: &[PlanResult],
) -> Result<Option<DispatchOutcome>> {
    let best = report
        .rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.energy_kwh.is_finite())
        .min_by(|(ia, a), (ib, b)| a.energy_kwh.total_cmp(&b.energy_kwh).then(ia.cmp(ib)));
    let Some((i, row)) = best else {
        return Ok(None);
    };

    let model = block
        .renewable_model
        .unwrap_or_else(RenewableModelCoefficients::default_model);
    let renewable_kw = renewable_series(&block.irradiance, &block.wind_speed_ms, &model)?;
    let mut demand_kw =
        demand_from_path(env, &results[i], block.cruise_speed_kmh, block.delta_t_h)?;
    if demand_kw.len() > renewable_kw.len() {
        return Err(Error::Spec(format!(
            "dispatch forecast covers {} slots but the voyage needs {}",
            renewable_kw.len(),
            demand_kw.len()
        )));
    }
    demand_kw.resize(renewable_kw.len(), 0.0);
    let problem = DispatchProblem {
        demand_kw,
        renewable_kw,
        delta_t_h: block.delta_t_h,
        c_battery: block.c_battery,
        c_backup: block.c_backup,
        battery: block.battery.clone(),
    };
    let schedule = solve_dispatch(&problem)?;
    Ok(Some(DispatchOutcome {
        planner: row.planner.clone(),
        seed: row.seed,
        problem,
        schedule,
    }))
}

/// The 50×50 benchmark layout: start top-left, target bottom-right, two
/// fixed central square obstacles straddling the diagonal, and seeded smooth
/// polar/wind fields.
pub fn benchmark_env_spec(seed: u64) -> EnvSpec {
    EnvSpec {
        n_x: 50,
        n_y: 50,
        cell_size_km: 1.0,
        polar: FieldSpec {
            bumps: 6,
            amplitude: [0.1, 0.6],
            width: [4.0, 10.0],
            base: 0.2,
        },
        wind: FieldSpec {
            bumps: 5,
            amplitude: [1.0, 4.0],
            width: [5.0, 12.0],
            base: 2.0,
        },
        obstacles: vec![
            ObstacleRect {
                col_min: 16,
                col_max: 23,
                row_min: 16,
                row_max: 23,
            },
            ObstacleRect {
                col_min: 27,
                col_max: 34,
                row_min: 27,
                row_max: 34,
            },
        ],
        seed,
    }
}

/// Reference cost-model coefficients for the benchmark layouts.
pub fn benchmark_coefficients() -> [f64; 4] {
    [0.8, 0.05, 0.0008, 0.3]
}

/// The nine-planner comparison lineup. The receding-horizon planners share
/// horizon 5 and matched sampling budgets (30 × 20 evaluations per replan);
/// the exhaustive planner runs horizon 3, whose 512-sequence sweep is the
/// comparable per-replan budget.
pub fn benchmark_planners() -> Vec<PlannerEntry> {
    let horizon5 = AcoParams {
        horizon: 5,
        ..AcoParams::default()
    };
    let meta = MetaheuristicParams::default();
    let mut entries = Vec::new();
    for name in ["direct", "wind-first", "50-50"] {
        entries.push(PlannerEntry::named(name));
    }
    let mut aco = PlannerEntry::named("aco");
    aco.params = Some(horizon5.clone());
    entries.push(aco);
    let mut exhaustive = PlannerEntry::named("exhaustive");
    exhaustive.params = Some(AcoParams {
        horizon: 3,
        ..AcoParams::default()
    });
    entries.push(exhaustive);
    for name in ["ga", "pso", "woa", "woa-aco"] {
        let mut e = PlannerEntry::named(name);
        e.params = Some(horizon5.clone());
        e.meta = Some(meta.clone());
        entries.push(e);
    }
    entries
}

/// A full corner-to-corner benchmark scenario over one layout seed.
pub fn benchmark_scenario(seed: u64) -> ScenarioSpec {
    ScenarioSpec {
        name: format!("benchmark-{seed}"),
        environment: EnvironmentSource::Inline(benchmark_env_spec(seed)),
        cost_model: CostModelSource::Coefficients {
            coefficients: benchmark_coefficients(),
        },
        cost_floor: 0.05,
        start: GridPos::new(0, 0),
        target: GridPos::new(49, 49),
        planners: benchmark_planners(),
        seeds: vec![seed],
        mpc: MpcParams::default(),
        dispatch: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::uniform_cost_environment;
    use crate::report::median;

    fn flat_env_source(n: usize, polar: f64, wind: f64) -> EnvironmentSource {
        EnvironmentSource::Inline(EnvSpec {
            n_x: n,
            n_y: n,
            cell_size_km: 1.0,
            polar: FieldSpec::constant(polar),
            wind: FieldSpec::constant(wind),
            obstacles: vec![],
            seed: 0,
        })
    }

    fn small_spec(planners: Vec<PlannerEntry>, seeds: Vec<u64>) -> ScenarioSpec {
        ScenarioSpec {
            name: "unit".into(),
            environment: flat_env_source(8, 0.5, 2.0),
            cost_model: CostModelSource::Coefficients {
                coefficients: [1.0, 0.1, 0.001, 0.2],
            },
            cost_floor: 0.0,
            start: GridPos::new(0, 0),
            target: GridPos::new(7, 7),
            planners,
            seeds,
            mpc: MpcParams::default(),
            dispatch: None,
        }
    }

    fn quick_aco() -> PlannerEntry {
        let mut e = PlannerEntry::named("aco");
        e.params = Some(AcoParams {
            n_ants: 20,
            generations: 10,
            horizon: 4,
            ..AcoParams::default()
        });
        e
    }

    #[test]
    fn unknown_planner_lists_valid_names() {
        let err = PlannerEntry::named("dijkstra").build().err().unwrap();
        let msg = err.to_string();
        assert!(msg.contains("dijkstra"));
        for name in PLANNER_NAMES {
            assert!(msg.contains(name), "{msg} missing {name}");
        }
    }

    #[test]
    fn resolved_fills_defaults_without_changing_behavior() {
        let resolved = PlannerEntry::named("woa-aco").resolved();
        let meta = resolved.meta.as_ref().unwrap();
        let colony = resolved.colony.as_ref().unwrap();
        assert_eq!(resolved.params, Some(AcoParams::default()));
        assert_eq!(colony.n_ants, meta.population);
        assert_eq!(colony.generations, 1);

        let exhaustive = PlannerEntry::named("exhaustive").resolved();
        assert_eq!(exhaustive.cap, Some(DEFAULT_ENUMERATION_CAP));

        let direct = PlannerEntry::named("direct");
        assert_eq!(direct.resolved(), direct);

        // Idempotent, and the filled entry plans the same route.
        for name in PLANNER_NAMES {
            let entry = PlannerEntry::named(name);
            let resolved = entry.resolved();
            assert_eq!(resolved.resolved(), resolved, "{name} not idempotent");

            let env = uniform_cost_environment(6, 6, 1.0, 1.0);
            let mpc = MpcParams::default();
            let (start, target) = (GridPos::new(0, 0), GridPos::new(5, 5));
            let a = entry.run(&env, start, target, &mpc, 7).unwrap();
            let b = resolved.run(&env, start, target, &mpc, 7).unwrap();
            assert_eq!(a.path, b.path, "{name} route changed");
            assert_eq!(a.total_energy, b.total_energy, "{name} energy changed");
        }
    }

    #[test]
    fn scenario_json_round_trip_and_unknown_keys() {
        let spec = small_spec(vec![PlannerEntry::named("direct")], vec![0]);
        let json = serde_json::to_string(&spec).unwrap();
        let back = scenario_from_json(&json).unwrap();
        assert_eq!(back, spec);

        let with_extra = json.replacen("{", "{\"surprise\":1,", 1);
        assert!(scenario_from_json(&with_extra).is_err());
    }

    #[test]
    fn validation_catches_structural_problems() {
        let spec = small_spec(vec![], vec![0]);
        assert!(spec.validate().is_err());

        let spec = small_spec(vec![PlannerEntry::named("direct")], vec![]);
        assert!(spec.validate().is_err());

        let mut spec = small_spec(vec![PlannerEntry::named("direct")], vec![0]);
        spec.name = "bad name!".into();
        assert!(spec.validate().is_err());

        let spec = small_spec(
            vec![PlannerEntry::named("direct"), PlannerEntry::named("direct")],
            vec![0],
        );
        let err = spec.validate().unwrap_err();
        assert!(err.to_string().contains("duplicate planner label"));
    }

    #[test]
    fn start_inside_obstacle_is_rejected() {
        let mut spec = small_spec(vec![PlannerEntry::named("direct")], vec![0]);
        if let EnvironmentSource::Inline(env) = &mut spec.environment {
            env.obstacles.push(ObstacleRect {
                col_min: 0,
                col_max: 0,
                row_min: 0,
                row_max: 0,
            });
        }
        let err = run_scenario(&spec).err().unwrap();
        assert!(err.to_string().contains("start"));
    }

    #[test]
    fn rows_are_ordered_and_reevaluated() {
        let spec = small_spec(vec![PlannerEntry::named("direct"), quick_aco()], vec![3, 9]);
        let run = run_scenario(&spec).unwrap();
        let keys: Vec<(String, u64)> = run
            .report
            .rows
            .iter()
            .map(|r| (r.planner.clone(), r.seed))
            .collect();
        assert_eq!(
            keys,
            vec![
                ("direct".into(), 3),
                ("direct".into(), 9),
                ("aco".into(), 3),
                ("aco".into(), 9)
            ]
        );
        for (row, result) in run.report.rows.iter().zip(&run.results) {
            let reeval = evaluate_fixed_path(&run.environment, &result.path);
            assert_eq!(row.energy_kwh.to_bits(), reeval.to_bits());
            assert_eq!(row.wall_ms, 0.0);
        }
        // Summary statistics recompute from the rows.
        for summary in &run.report.summaries {
            let energies: Vec<f64> = run
                .report
                .rows
                .iter()
                .filter(|r| r.planner == summary.planner)
                .map(|r| r.energy_kwh)
                .collect();
            assert_eq!(summary.median_kwh, median(&energies));
        }
    }

    #[test]
    fn blocked_direct_reports_infinity() {
        let mut spec = small_spec(vec![PlannerEntry::named("direct"), quick_aco()], vec![1]);
        // A wall across the diagonal with a gap at the top-right corner.
        if let EnvironmentSource::Inline(env) = &mut spec.environment {
            env.obstacles.push(ObstacleRect {
                col_min: 2,
                col_max: 5,
                row_min: 2,
                row_max: 5,
            });
        }
        let run = run_scenario(&spec).unwrap();
        let direct = &run.report.rows[0];
        assert_eq!(direct.energy_kwh, f64::INFINITY);
        assert_eq!(direct.status, crate::planner::TerminationStatus::Infeasible);
        let aco = &run.report.rows[1];
        assert!(aco.energy_kwh.is_finite(), "{:?}", run.report.rows);
        assert_eq!(run.report.summaries[0].feasibility, 0.0);
        assert_eq!(run.report.summaries[1].feasibility, 1.0);
    }

    #[test]
    fn repeated_runs_are_byte_identical() {
        let spec = small_spec(vec![PlannerEntry::named("50-50"), quick_aco()], vec![0, 1]);
        let a = run_scenario(&spec).unwrap();
        let b = run_scenario(&spec).unwrap();
        assert_eq!(a.table(), b.table());
        assert_eq!(a.plot(), b.plot());
        assert_eq!(a.report.env_digest, b.report.env_digest);
    }

    #[test]
    fn aco_tracks_exhaustive_across_seeds() {
        let mut aco = PlannerEntry::named("aco");
        aco.params = Some(AcoParams {
            horizon: 3,
            ..AcoParams::default()
        });
        let mut exhaustive = PlannerEntry::named("exhaustive");
        exhaustive.params = Some(AcoParams {
            horizon: 3,
            ..AcoParams::default()
        });
        let mut spec = small_spec(vec![aco, exhaustive], (0..10).collect());
        spec.environment = EnvironmentSource::Inline(EnvSpec {
            n_x: 10,
            n_y: 10,
            cell_size_km: 1.0,
            polar: FieldSpec {
                bumps: 3,
                amplitude: [0.2, 0.8],
                width: [1.5, 3.0],
                base: 0.3,
            },
            wind: FieldSpec {
                bumps: 2,
                amplitude: [1.0, 3.0],
                width: [2.0, 4.0],
                base: 1.0,
            },
            obstacles: vec![],
            seed: 42,
        });
        spec.target = GridPos::new(9, 9);
        let run = run_scenario(&spec).unwrap();
        let med = |name: &str| {
            run.report
                .summaries
                .iter()
                .find(|s| s.planner == name)
                .unwrap()
                .median_kwh
        };
        let (aco_med, exh_med) = (med("aco"), med("exhaustive"));
        assert!(aco_med.is_finite() && exh_med.is_finite());
        assert!(
            aco_med <= exh_med * 1.05,
            "aco median {aco_med} vs exhaustive {exh_med}"
        );
    }

    #[test]
    fn dispatch_stage_runs_on_best_route() {
        let mut spec = small_spec(vec![quick_aco()], vec![5]);
        spec.dispatch = Some(DispatchBlock {
            irradiance: vec![40.0; 12],
            wind_speed_ms: vec![5.0; 12],
            renewable_model: None,
            delta_t_h: 0.25,
            cruise_speed_kmh: 6.0,
            battery: BatteryParams::default(),
            c_battery: 0.1,
            c_backup: 0.5,
        });
        let run = run_scenario(&spec).unwrap();
        let outcome = run.dispatch.expect("dispatch outcome");
        assert_eq!(outcome.planner, "aco");
        let voyage: f64 = outcome.problem.demand_kw.iter().sum::<f64>() * 0.25;
        let best = run.report.rows[0].energy_kwh;
        assert!((voyage - best).abs() < 1e-9 * best.max(1.0));
        for t in 0..outcome.problem.n_slots() {
            let lhs = outcome.problem.renewable_kw[t]
                + outcome.schedule.u_discharge_kw[t]
                + outcome.schedule.p_backup_kw[t];
            let rhs = outcome.problem.demand_kw[t]
                + outcome.schedule.u_charge_kw[t]
                + outcome.schedule.curtail_kw[t];
            assert!((lhs - rhs).abs() < 1e-6);
        }
    }

    #[test]
    fn benchmark_builders_are_consistent() {
        let spec = benchmark_scenario(0);
        spec.validate().unwrap();
        let env = spec.resolve_environment(Path::new(".")).unwrap();
        assert_eq!(env.n_x(), 50);
        assert_eq!(env.n_y(), 50);
        // Two 8×8 squares.
        assert_eq!(env.obstacle_count(), 128);
        assert!(env.is_obstacle(&GridPos::new(20, 20)));
        assert!(env.is_obstacle(&GridPos::new(30, 30)));
        assert!(env.is_valid(&GridPos::new(0, 0)));
        assert!(env.is_valid(&GridPos::new(49, 49)));
        let again = spec.resolve_environment(Path::new(".")).unwrap();
        assert_eq!(env.digest(), again.digest());
        // Different layout seeds produce different fields.
        let other = benchmark_scenario(1)
            .resolve_environment(Path::new("."))
            .unwrap();
        assert_ne!(env.digest(), other.digest());
    }

    #[test]
    fn artifacts_written_and_stable() {
        let dir =
            std::env::temp_dir().join(format!("seaplan-scenario-test-{}", std::process::id()));
        let spec = small_spec(vec![PlannerEntry::named("direct")], vec![0]);
        let run = run_scenario(&spec).unwrap();
        let written = run.write_artifacts(&dir).unwrap();
        assert_eq!(written.len(), 3);
        let csv = fs::read_to_string(dir.join("unit.csv")).unwrap();
        assert_eq!(csv, run.table());
        let svg = fs::read_to_string(dir.join("unit.svg")).unwrap();
        assert_eq!(svg, run.plot());
        let run2 = run_scenario(&spec).unwrap();
        run2.write_artifacts(&dir).unwrap();
        assert_eq!(fs::read_to_string(dir.join("unit.csv")).unwrap(), csv);
        fs::remove_dir_all(&dir).ok();
    }
}
