//! The receding-horizon planning loop around any horizon optimizer, the
//! fixed-geometry baseline paths, and uniform path evaluation.

use serde::{Deserialize, Serialize};

use crate::aco::{aco_horizon_search, AcoParams};
use crate::environment::GridEnvironment;
use crate::error::{Error, Result};
use crate::grid::{move_between, GridPos};
use crate::horizon::{
    exhaustive_horizon_search_with_cap, pad_genotype, HorizonOutcome, HorizonProblem,
    DEFAULT_ENUMERATION_CAP,
};
use crate::metaheuristics::{
    ga_horizon_search, pso_horizon_search, woa_aco_horizon_search, woa_horizon_search,
    MetaheuristicParams,
};
use crate::rng::mix_seed;

/// Outer-loop controls for the receding-horizon planner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MpcParams {
    /// Maximum outer iterations (horizon solves).
    pub max_outer_iters: usize,
    /// Arrival tolerance in cell units (Euclidean); 0 means exact cell match.
    pub arrival_tolerance: f64,
    /// Outer iterations without Chebyshev distance-to-target improvement
    /// before declaring a stall.
    pub stall_window: usize,
    /// Steps of the best candidate executed per outer iteration.
    pub commit_length: usize,
}

impl Default for MpcParams {
    fn default() -> Self {
        MpcParams {
            max_outer_iters: 500,
            arrival_tolerance: 0.0,
            stall_window: 20,
            commit_length: 1,
        }
    }
}

impl MpcParams {
    pub fn validate(&self) -> Result<()> {
        if self.max_outer_iters == 0 {
            return Err(Error::Spec("max_outer_iters must be >= 1".into()));
        }
        if !(self.arrival_tolerance.is_finite() && self.arrival_tolerance >= 0.0) {
            return Err(Error::Spec(format!(
                "arrival_tolerance must be >= 0, got {}",
                self.arrival_tolerance
            )));
        }
        if self.stall_window == 0 {
            return Err(Error::Spec("stall_window must be >= 1".into()));
        }
        if self.commit_length == 0 {
            return Err(Error::Spec("commit_length must be >= 1".into()));
        }
        Ok(())
    }
}

/// Why a plan() run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationStatus {
    Reached,
    MaxIters,
    Stalled,
    Infeasible,
}

impl std::fmt::Display for TerminationStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TerminationStatus::Reached => "reached",
            TerminationStatus::MaxIters => "max_iters",
            TerminationStatus::Stalled => "stalled",
            TerminationStatus::Infeasible => "infeasible",
        };
        f.write_str(s)
    }
}

/// Result of one planning run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanResult {
    pub planner: String,
    pub seed: u64,
    pub path: Vec<GridPos>,
    /// kWh; finite iff the run reached the target collision-free.
    pub total_energy: f64,
    pub per_step_costs: Vec<f64>,
    pub steps: usize,
    pub status: TerminationStatus,
    /// Wall-clock time of the run in ms; excluded from determinism
    /// guarantees and zeroed in reports unless timing is requested.
    pub wall_time_ms: f64,
}

/// A pluggable single-horizon solver for the receding-horizon loop.
pub trait HorizonOptimizer: Sync {
    /// Solves one horizon from `start`; `seed` varies per outer iteration.
    fn solve(
        &self,
        env: &GridEnvironment,
        start: GridPos,
        target: GridPos,
        seed: u64,
    ) -> Result<HorizonOutcome>;
}

/// Ant-colony horizon optimizer.
pub struct AcoOptimizer {
    pub params: AcoParams,
}

impl HorizonOptimizer for AcoOptimizer {
    fn solve(
        &self,
        env: &GridEnvironment,
        start: GridPos,
        target: GridPos,
        seed: u64,
    ) -> Result<HorizonOutcome> {
        let params = AcoParams {
            seed,
            ..self.params.clone()
        };
        let outcome = aco_horizon_search(env, &start, &target, &params)?;
        let moves = pad_genotype(&outcome.best.moves, params.horizon);
        Ok(HorizonOutcome {
            moves,
            candidate: outcome.best,
            score: outcome.score,
        })
    }
}

/// Exhaustive enumeration (the "standard MPC" reference optimizer). The
/// seed is ignored: enumeration is deterministic.
pub struct ExhaustiveOptimizer {
    pub params: AcoParams,
    pub cap: u64,
}

impl ExhaustiveOptimizer {
    pub fn new(params: AcoParams) -> Self {
        ExhaustiveOptimizer {
            params,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl HorizonOptimizer for ExhaustiveOptimizer {
    fn solve(
        &self,
        env: &GridEnvironment,
        start: GridPos,
        target: GridPos,
        _seed: u64,
    ) -> Result<HorizonOutcome> {
        let problem = HorizonProblem::new(env, start, target, self.params.clone())?;
        exhaustive_horizon_search_with_cap(&problem, self.cap)
    }
}

/// Genetic-algorithm horizon optimizer.
pub struct GaOptimizer {
    pub params: AcoParams,
    pub meta: MetaheuristicParams,
}

impl HorizonOptimizer for GaOptimizer {
    fn solve(
        &self,
        env: &GridEnvironment,
        start: GridPos,
        target: GridPos,
        seed: u64,
    ) -> Result<HorizonOutcome> {
        let problem = HorizonProblem::new(env, start, target, self.params.clone())?;
        let meta = MetaheuristicParams {
            seed,
            ..self.meta.clone()
        };
        Ok(ga_horizon_search(&problem, &meta)?.best)
    }
}

/// Particle-swarm horizon optimizer.
pub struct PsoOptimizer {
    pub params: AcoParams,
    pub meta: MetaheuristicParams,
}

impl HorizonOptimizer for PsoOptimizer {
    fn solve(
        &self,
        env: &GridEnvironment,
        start: GridPos,
        target: GridPos,
        seed: u64,
    ) -> Result<HorizonOutcome> {
        let problem = HorizonProblem::new(env, start, target, self.params.clone())?;
        let meta = MetaheuristicParams {
            seed,
            ..self.meta.clone()
        };
        Ok(pso_horizon_search(&problem, &meta)?.best)
    }
}

/// Whale-optimization horizon optimizer.
pub struct WoaOptimizer {
    pub params: AcoParams,
    pub meta: MetaheuristicParams,
}

impl HorizonOptimizer for WoaOptimizer {
    fn solve(
        &self,
        env: &GridEnvironment,
        start: GridPos,
        target: GridPos,
        seed: u64,
    ) -> Result<HorizonOutcome> {
        let problem = HorizonProblem::new(env, start, target, self.params.clone())?;
        let meta = MetaheuristicParams {
            seed,
            ..self.meta.clone()
        };
        Ok(woa_horizon_search(&problem, &meta)?.best)
    }
}

/// WOA–ACO hybrid horizon optimizer.
pub struct WoaAcoOptimizer {
    pub params: AcoParams,
    pub meta: MetaheuristicParams,
    pub colony: AcoParams,
}

impl HorizonOptimizer for WoaAcoOptimizer {
    fn solve(
        &self,
        env: &GridEnvironment,
        start: GridPos,
        target: GridPos,
        seed: u64,
    ) -> Result<HorizonOutcome> {
        let problem = HorizonProblem::new(env, start, target, self.params.clone())?;
        let meta = MetaheuristicParams {
            seed,
            ..self.meta.clone()
        };
        Ok(woa_aco_horizon_search(&problem, &meta, &self.colony)?.best)
    }
}

/// Receding-horizon planning: repeatedly solve a short horizon from the
/// current state, execute the first `commit_length` steps of the winner,
/// and re-plan, until arrival, a stall, an infeasible horizon, or the
/// iteration cap.
pub fn plan(
    env: &GridEnvironment,
    start: GridPos,
    target: GridPos,
    optimizer: &dyn HorizonOptimizer,
    mpc: &MpcParams,
    planner_name: &str,
    seed: u64,
) -> Result<PlanResult> {
    mpc.validate()?;
    if !env.is_valid(&start) {
        return Err(Error::Argument(format!(
            "start {start} is not a valid cell"
        )));
    }
    if !env.is_valid(&target) {
        return Err(Error::Argument(format!(
            "target {target} is not a valid cell"
        )));
    }

    let t0 = std::time::Instant::now();
    let mut path = vec![start];
    let mut per_step_costs: Vec<f64> = Vec::new();
    let mut pos = start;
    let mut best_chebyshev = pos.chebyshev(&target);
    let mut iters_without_improvement = 0usize;
    let mut outer = 0usize;

    let push_step = |path: &mut Vec<GridPos>, costs: &mut Vec<f64>, from: GridPos, to: GridPos| {
        costs.push(step_energy(env, &from, &to));
        path.push(to);
    };

    let status = loop {
        if pos == target {
            break TerminationStatus::Reached;
        }
        // Within tolerance and adjacent: append the target as a real step.
        if pos.euclid(&target) <= mpc.arrival_tolerance && pos.chebyshev(&target) == 1 {
            push_step(&mut path, &mut per_step_costs, pos, target);
            break TerminationStatus::Reached;
        }
        if outer >= mpc.max_outer_iters {
            break TerminationStatus::MaxIters;
        }
        if iters_without_improvement >= mpc.stall_window {
            break TerminationStatus::Stalled;
        }

        let outcome = optimizer.solve(env, pos, target, mix_seed(seed, outer as u64))?;
        if !outcome.candidate.feasible || outcome.candidate.moves.is_empty() {
            break TerminationStatus::Infeasible;
        }
        let commit = mpc.commit_length.min(outcome.candidate.moves.len());
        for step in 0..commit {
            let next = outcome.candidate.positions[step + 1];
            push_step(&mut path, &mut per_step_costs, pos, next);
            pos = next;
            if pos == target {
                break;
            }
        }

        let d = pos.chebyshev(&target);
        if d < best_chebyshev {
            best_chebyshev = d;
            iters_without_improvement = 0;
        } else {
            iters_without_improvement += 1;
        }
        outer += 1;
    };

    let total_energy = if status == TerminationStatus::Reached {
        per_step_costs.iter().sum()
    } else {
        f64::INFINITY
    };
    let steps = path.len() - 1;
    Ok(PlanResult {
        planner: planner_name.to_string(),
        seed,
        path,
        total_energy,
        per_step_costs,
        steps,
        status,
        wall_time_ms: t0.elapsed().as_secs_f64() * 1e3,
    })
}

/// 8-connected line rasterization between two cells (endpoints included):
/// the classic integer error-accumulation walk.
pub fn direct_path(start: GridPos, target: GridPos) -> Vec<GridPos> {
    let mut path = vec![start];
    let dx = (target.col - start.col).abs();
    let dy = -(target.row - start.row).abs();
    let sx = if start.col < target.col { 1 } else { -1 };
    let sy = if start.row < target.row { 1 } else { -1 };
    let mut err = dx + dy;
    let (mut col, mut row) = (start.col, start.row);
    while (col, row) != (target.col, target.row) {
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            col += sx;
        }
        if e2 <= dx {
            err += dx;
            row += sy;
        }
        path.push(GridPos::new(col, row));
    }
    path
}

/// L-shaped route: the full horizontal leg first, then the vertical leg.
pub fn wind_first_path(start: GridPos, target: GridPos) -> Vec<GridPos> {
    let mut path = vec![start];
    let sx = if start.col < target.col { 1 } else { -1 };
    let mut col = start.col;
    while col != target.col {
        col += sx;
        path.push(GridPos::new(col, start.row));
    }
    let sy = if start.row < target.row { 1 } else { -1 };
    let mut row = start.row;
    while row != target.row {
        row += sy;
        path.push(GridPos::new(target.col, row));
    }
    path
}

/// Default sine amplitude for [`combined_5050_path`]: a tenth of the
/// straight-line length, at least one cell.
pub fn default_deviation_amplitude(start: GridPos, target: GridPos) -> f64 {
    (0.1 * start.euclid(&target)).round().max(1.0)
}

/// Straight segment with a perpendicular sinusoidal offset of one full
/// period: sampled at unit arc length, rounded to cells, deduplicated, and
/// stitched back to 8-connectivity with direct-path bridges.
pub fn combined_5050_path(start: GridPos, target: GridPos, amplitude: f64) -> Vec<GridPos> {
    assert!(amplitude >= 0.0, "amplitude must be nonnegative");
    let length = start.euclid(&target);
    if length == 0.0 {
        return vec![start];
    }
    let dir = (
        (target.col - start.col) as f64 / length,
        (target.row - start.row) as f64 / length,
    );
    let perp = (-dir.1, dir.0);

    let n = length.ceil() as usize;
    let mut sampled: Vec<GridPos> = Vec::with_capacity(n + 2);
    for k in 0..=n {
        // Unit-arc-length stations plus the exact endpoint.
        let s = (k as f64).min(length);
        let t = s / length;
        let offset = amplitude * (2.0 * std::f64::consts::PI * t).sin();
        let col = (start.col as f64 + dir.0 * s + perp.0 * offset).round() as i64;
        let row = (start.row as f64 + dir.1 * s + perp.1 * offset).round() as i64;
        let cell = GridPos::new(col, row);
        if sampled.last() != Some(&cell) {
            sampled.push(cell);
        }
    }
    if sampled.last() != Some(&target) {
        sampled.push(target);
    }

    let mut path = vec![sampled[0]];
    for pair in sampled.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.chebyshev(&b) <= 1 {
            path.push(b);
        } else {
            // Bridge the gap, skipping the duplicated first point.
            path.extend(direct_path(a, b).into_iter().skip(1));
        }
    }
    path
}

/// Energy (kWh) of a single step entering `to` from `from`: the cost field at
/// the entered cell times the step length in kilometres. Every consumer of
/// per-step energy goes through this one expression so that incremental sums
/// and whole-path re-evaluations agree bit for bit.
pub fn step_energy(env: &GridEnvironment, from: &GridPos, to: &GridPos) -> f64 {
    env.cost_at(to) * (from.euclid(to) * env.cell_size())
}

/// Energy of a fixed route: ∞ if any position is invalid, otherwise the sum
/// over steps of cost[entered cell] × step length (km).
pub fn evaluate_fixed_path(env: &GridEnvironment, positions: &[GridPos]) -> f64 {
    assert!(
        !positions.is_empty(),
        "path must contain at least one position"
    );
    if positions.iter().any(|p| !env.is_valid(p)) {
        return f64::INFINITY;
    }
    let mut total = 0.0;
    for pair in positions.windows(2) {
        total += step_energy(env, &pair[0], &pair[1]);
    }
    total
}

/// Wraps a fixed geometric route in a PlanResult: reached if collision-free
/// (the geometry always ends at the target), infeasible otherwise.
pub fn evaluate_baseline(
    env: &GridEnvironment,
    planner_name: &str,
    path: Vec<GridPos>,
    seed: u64,
) -> PlanResult {
    let total_energy = evaluate_fixed_path(env, &path);
    let (status, per_step_costs) = if total_energy.is_finite() {
        let costs = path
            .windows(2)
            .map(|p| step_energy(env, &p[0], &p[1]))
            .collect();
        (TerminationStatus::Reached, costs)
    } else {
        (TerminationStatus::Infeasible, Vec::new())
    };
    let steps = path.len() - 1;
    PlanResult {
        planner: planner_name.to_string(),
        seed,
        path,
        total_energy,
        per_step_costs,
        steps,
        status,
        wall_time_ms: 0.0,
    }
}

/// Renders a path as `col,row` lines.
pub fn path_to_csv(path: &[GridPos]) -> String {
    let mut out = String::from("col,row\n");
    for p in path {
        out.push_str(&format!("{},{}\n", p.col, p.row));
    }
    out
}

/// Parses the `col,row` path format (header line optional).
pub fn path_from_csv(text: &str) -> Result<Vec<GridPos>> {
    let mut path = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line == "col,row" {
            continue;
        }
        let (c, r) = line.split_once(',').ok_or_else(|| {
            Error::Parse(format!(
                "line {}: expected `col,row`, got {line:?}",
                lineno + 1
            ))
        })?;
        let col = c.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "line {}: column index {c:?} is not an integer",
                lineno + 1
            ))
        })?;
        let row = r.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "line {}: row index {r:?} is not an integer",
                lineno + 1
            ))
        })?;
        path.push(GridPos::new(col, row));
    }
    if path.is_empty() {
        return Err(Error::Parse("path file contains no positions".into()));
    }
    Ok(path)
}

/// Consecutive path points must be 8-adjacent (used by tests and the
/// harness sanity checks).
pub fn is_eight_connected(path: &[GridPos]) -> bool {
    path.windows(2).all(|p| {
        let same = p[0] == p[1];
        !same && move_between(&p[0], &p[1]).is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::{uniform_cost_environment, with_obstacles};
    use crate::grid::geodesic_length;
    use crate::rng::master_rng;
    use rand::Rng;

    fn exhaustive(horizon: usize) -> ExhaustiveOptimizer {
        ExhaustiveOptimizer::new(AcoParams {
            horizon,
            ..AcoParams::default()
        })
    }

    #[test]
    fn start_equals_target() {
        let env = uniform_cost_environment(4, 4, 1.0, 2.0);
        let result = plan(
            &env,
            GridPos::new(2, 2),
            GridPos::new(2, 2),
            &exhaustive(3),
            &MpcParams::default(),
            "exhaustive",
            0,
        )
        .unwrap();
        assert_eq!(result.path, vec![GridPos::new(2, 2)]);
        assert_eq!(result.total_energy, 0.0);
        assert_eq!(result.status, TerminationStatus::Reached);
        assert_eq!(result.steps, 0);
    }

    #[test]
    fn uniform_grid_diagonal_route_with_aco() {
        // Generous budget on an open uniform-cost grid: the planner should
        // commit the pure diagonal, matching the full-path optimum.
        let c = 1.6;
        let env = uniform_cost_environment(6, 6, 1.0, c);
        let optimizer = AcoOptimizer {
            params: AcoParams {
                n_ants: 40,
                generations: 30,
                ..AcoParams::default()
            },
        };
        let result = plan(
            &env,
            GridPos::new(0, 0),
            GridPos::new(5, 5),
            &optimizer,
            &MpcParams::default(),
            "aco",
            7,
        )
        .unwrap();
        assert_eq!(result.status, TerminationStatus::Reached);
        assert_eq!(result.steps, 5);
        let expected = 5.0 * c * std::f64::consts::SQRT_2;
        assert!((result.total_energy - expected).abs() < 1e-9);

        // Full-path oracle: exhaustive MPC on the same instance.
        let exh = plan(
            &env,
            GridPos::new(0, 0),
            GridPos::new(5, 5),
            &exhaustive(5),
            &MpcParams::default(),
            "exhaustive",
            0,
        )
        .unwrap();
        assert!((exh.total_energy - expected).abs() < 1e-9);
        assert_eq!(result.total_energy, exh.total_energy);
    }

    #[test]
    fn enclosed_target_stalls_with_infinite_energy() {
        let env = with_obstacles(
            &uniform_cost_environment(8, 8, 1.0, 1.0),
            &[
                (5, 4),
                (6, 4),
                (7, 4),
                (5, 5),
                (7, 5),
                (5, 6),
                (6, 6),
                (7, 6),
            ],
        );
        // Target (6,5) is walled in; keep the run short.
        let mpc = MpcParams {
            max_outer_iters: 60,
            ..MpcParams::default()
        };
        let result = plan(
            &env,
            GridPos::new(0, 0),
            GridPos::new(6, 5),
            &exhaustive(3),
            &mpc,
            "exhaustive",
            0,
        )
        .unwrap();
        assert!(matches!(
            result.status,
            TerminationStatus::Stalled | TerminationStatus::MaxIters
        ));
        assert_eq!(result.total_energy, f64::INFINITY);
    }

    #[test]
    fn plan_energy_matches_independent_reevaluation() {
        let env = with_obstacles(&uniform_cost_environment(9, 9, 0.7, 1.9), &[(4, 4), (4, 5)]);
        let result = plan(
            &env,
            GridPos::new(0, 0),
            GridPos::new(8, 8),
            &exhaustive(4),
            &MpcParams::default(),
            "exhaustive",
            3,
        )
        .unwrap();
        assert_eq!(result.status, TerminationStatus::Reached);
        assert!(is_eight_connected(&result.path));
        assert!(result.path.iter().all(|p| env.is_valid(p)));
        let reeval = evaluate_fixed_path(&env, &result.path);
        assert_eq!(result.total_energy, reeval);
        let sum: f64 = result.per_step_costs.iter().sum();
        assert_eq!(result.total_energy, sum);
    }

    #[test]
    fn exhaustive_mpc_achieves_geodesic_on_uniform_maps() {
        let c = 1.7;
        let cell = 0.5;
        let env = uniform_cost_environment(12, 12, cell, c);
        let mut rng = master_rng(404);
        for _ in 0..5 {
            let start = GridPos::new(rng.gen_range(0..12), rng.gen_range(0..12));
            let target = GridPos::new(rng.gen_range(0..12), rng.gen_range(0..12));
            let result = plan(
                &env,
                start,
                target,
                &exhaustive(4),
                &MpcParams::default(),
                "exhaustive",
                0,
            )
            .unwrap();
            assert_eq!(result.status, TerminationStatus::Reached);
            let expected = geodesic_length(&start, &target) * c * cell;
            assert!(
                (result.total_energy - expected).abs() < 1e-9,
                "{start}→{target}: {} vs {expected}",
                result.total_energy
            );
        }
    }

    #[test]
    fn direct_path_examples() {
        let diag: Vec<GridPos> = direct_path(GridPos::new(0, 0), GridPos::new(3, 3));
        assert_eq!(
            diag,
            vec![
                GridPos::new(0, 0),
                GridPos::new(1, 1),
                GridPos::new(2, 2),
                GridPos::new(3, 3)
            ]
        );
        let vertical = direct_path(GridPos::new(0, 0), GridPos::new(0, 4));
        assert_eq!(vertical.len(), 5);
        for (i, p) in vertical.iter().enumerate() {
            assert_eq!(*p, GridPos::new(0, i as i64));
        }
    }

    #[test]
    fn direct_path_matches_rounding_rasterizer() {
        // Independent oracle: parametric sampling with nearest-cell rounding
        // at the dominant-axis resolution. Exactly-half samples are rounding
        // ties where either neighbor is a correct rasterization, so those
        // coordinates only need to bracket the ideal value.
        let cases = [
            ((0, 0), (2, 5)),
            ((0, 0), (5, 2)),
            ((3, 7), (-2, -1)),
            ((0, 0), (7, 7)),
            ((5, 5), (5, 1)),
            ((-4, 2), (9, -3)),
        ];
        for ((c0, r0), (c1, r1)) in cases {
            let start = GridPos::new(c0, r0);
            let target = GridPos::new(c1, r1);
            let got = direct_path(start, target);
            let n = start.chebyshev(&target).max(1);
            assert_eq!(got.len() as i64, n + 1, "{start}→{target}");
            assert_eq!(*got.first().unwrap(), start);
            assert_eq!(*got.last().unwrap(), target);
            assert!(is_eight_connected(&got) || got.len() == 1);
            let check_axis = |ideal: f64, actual: i64| {
                if (ideal - ideal.floor() - 0.5).abs() < 1e-9 {
                    actual == ideal.floor() as i64 || actual == ideal.ceil() as i64
                } else {
                    actual == ideal.round() as i64
                }
            };
            for (k, p) in got.iter().enumerate() {
                let t = k as f64 / n as f64;
                let ic = c0 as f64 + t * (c1 - c0) as f64;
                let ir = r0 as f64 + t * (r1 - r0) as f64;
                assert!(
                    check_axis(ic, p.col) && check_axis(ir, p.row),
                    "{start}→{target} step {k}: got {p}, ideal ({ic}, {ir})"
                );
            }
        }
    }

    #[test]
    fn wind_first_examples() {
        let path = wind_first_path(GridPos::new(0, 0), GridPos::new(3, 2));
        assert_eq!(
            path[1..],
            [
                GridPos::new(1, 0),
                GridPos::new(2, 0),
                GridPos::new(3, 0),
                GridPos::new(3, 1),
                GridPos::new(3, 2)
            ]
        );
        assert_eq!(
            wind_first_path(GridPos::new(2, 4), GridPos::new(6, 4)),
            direct_path(GridPos::new(2, 4), GridPos::new(6, 4))
        );
        let vertical = wind_first_path(GridPos::new(3, 1), GridPos::new(3, 5));
        assert_eq!(vertical.len(), 5);
        assert!(vertical.iter().all(|p| p.col == 3));
    }

    #[test]
    fn fifty_fifty_zero_amplitude_is_direct() {
        let start = GridPos::new(1, 1);
        let target = GridPos::new(9, 6);
        assert_eq!(
            combined_5050_path(start, target, 0.0),
            direct_path(start, target)
        );
    }

    #[test]
    fn fifty_fifty_endpoints_are_exact() {
        let start = GridPos::new(0, 3);
        let target = GridPos::new(12, 8);
        let path = combined_5050_path(start, target, 3.0);
        assert_eq!(*path.first().unwrap(), start);
        assert_eq!(*path.last().unwrap(), target);
        assert!(is_eight_connected(&path));
    }

    #[test]
    fn fifty_fifty_amplitude_two_deviates_two_rows() {
        let path = combined_5050_path(GridPos::new(0, 0), GridPos::new(10, 0), 2.0);
        let max_row = path.iter().map(|p| p.row).max().unwrap();
        let min_row = path.iter().map(|p| p.row).min().unwrap();
        assert_eq!(max_row.max(-min_row), 2);
        assert!(is_eight_connected(&path));
    }

    #[test]
    fn fixed_path_evaluation() {
        let env = with_obstacles(&uniform_cost_environment(6, 6, 1.0, 2.0), &[(3, 0)]);
        let blocked = vec![GridPos::new(2, 0), GridPos::new(3, 0), GridPos::new(4, 0)];
        assert_eq!(evaluate_fixed_path(&env, &blocked), f64::INFINITY);
        let free = vec![
            GridPos::new(0, 2),
            GridPos::new(1, 2),
            GridPos::new(2, 2),
            GridPos::new(3, 2),
        ];
        assert!((evaluate_fixed_path(&env, &free) - 6.0).abs() < 1e-12);
        assert_eq!(evaluate_fixed_path(&env, &[GridPos::new(1, 1)]), 0.0);
    }

    #[test]
    fn baseline_wrapper_statuses() {
        let env = with_obstacles(&uniform_cost_environment(6, 6, 1.0, 1.0), &[(3, 3)]);
        let blocked = evaluate_baseline(
            &env,
            "direct",
            direct_path(GridPos::new(0, 0), GridPos::new(5, 5)),
            0,
        );
        assert_eq!(blocked.status, TerminationStatus::Infeasible);
        assert_eq!(blocked.total_energy, f64::INFINITY);
        let open = evaluate_baseline(
            &env,
            "wind-first",
            wind_first_path(GridPos::new(0, 0), GridPos::new(5, 5)),
            0,
        );
        assert_eq!(open.status, TerminationStatus::Reached);
        let sum: f64 = open.per_step_costs.iter().sum();
        assert_eq!(open.total_energy, sum);
    }

    #[test]
    fn path_csv_round_trip() {
        let path = vec![GridPos::new(0, 0), GridPos::new(1, 1), GridPos::new(2, 1)];
        let text = path_to_csv(&path);
        assert_eq!(path_from_csv(&text).unwrap(), path);
        assert!(path_from_csv("1,2\nx,4\n").is_err());
        assert!(path_from_csv("").is_err());
    }

    #[test]
    fn invalid_endpoints_are_argument_errors() {
        let env = with_obstacles(&uniform_cost_environment(5, 5, 1.0, 1.0), &[(4, 4)]);
        let err = plan(
            &env,
            GridPos::new(0, 0),
            GridPos::new(4, 4),
            &exhaustive(2),
            &MpcParams::default(),
            "exhaustive",
            0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }
}
