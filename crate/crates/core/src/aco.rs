//! Single-horizon ant colony search: stochastic candidate construction,
//! feasibility and cost evaluation, and pheromone dynamics.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::environment::GridEnvironment;
use crate::error::{Error, Result};
use crate::grid::{geodesic_length, move_length, GridPos, NUM_MOVES};
use crate::rng::candidate_rng;

/// Costs below this are clamped before taking the 1/J pheromone deposit, so
/// a zero-cost candidate cannot inject an infinite deposit.
const MIN_DEPOSIT_COST: f64 = 1e-12;

/// How infeasible candidates are priced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfeasibleMode {
    /// Cost is +∞; the search argmin can never pick an infeasible candidate
    /// over a feasible one.
    Infinite,
    /// Each unexecuted stage contributes the finite penalty λ instead.
    LambdaPenalty,
}

/// Tuning parameters for the ant-colony horizon search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AcoParams {
    /// Ants per generation (N_a).
    pub n_ants: usize,
    /// Pheromone generations per horizon solve.
    pub generations: usize,
    /// Lookahead depth H in steps.
    pub horizon: usize,
    /// Initial pheromone level, > 0.
    pub phi0: f64,
    /// Evaporation rate in (0, 1).
    pub rho: f64,
    /// Heuristic regularizer, > 0 (prevents division by zero at the target).
    pub epsilon: f64,
    /// Stage penalty used in `LambdaPenalty` mode.
    pub lambda: f64,
    /// Stage weights; `None` means uniform 1.0, otherwise length must equal
    /// `horizon` with positive entries.
    pub omega: Option<Vec<f64>>,
    /// Infeasible-candidate pricing mode.
    pub infeasible_mode: InfeasibleMode,
    /// When true, every step counts length 1 (no √2 diagonal factor, no
    /// cell-size scaling): the raw stage-cost convention.
    pub unit_steps: bool,
    /// Weight on the distance-to-target estimate added to J when ranking
    /// candidates. 0 disables the lookahead bias entirely.
    pub terminal_factor: f64,
    /// Seed for the search's PRNG streams.
    pub seed: u64,
}

impl Default for AcoParams {
    fn default() -> Self {
        AcoParams {
            n_ants: 30,
            generations: 20,
            horizon: 5,
            phi0: 1.0,
            rho: 0.3,
            epsilon: 0.1,
            lambda: 1e6,
            omega: None,
            infeasible_mode: InfeasibleMode::Infinite,
            unit_steps: false,
            terminal_factor: 1.0,
            seed: 0,
        }
    }
}

impl AcoParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_ants == 0 {
            return Err(Error::Spec("n_ants must be >= 1".into()));
        }
        if self.horizon == 0 {
            return Err(Error::Spec("horizon must be >= 1".into()));
        }
        if !(self.phi0.is_finite() && self.phi0 > 0.0) {
            return Err(Error::Spec(format!("phi0 must be > 0, got {}", self.phi0)));
        }
        if !(self.rho.is_finite() && 0.0 < self.rho && self.rho < 1.0) {
            return Err(Error::Spec(format!(
                "rho must lie in (0, 1), got {}",
                self.rho
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::Spec(format!(
                "epsilon must be > 0, got {}",
                self.epsilon
            )));
        }
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(Error::Spec(format!(
                "lambda must be > 0, got {}",
                self.lambda
            )));
        }
        if !(self.terminal_factor.is_finite() && self.terminal_factor >= 0.0) {
            return Err(Error::Spec(format!(
                "terminal_factor must be >= 0, got {}",
                self.terminal_factor
            )));
        }
        if let Some(w) = &self.omega {
            if w.len() != self.horizon {
                return Err(Error::Spec(format!(
                    "omega has {} entries, expected horizon = {}",
                    w.len(),
                    self.horizon
                )));
            }
            if w.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
                return Err(Error::Spec("omega entries must be positive".into()));
            }
        }
        Ok(())
    }

    /// Stage weight ω_i (uniform 1.0 when unset).
    pub fn weight(&self, stage: usize) -> f64 {
        self.omega.as_ref().map_or(1.0, |w| w[stage])
    }
}

/// H×N_m pheromone matrix; every entry stays positive under evaporation
/// plus nonnegative deposits.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneMatrix {
    horizon: usize,
    values: Vec<f64>,
}

impl PheromoneMatrix {
    pub fn new(horizon: usize, phi0: f64) -> Self {
        assert!(phi0 > 0.0, "initial pheromone must be positive");
        PheromoneMatrix {
            horizon,
            values: vec![phi0; horizon * NUM_MOVES],
        }
    }

    /// Builds a matrix from row-major (stage-major) entries; every entry
    /// must be positive and the slice length must be `horizon × N_m`.
    pub fn from_values(horizon: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), horizon * NUM_MOVES, "entry count mismatch");
        assert!(
            values.iter().all(|v| *v > 0.0),
            "pheromone entries must be positive"
        );
        PheromoneMatrix { horizon, values }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn get(&self, stage: usize, mv: usize) -> f64 {
        self.values[stage * NUM_MOVES + mv]
    }

    pub fn row(&self, stage: usize) -> &[f64] {
        &self.values[stage * NUM_MOVES..(stage + 1) * NUM_MOVES]
    }

    pub fn min_entry(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_entry(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// One constructed (or decoded) horizon path. `positions[0]` is the current
/// state; `moves` holds the executed move indices. Construction stops early
/// when the target is reached (the target absorbs) or on a dead end.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub positions: Vec<GridPos>,
    pub moves: Vec<usize>,
    pub feasible: bool,
    /// Path cost J; +∞ iff infeasible in `Infinite` mode.
    pub cost: f64,
}

impl Candidate {
    /// Dense H×N_m incidence matrix: entry (h, m) is 1 iff stage h executed
    /// move m.
    pub fn incidence(&self, horizon: usize) -> Vec<[f64; NUM_MOVES]> {
        let mut rows = vec![[0.0; NUM_MOVES]; horizon];
        for (h, &m) in self.moves.iter().enumerate() {
            rows[h][m] = 1.0;
        }
        rows
    }

    /// Final position of the executed prefix.
    pub fn end(&self) -> GridPos {
        *self
            .positions
            .last()
            .expect("candidate has at least the start position")
    }
}

/// Greedy desirability of move `m` from `pos`: inverse distance from the
/// successor cell to the target, regularized by ε.
pub fn heuristic(pos: &GridPos, mv: usize, target: &GridPos, epsilon: f64) -> f64 {
    1.0 / (pos.step(mv).euclid(target) + epsilon)
}

/// Selection probabilities p_m = φ_m·η_m / Σ_{j valid} φ_j·η_j over the
/// valid moves; invalid moves get exactly 0. Returns `None` when no move is
/// valid (a dead end — the caller marks the candidate infeasible).
pub fn move_probabilities(
    pheromones: &[f64],
    heuristics: &[f64],
    valid: &[bool],
) -> Option<Vec<f64>> {
    assert_eq!(pheromones.len(), heuristics.len());
    assert_eq!(pheromones.len(), valid.len());
    let mut weights = vec![0.0; pheromones.len()];
    let mut total = 0.0;
    for m in 0..pheromones.len() {
        if valid[m] {
            weights[m] = pheromones[m] * heuristics[m];
            total += weights[m];
        }
    }
    if total <= 0.0 {
        return None;
    }
    for w in &mut weights {
        *w /= total;
    }
    Some(weights)
}

/// Roulette-wheel selection over a probability vector.
fn sample_index(probabilities: &[f64], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.gen();
    let mut cum = 0.0;
    let mut last_positive = 0;
    for (m, &p) in probabilities.iter().enumerate() {
        if p > 0.0 {
            last_positive = m;
            cum += p;
            if u < cum {
                return m;
            }
        }
    }
    // Rounding can leave cum marginally below 1; fall back to the last
    // selectable move.
    last_positive
}

/// Path cost J of a candidate: Σ ω_i · cost[entered cell] · step length,
/// where step length is cell_size·(1 axial, √2 diagonal), or exactly 1 in
/// `unit_steps` mode. Infeasible candidates price per `infeasible_mode`.
pub fn candidate_cost(env: &GridEnvironment, candidate: &Candidate, params: &AcoParams) -> f64 {
    let mut total = 0.0;
    for (i, &mv) in candidate.moves.iter().enumerate() {
        let entered = candidate.positions[i + 1];
        let len = if params.unit_steps {
            1.0
        } else {
            move_length(mv) * env.cell_size()
        };
        total += params.weight(i) * env.cost_at(&entered) * len;
    }
    if candidate.feasible {
        total
    } else {
        match params.infeasible_mode {
            InfeasibleMode::Infinite => f64::INFINITY,
            InfeasibleMode::LambdaPenalty => {
                for stage in candidate.moves.len()..params.horizon {
                    total += params.weight(stage) * params.lambda;
                }
                total
            }
        }
    }
}

/// Estimated cost to finish from `pos`: mean free-cell cost × remaining
/// 8-connected geodesic length, scaled by the configured factor. Added to J
/// when ranking candidates so short-horizon searches still pull toward the
/// target; exact on uniform maps.
pub fn terminal_estimate(
    env: &GridEnvironment,
    mean_free_cost: f64,
    pos: &GridPos,
    target: &GridPos,
    params: &AcoParams,
) -> f64 {
    if params.terminal_factor == 0.0 {
        return 0.0;
    }
    let unit = if params.unit_steps {
        1.0
    } else {
        env.cell_size()
    };
    params.terminal_factor * mean_free_cost * geodesic_length(pos, target) * unit
}

/// Ranking value for a candidate: J plus the terminal estimate at its end
/// position.
pub fn candidate_score(
    env: &GridEnvironment,
    mean_free_cost: f64,
    candidate: &Candidate,
    target: &GridPos,
    params: &AcoParams,
) -> f64 {
    candidate.cost + terminal_estimate(env, mean_free_cost, &candidate.end(), target, params)
}

/// Replays an explicit move-index sequence into a candidate, applying the
/// same validity and absorbing-target rules as stochastic construction.
/// Moves after reaching the target are ignored; the first invalid successor
/// makes the candidate infeasible.
pub fn decode_sequence(
    env: &GridEnvironment,
    start: &GridPos,
    target: &GridPos,
    moves: &[usize],
    params: &AcoParams,
) -> Candidate {
    let mut positions = vec![*start];
    let mut executed = Vec::with_capacity(moves.len());
    let mut feasible = true;
    let mut pos = *start;
    for &mv in moves {
        if pos == *target {
            break;
        }
        let next = pos.step(mv);
        if !env.is_valid(&next) {
            feasible = false;
            break;
        }
        positions.push(next);
        executed.push(mv);
        pos = next;
    }
    let mut candidate = Candidate {
        positions,
        moves: executed,
        feasible,
        cost: 0.0,
    };
    candidate.cost = candidate_cost(env, &candidate, params);
    candidate
}

/// Builds one candidate by sampling H moves from the pheromone/heuristic
/// distribution, restricted to valid successors. Stops early at the target;
/// a dead end (no valid successor) yields an infeasible candidate.
pub fn construct_candidate(
    env: &GridEnvironment,
    start: &GridPos,
    target: &GridPos,
    pheromone: &PheromoneMatrix,
    params: &AcoParams,
    rng: &mut impl Rng,
) -> Result<Candidate> {
    if !env.is_valid(start) {
        return Err(Error::Argument(format!(
            "start {start} is not a valid cell"
        )));
    }
    let mut positions = vec![*start];
    let mut moves = Vec::with_capacity(params.horizon);
    let mut feasible = true;
    let mut pos = *start;
    for stage in 0..params.horizon {
        if pos == *target {
            break;
        }
        let mut heuristics = [0.0; NUM_MOVES];
        let mut valid = [false; NUM_MOVES];
        for m in 0..NUM_MOVES {
            valid[m] = env.is_valid(&pos.step(m));
            heuristics[m] = heuristic(&pos, m, target, params.epsilon);
        }
        match move_probabilities(pheromone.row(stage), &heuristics, &valid) {
            None => {
                feasible = false;
                break;
            }
            Some(probabilities) => {
                let m = sample_index(&probabilities, rng);
                pos = pos.step(m);
                positions.push(pos);
                moves.push(m);
            }
        }
    }
    let mut candidate = Candidate {
        positions,
        moves,
        feasible,
        cost: 0.0,
    };
    candidate.cost = candidate_cost(env, &candidate, params);
    Ok(candidate)
}

/// Evaporation plus deposits: φ' = (1−ρ)·φ + Σ_a I^(a)/J^(a), with 1/∞ = 0
/// for infeasible candidates. Implemented by walking each candidate's
/// executed moves (the incidence matrices are one-hot rows).
pub fn pheromone_update(
    pheromone: &PheromoneMatrix,
    candidates: &[Candidate],
    rho: f64,
) -> PheromoneMatrix {
    assert!(
        0.0 < rho && rho < 1.0,
        "evaporation rate must lie in (0, 1)"
    );
    let mut next = pheromone.clone();
    for v in &mut next.values {
        *v *= 1.0 - rho;
    }
    for candidate in candidates {
        if !candidate.cost.is_finite() {
            continue;
        }
        let deposit = 1.0 / candidate.cost.max(MIN_DEPOSIT_COST);
        for (h, &m) in candidate.moves.iter().enumerate() {
            next.values[h * NUM_MOVES + m] += deposit;
        }
    }
    next
}

/// Result of a horizon search: the best candidate by score, its score, and
/// the per-generation best-so-far trace.
#[derive(Debug, Clone, PartialEq)]
pub struct AcoSearchOutcome {
    pub best: Candidate,
    pub score: f64,
    pub score_trace: Vec<f64>,
}

fn build_generation_seq(
    env: &GridEnvironment,
    start: &GridPos,
    target: &GridPos,
    pheromone: &PheromoneMatrix,
    params: &AcoParams,
    generation: u32,
) -> Result<Vec<Candidate>> {
    (0..params.n_ants)
        .map(|ant| {
            let mut rng = candidate_rng(params.seed, generation, ant as u32);
            construct_candidate(env, start, target, pheromone, params, &mut rng)
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn build_generation_par(
    env: &GridEnvironment,
    start: &GridPos,
    target: &GridPos,
    pheromone: &PheromoneMatrix,
    params: &AcoParams,
    generation: u32,
) -> Result<Vec<Candidate>> {
    (0..params.n_ants)
        .into_par_iter()
        .map(|ant| {
            let mut rng = candidate_rng(params.seed, generation, ant as u32);
            construct_candidate(env, start, target, pheromone, params, &mut rng)
        })
        .collect()
}

fn search_impl(
    env: &GridEnvironment,
    start: &GridPos,
    target: &GridPos,
    params: &AcoParams,
    parallel: bool,
) -> Result<AcoSearchOutcome> {
    params.validate()?;
    if !env.is_valid(start) {
        return Err(Error::Argument(format!(
            "start {start} is not a valid cell"
        )));
    }
    let mean_cost = env.mean_free_cost();
    let mut pheromone = PheromoneMatrix::new(params.horizon, params.phi0);
    let mut best: Option<(f64, Candidate)> = None;
    let mut score_trace = Vec::with_capacity(params.generations);

    for generation in 0..params.generations {
        let candidates = if parallel {
            #[cfg(feature = "parallel")]
            {
                build_generation_par(env, start, target, &pheromone, params, generation as u32)?
            }
            #[cfg(not(feature = "parallel"))]
            {
                build_generation_seq(env, start, target, &pheromone, params, generation as u32)?
            }
        } else {
            build_generation_seq(env, start, target, &pheromone, params, generation as u32)?
        };

        // Serial reduction in ant order keeps the outcome identical across
        // the parallel and sequential lanes.
        for candidate in &candidates {
            let score = candidate_score(env, mean_cost, candidate, target, params);
            let better = match &best {
                None => true,
                Some((best_score, _)) => score < *best_score,
            };
            if better {
                best = Some((score, candidate.clone()));
            }
        }
        pheromone = pheromone_update(&pheromone, &candidates, params.rho);
        score_trace.push(best.as_ref().map_or(f64::INFINITY, |(s, _)| *s));
    }

    let (score, best) = best.expect("at least one generation of at least one ant");
    Ok(AcoSearchOutcome {
        best,
        score,
        score_trace,
    })
}

/// Runs the full ant-colony horizon search: `generations` waves of `n_ants`
/// candidates with pheromone updates in between; returns the best candidate
/// seen anywhere (by score). If every candidate was infeasible, the returned
/// candidate is the infeasible marker (feasible = false, cost per mode).
///
/// Uses the parallel lane when the `parallel` feature is enabled.
pub fn aco_horizon_search(
    env: &GridEnvironment,
    start: &GridPos,
    target: &GridPos,
    params: &AcoParams,
) -> Result<AcoSearchOutcome> {
    search_impl(env, start, target, params, cfg!(feature = "parallel"))
}

/// Sequential-lane variant of [`aco_horizon_search`]; produces bit-identical
/// results. Kept callable in all builds so the two lanes can be compared.
pub fn aco_horizon_search_sequential(
    env: &GridEnvironment,
    start: &GridPos,
    target: &GridPos,
    params: &AcoParams,
) -> Result<AcoSearchOutcome> {
    search_impl(env, start, target, params, false)
}
