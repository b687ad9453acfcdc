//! Horizon search recast over move-index sequences: the shared problem
//! definition used by every optimizer, plus exhaustive enumeration (the
//! "standard MPC" reference optimizer).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::aco::{candidate_score, decode_sequence, AcoParams, Candidate, InfeasibleMode};
use crate::environment::GridEnvironment;
use crate::error::{Error, Result};
use crate::grid::{move_length, GridPos, NUM_MOVES};

/// Default cap on the number of enumerated sequences (N_m^H).
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A genotype: H move indices, each in [0, N_m).
pub type MoveSequence = Vec<usize>;

/// Comparable quality of a decoded sequence. Feasible sequences (zero
/// invalid steps) always beat infeasible ones; among infeasible sequences
/// fewer invalid steps wins; ties fall through to the score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fitness {
    /// Unexecuted stages (0 for feasible sequences).
    pub invalid_steps: usize,
    /// J plus the terminal distance estimate; +∞ for infeasible sequences
    /// in `Infinite` mode.
    pub score: f64,
}

impl Fitness {
    pub fn better_than(&self, other: &Fitness) -> bool {
        if self.invalid_steps != other.invalid_steps {
            return self.invalid_steps < other.invalid_steps;
        }
        self.score < other.score
    }
}

/// One horizon-search instance: immutable environment, endpoints, and the
/// cost convention shared by every optimizer.
pub struct HorizonProblem<'a> {
    env: &'a GridEnvironment,
    start: GridPos,
    target: GridPos,
    params: AcoParams,
    mean_cost: f64,
}

impl<'a> HorizonProblem<'a> {
    pub fn new(
        env: &'a GridEnvironment,
        start: GridPos,
        target: GridPos,
        params: AcoParams,
    ) -> Result<Self> {
        params.validate()?;
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
        let mean_cost = env.mean_free_cost();
        Ok(HorizonProblem {
            env,
            start,
            target,
            params,
            mean_cost,
        })
    }

    pub fn env(&self) -> &GridEnvironment {
        self.env
    }

    pub fn start(&self) -> GridPos {
        self.start
    }

    pub fn target(&self) -> GridPos {
        self.target
    }

    pub fn params(&self) -> &AcoParams {
        &self.params
    }

    pub fn horizon(&self) -> usize {
        self.params.horizon
    }

    pub fn mean_cost(&self) -> f64 {
        self.mean_cost
    }

    /// Decodes a genotype into a candidate path (validity + absorbing
    /// target), pricing it with the shared cost convention.
    pub fn decode(&self, moves: &[usize]) -> Candidate {
        decode_sequence(self.env, &self.start, &self.target, moves, &self.params)
    }

    /// Ranking score of a candidate decoded from this problem.
    pub fn score_of(&self, candidate: &Candidate) -> f64 {
        candidate_score(
            self.env,
            self.mean_cost,
            candidate,
            &self.target,
            &self.params,
        )
    }

    /// Full evaluation of a genotype.
    pub fn fitness(&self, moves: &[usize]) -> Fitness {
        let candidate = self.decode(moves);
        Fitness {
            invalid_steps: if candidate.feasible {
                0
            } else {
                self.params.horizon - candidate.moves.len()
            },
            score: self.score_of(&candidate),
        }
    }

    /// Allocation-free evaluation of the sequence encoded by `index`
    /// (big-endian base-N_m, so index order is lexicographic order).
    /// Accumulates stage terms in the same order as [`candidate_cost`], so
    /// the result is bit-identical to decoding.
    fn fitness_by_index(&self, index: u64) -> Fitness {
        let h = self.params.horizon;
        let mut pos = self.start;
        let mut j = 0.0;
        let mut executed = 0usize;
        let mut feasible = true;
        for stage in 0..h {
            if pos == self.target {
                break;
            }
            let mv = ((index >> (3 * (h - 1 - stage))) & 7) as usize;
            let next = pos.step(mv);
            if !self.env.is_valid(&next) {
                feasible = false;
                break;
            }
            let len = if self.params.unit_steps {
                1.0
            } else {
                move_length(mv) * self.env.cell_size()
            };
            j += self.params.weight(stage) * self.env.cost_at(&next) * len;
            pos = next;
            executed += 1;
        }
        let cost = if feasible {
            j
        } else {
            match self.params.infeasible_mode {
                InfeasibleMode::Infinite => f64::INFINITY,
                InfeasibleMode::LambdaPenalty => {
                    let mut c = j;
                    for stage in executed..h {
                        c += self.params.weight(stage) * self.params.lambda;
                    }
                    c
                }
            }
        };
        let score = cost
            + crate::aco::terminal_estimate(
                self.env,
                self.mean_cost,
                &pos,
                &self.target,
                &self.params,
            );
        Fitness {
            invalid_steps: if feasible { 0 } else { h - executed },
            score,
        }
    }

    /// Decodes an enumeration index into its move sequence.
    fn sequence_of_index(&self, index: u64) -> MoveSequence {
        let h = self.params.horizon;
        (0..h)
            .map(|stage| ((index >> (3 * (h - 1 - stage))) & 7) as usize)
            .collect()
    }
}

/// Pads an executed move prefix back to a full-length genotype; the decode
/// rules make the padding inert (ignored after the target or a dead end).
pub fn pad_genotype(moves: &[usize], horizon: usize) -> MoveSequence {
    let mut g = moves.to_vec();
    g.resize(horizon, 0);
    g
}

/// Outcome of any horizon optimizer: the selected genotype, its decoded
/// path, its path cost J, and the ranking score.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizonOutcome {
    pub moves: MoveSequence,
    pub candidate: Candidate,
    pub score: f64,
}

impl HorizonOutcome {
    pub fn from_moves(problem: &HorizonProblem, moves: MoveSequence) -> Self {
        let candidate = problem.decode(&moves);
        let score = problem.score_of(&candidate);
        HorizonOutcome {
            moves,
            candidate,
            score,
        }
    }
}

/// Total key for the enumeration argmin: fitness first, then the index so
/// ties resolve to the lexicographically smallest sequence.
fn better_entry(a: (Fitness, u64), b: (Fitness, u64)) -> (Fitness, u64) {
    if b.0.better_than(&a.0) {
        return b;
    }
    if a.0.better_than(&b.0) {
        return a;
    }
    // Equal fitness (same invalid count; scores compare equal or are both
    // +∞): keep the smaller index.
    if b.1 < a.1 {
        b
    } else {
        a
    }
}

fn exhaustive_impl(problem: &HorizonProblem, cap: u64, parallel: bool) -> Result<HorizonOutcome> {
    let h = problem.horizon();
    let total = (NUM_MOVES as u64)
        .checked_pow(h as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| {
            Error::Budget(format!(
                "exhaustive enumeration needs {NUM_MOVES}^{h} sequence evaluations, above the cap \
                 of {cap}; reduce the horizon"
            ))
        })?;

    let seed_entry = (
        Fitness {
            invalid_steps: usize::MAX,
            score: f64::INFINITY,
        },
        u64::MAX,
    );

    let best = if parallel {
        #[cfg(feature = "parallel")]
        {
            (0..total)
                .into_par_iter()
                .fold(
                    || seed_entry,
                    |acc, i| better_entry(acc, (problem.fitness_by_index(i), i)),
                )
                .reduce(|| seed_entry, better_entry)
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..total).fold(seed_entry, |acc, i| {
                better_entry(acc, (problem.fitness_by_index(i), i))
            })
        }
    } else {
        (0..total).fold(seed_entry, |acc, i| {
            better_entry(acc, (problem.fitness_by_index(i), i))
        })
    };

    Ok(HorizonOutcome::from_moves(
        problem,
        problem.sequence_of_index(best.1),
    ))
}

/// Global optimum over all N_m^H move sequences with a configurable
/// enumeration cap. Ties break to the lexicographically smallest sequence.
pub fn exhaustive_horizon_search_with_cap(
    problem: &HorizonProblem,
    cap: u64,
) -> Result<HorizonOutcome> {
    exhaustive_impl(problem, cap, cfg!(feature = "parallel"))
}

/// Global optimum over all N_m^H move sequences (default cap 10^7). Errors
/// with a budget message when the horizon is too deep to enumerate.
pub fn exhaustive_horizon_search(problem: &HorizonProblem) -> Result<HorizonOutcome> {
    exhaustive_horizon_search_with_cap(problem, DEFAULT_ENUMERATION_CAP)
}

/// Sequential-lane variant of [`exhaustive_horizon_search`]; bit-identical
/// results, kept callable in all builds for lane comparison.
pub fn exhaustive_horizon_search_sequential(problem: &HorizonProblem) -> Result<HorizonOutcome> {
    exhaustive_impl(problem, DEFAULT_ENUMERATION_CAP, false)
}
