//! Alternative horizon optimizers over the shared move-sequence genotype:
//! genetic algorithm, particle swarm, whale optimization, and the WOA–ACO
//! hybrid.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aco::{construct_candidate, pheromone_update, AcoParams, PheromoneMatrix};
use crate::error::{Error, Result};
use crate::grid::NUM_MOVES;
use crate::horizon::{pad_genotype, Fitness, HorizonOutcome, HorizonProblem, MoveSequence};
use crate::rng::{candidate_rng, master_rng, mix_seed};

/// Shared tuning knobs for the population optimizers. Fields irrelevant to
/// a given algorithm are simply ignored by it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MetaheuristicParams {
    /// Individuals per generation (≥ 2).
    pub population: usize,
    /// Generations / iterations after the initial population.
    pub iterations: usize,
    /// GA: probability of one-point crossover.
    pub crossover_rate: f64,
    /// GA: per-gene mutation probability; `None` selects 1/H.
    pub mutation_rate: Option<f64>,
    /// GA: tournament size for parent selection.
    pub tournament: usize,
    /// PSO: inertia weight w.
    pub inertia: f64,
    /// PSO: cognitive pull c1 toward the particle's own best.
    pub cognitive: f64,
    /// PSO: social pull c2 toward the global best.
    pub social: f64,
    /// WOA: logarithmic spiral constant b.
    pub spiral: f64,
    /// Seed for the optimizer's PRNG.
    pub seed: u64,
}

impl Default for MetaheuristicParams {
    fn default() -> Self {
        MetaheuristicParams {
            population: 30,
            iterations: 20,
            crossover_rate: 0.9,
            mutation_rate: None,
            tournament: 3,
            inertia: 0.7,
            cognitive: 1.5,
            social: 1.5,
            spiral: 1.0,
            seed: 0,
        }
    }
}

impl MetaheuristicParams {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(Error::Spec(format!(
                "population must be >= 2, got {}",
                self.population
            )));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::Spec(format!(
                "crossover_rate must lie in [0, 1], got {}",
                self.crossover_rate
            )));
        }
        if let Some(m) = self.mutation_rate {
            if !(0.0..=1.0).contains(&m) {
                return Err(Error::Spec(format!(
                    "mutation_rate must lie in [0, 1], got {m}"
                )));
            }
        }
        if self.tournament == 0 {
            return Err(Error::Spec("tournament size must be >= 1".into()));
        }
        for (name, v) in [
            ("inertia", self.inertia),
            ("cognitive", self.cognitive),
            ("social", self.social),
            ("spiral", self.spiral),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Spec(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Search result plus the best-so-far score after the initial population
/// and after each iteration (non-increasing by construction).
#[derive(Debug, Clone, PartialEq)]
pub struct MetaSearchOutcome {
    pub best: HorizonOutcome,
    pub score_trace: Vec<f64>,
}

/// Hybrid result; also exposes the best score each component contributed,
/// so `best` can be checked against the running minimum of both.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridSearchOutcome {
    pub best: HorizonOutcome,
    pub score_trace: Vec<f64>,
    pub woa_component_best: f64,
    pub aco_component_best: f64,
}

/// Evaluates a population of genotypes; pure, so the parallel lane is
/// bit-identical to the sequential one.
fn evaluate_population(problem: &HorizonProblem, population: &[MoveSequence]) -> Vec<Fitness> {
    #[cfg(feature = "parallel")]
    {
        population.par_iter().map(|g| problem.fitness(g)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        population.iter().map(|g| problem.fitness(g)).collect()
    }
}

/// Index of the best individual; ties keep the lowest index.
fn best_index(fitness: &[Fitness]) -> usize {
    let mut best = 0;
    for i in 1..fitness.len() {
        if fitness[i].better_than(&fitness[best]) {
            best = i;
        }
    }
    best
}

/// Running-best tracker over (fitness, genotype) pairs.
struct BestTracker {
    fitness: Option<Fitness>,
    genotype: MoveSequence,
}

impl BestTracker {
    fn new() -> Self {
        BestTracker {
            fitness: None,
            genotype: Vec::new(),
        }
    }

    fn offer(&mut self, fitness: Fitness, genotype: &[usize]) {
        let take = match &self.fitness {
            None => true,
            Some(current) => fitness.better_than(current),
        };
        if take {
            self.fitness = Some(fitness);
            self.genotype = genotype.to_vec();
        }
    }

    fn score(&self) -> f64 {
        self.fitness.map_or(f64::INFINITY, |f| f.score)
    }
}

fn random_genotype(horizon: usize, rng: &mut impl Rng) -> MoveSequence {
    (0..horizon).map(|_| rng.gen_range(0..NUM_MOVES)).collect()
}

/// Tournament selection: draws `size` contestants with replacement, returns
/// the index of the fittest (first drawn wins ties).
fn tournament_pick(fitness: &[Fitness], size: usize, rng: &mut impl Rng) -> usize {
    let mut winner = rng.gen_range(0..fitness.len());
    for _ in 1..size {
        let challenger = rng.gen_range(0..fitness.len());
        if fitness[challenger].better_than(&fitness[winner]) {
            winner = challenger;
        }
    }
    winner
}

/// Genetic algorithm: tournament selection, one-point crossover, per-gene
/// uniform mutation, elitism of one. Returns the best individual ever
/// evaluated (feasible ones dominate by the fitness ordering).
pub fn ga_horizon_search(
    problem: &HorizonProblem,
    params: &MetaheuristicParams,
) -> Result<MetaSearchOutcome> {
    params.validate()?;
    let h = problem.horizon();
    let mutation_rate = params.mutation_rate.unwrap_or(1.0 / h as f64);
    let mut rng = master_rng(params.seed);

    let mut population: Vec<MoveSequence> = (0..params.population)
        .map(|_| random_genotype(h, &mut rng))
        .collect();
    let mut fitness = evaluate_population(problem, &population);

    let mut best = BestTracker::new();
    for (f, g) in fitness.iter().zip(&population) {
        best.offer(*f, g);
    }
    let mut trace = vec![best.score()];

    for _ in 0..params.iterations {
        let elite = population[best_index(&fitness)].clone();
        let mut next = Vec::with_capacity(params.population);
        next.push(elite);
        while next.len() < params.population {
            let pa = tournament_pick(&fitness, params.tournament, &mut rng);
            let pb = tournament_pick(&fitness, params.tournament, &mut rng);
            let mut child = if h >= 2 && rng.gen::<f64>() < params.crossover_rate {
                let point = rng.gen_range(1..h);
                let mut c = population[pa][..point].to_vec();
                c.extend_from_slice(&population[pb][point..]);
                c
            } else {
                population[pa].clone()
            };
            for gene in &mut child {
                if rng.gen::<f64>() < mutation_rate {
                    *gene = rng.gen_range(0..NUM_MOVES);
                }
            }
            next.push(child);
        }
        population = next;
        fitness = evaluate_population(problem, &population);
        for (f, g) in fitness.iter().zip(&population) {
            best.offer(*f, g);
        }
        trace.push(best.score());
    }

    Ok(MetaSearchOutcome {
        best: HorizonOutcome::from_moves(problem, best.genotype.clone()),
        score_trace: trace,
    })
}

/// Floor-then-clamp decode from continuous genotype space [0, N_m)^H.
pub fn decode_continuous(position: &[f64]) -> MoveSequence {
    position
        .iter()
        .map(|&x| (x.floor() as i64).clamp(0, NUM_MOVES as i64 - 1) as usize)
        .collect()
}

fn clamp_position(position: &mut [f64]) {
    for x in position.iter_mut() {
        *x = x.clamp(0.0, NUM_MOVES as f64);
    }
}

/// Particle swarm: continuous positions with the standard inertia +
/// cognitive + social velocity update, decoded by floor-then-clamp.
pub fn pso_horizon_search(
    problem: &HorizonProblem,
    params: &MetaheuristicParams,
) -> Result<MetaSearchOutcome> {
    params.validate()?;
    let h = problem.horizon();
    let mut rng = master_rng(params.seed);

    let mut positions: Vec<Vec<f64>> = (0..params.population)
        .map(|_| {
            (0..h)
                .map(|_| rng.gen_range(0.0..NUM_MOVES as f64))
                .collect()
        })
        .collect();
    let mut velocities: Vec<Vec<f64>> = vec![vec![0.0; h]; params.population];

    let decoded: Vec<MoveSequence> = positions.iter().map(|p| decode_continuous(p)).collect();
    let mut fitness = evaluate_population(problem, &decoded);

    let mut personal_best = positions.clone();
    let mut personal_fitness = fitness.clone();
    let mut best = BestTracker::new();
    let mut global_best = positions[best_index(&fitness)].clone();
    for (f, g) in fitness.iter().zip(&decoded) {
        best.offer(*f, g);
    }
    let mut trace = vec![best.score()];

    for _ in 0..params.iterations {
        for i in 0..params.population {
            for d in 0..h {
                let r1: f64 = rng.gen();
                let r2: f64 = rng.gen();
                velocities[i][d] = params.inertia * velocities[i][d]
                    + params.cognitive * r1 * (personal_best[i][d] - positions[i][d])
                    + params.social * r2 * (global_best[d] - positions[i][d]);
                positions[i][d] += velocities[i][d];
            }
            clamp_position(&mut positions[i]);
        }
        let decoded: Vec<MoveSequence> = positions.iter().map(|p| decode_continuous(p)).collect();
        fitness = evaluate_population(problem, &decoded);
        for i in 0..params.population {
            if fitness[i].better_than(&personal_fitness[i]) {
                personal_fitness[i] = fitness[i];
                personal_best[i] = positions[i].clone();
            }
            best.offer(fitness[i], &decoded[i]);
        }
        global_best = personal_best[best_index(&personal_fitness)].clone();
        trace.push(best.score());
    }

    Ok(MetaSearchOutcome {
        best: HorizonOutcome::from_moves(problem, best.genotype.clone()),
        score_trace: trace,
    })
}

/// State shared by the plain WOA loop and the hybrid's WOA half.
struct WoaState {
    positions: Vec<Vec<f64>>,
    leader: Vec<f64>,
    leader_fitness: Fitness,
    best: BestTracker,
}

fn woa_init(
    problem: &HorizonProblem,
    params: &MetaheuristicParams,
    rng: &mut ChaCha8Rng,
) -> WoaState {
    let h = problem.horizon();
    let positions: Vec<Vec<f64>> = (0..params.population)
        .map(|_| {
            (0..h)
                .map(|_| rng.gen_range(0.0..NUM_MOVES as f64))
                .collect()
        })
        .collect();
    let decoded: Vec<MoveSequence> = positions.iter().map(|p| decode_continuous(p)).collect();
    let fitness = evaluate_population(problem, &decoded);
    let lead = best_index(&fitness);
    let mut best = BestTracker::new();
    for (f, g) in fitness.iter().zip(&decoded) {
        best.offer(*f, g);
    }
    WoaState {
        leader: positions[lead].clone(),
        leader_fitness: fitness[lead],
        positions,
        best,
    }
}

/// One WOA generation: encircling / exploration / spiral updates around the
/// leader, with `a` supplied by the caller (linear 2 → 0 over the run).
fn woa_step(
    problem: &HorizonProblem,
    params: &MetaheuristicParams,
    state: &mut WoaState,
    a: f64,
    rng: &mut ChaCha8Rng,
) {
    let h = problem.horizon();
    for i in 0..params.population {
        let p: f64 = rng.gen();
        if p < 0.5 {
            for d in 0..h {
                let r1: f64 = rng.gen();
                let r2: f64 = rng.gen();
                let coeff_a = 2.0 * a * r1 - a;
                let coeff_c = 2.0 * r2;
                if coeff_a.abs() < 1.0 {
                    // Encircling: contract toward the leader.
                    let dist = (coeff_c * state.leader[d] - state.positions[i][d]).abs();
                    state.positions[i][d] = state.leader[d] - coeff_a * dist;
                } else {
                    // Exploration: move relative to a random agent.
                    let other = rng.gen_range(0..params.population);
                    let dist = (coeff_c * state.positions[other][d] - state.positions[i][d]).abs();
                    state.positions[i][d] = state.positions[other][d] - coeff_a * dist;
                }
            }
        } else {
            // Bubble-net spiral around the leader.
            let l: f64 = rng.gen_range(-1.0..=1.0);
            let swirl = (params.spiral * l).exp() * (2.0 * std::f64::consts::PI * l).cos();
            for d in 0..h {
                let dist = (state.leader[d] - state.positions[i][d]).abs();
                state.positions[i][d] = dist * swirl + state.leader[d];
            }
        }
        clamp_position(&mut state.positions[i]);
    }

    let decoded: Vec<MoveSequence> = state
        .positions
        .iter()
        .map(|p| decode_continuous(p))
        .collect();
    let fitness = evaluate_population(problem, &decoded);
    for i in 0..params.population {
        if fitness[i].better_than(&state.leader_fitness) {
            state.leader_fitness = fitness[i];
            state.leader = state.positions[i].clone();
        }
        state.best.offer(fitness[i], &decoded[i]);
    }
}

/// Whale optimization: canonical encircling / exploring / spiral moves in
/// continuous genotype space with the same decode as PSO.
pub fn woa_horizon_search(
    problem: &HorizonProblem,
    params: &MetaheuristicParams,
) -> Result<MetaSearchOutcome> {
    params.validate()?;
    let mut rng = master_rng(params.seed);
    let mut state = woa_init(problem, params, &mut rng);
    let mut trace = vec![state.best.score()];
    for t in 0..params.iterations {
        let a = 2.0 * (1.0 - t as f64 / params.iterations as f64);
        woa_step(problem, params, &mut state, a, &mut rng);
        trace.push(state.best.score());
    }
    Ok(MetaSearchOutcome {
        best: HorizonOutcome::from_moves(problem, state.best.genotype.clone()),
        score_trace: trace,
    })
}

/// WOA–ACO hybrid: each cycle runs one WOA generation, deposits the WOA
/// leader's path into a shared pheromone matrix, then runs the configured
/// number of ACO generations against that matrix. The WOA half draws from
/// its own PRNG stream, so zero ACO generations reduce the hybrid to plain
/// WOA exactly.
///
/// Colony sizing (`n_ants`, `generations`, `phi0`, `rho`) comes from
/// `aco_params`; cost conventions always follow the problem definition.
pub fn woa_aco_horizon_search(
    problem: &HorizonProblem,
    params: &MetaheuristicParams,
    aco_params: &AcoParams,
) -> Result<HybridSearchOutcome> {
    params.validate()?;
    let colony = AcoParams {
        n_ants: aco_params.n_ants,
        generations: aco_params.generations,
        phi0: aco_params.phi0,
        rho: aco_params.rho,
        seed: 0,
        ..problem.params().clone()
    };
    colony.validate()?;

    let mut woa_rng = master_rng(params.seed);
    let aco_seed = mix_seed(params.seed, 1);
    let mut state = woa_init(problem, params, &mut woa_rng);

    let mut pheromone = PheromoneMatrix::new(problem.horizon(), colony.phi0);
    let mut aco_best = BestTracker::new();
    let mut trace = vec![state.best.score()];
    let start = problem.start();
    let target = problem.target();

    for t in 0..params.iterations {
        let a = 2.0 * (1.0 - t as f64 / params.iterations as f64);
        woa_step(problem, params, &mut state, a, &mut woa_rng);

        // The WOA leader seeds the pheromone field with a 1/J deposit.
        let leader_candidate = problem.decode(&decode_continuous(&state.leader));
        pheromone = pheromone_update(&pheromone, &[leader_candidate], colony.rho);

        for g in 0..colony.generations {
            let generation_index = (t * colony.generations + g) as u32;
            let candidates: Result<Vec<_>> = (0..colony.n_ants)
                .map(|ant| {
                    let mut rng = candidate_rng(aco_seed, generation_index, ant as u32);
                    construct_candidate(
                        problem.env(),
                        &start,
                        &target,
                        &pheromone,
                        &colony,
                        &mut rng,
                    )
                })
                .collect();
            let candidates = candidates?;
            for candidate in &candidates {
                let fitness = Fitness {
                    invalid_steps: if candidate.feasible {
                        0
                    } else {
                        problem.horizon() - candidate.moves.len()
                    },
                    score: problem.score_of(candidate),
                };
                aco_best.offer(fitness, &pad_genotype(&candidate.moves, problem.horizon()));
            }
            pheromone = pheromone_update(&pheromone, &candidates, colony.rho);
        }

        let overall = state.best.score().min(aco_best.score());
        trace.push(overall);
    }

    // Merge the two running bests; the WOA tracker wins ties for continuity
    // with the pure-WOA reduction.
    let woa_component_best = state.best.score();
    let aco_component_best = aco_best.score();
    let mut overall = state.best;
    if let Some(f) = aco_best.fitness {
        overall.offer(f, &aco_best.genotype);
    }

    Ok(HybridSearchOutcome {
        best: HorizonOutcome::from_moves(problem, overall.genotype.clone()),
        score_trace: trace,
        woa_component_best,
        aco_component_best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::EnergyModelCoefficients;
    use crate::environment::GridEnvironment;
    use crate::environment::{generate_environment, uniform_cost_environment, EnvSpec, FieldSpec};
    use crate::grid::GridPos;
    use crate::horizon::exhaustive_horizon_search;

    /// A small rough-cost environment with a couple of obstacles: hard
    /// enough that the horizon optimum is non-trivial.
    fn toy_env(seed: u64) -> GridEnvironment {
        let spec = EnvSpec {
            n_x: 6,
            n_y: 6,
            cell_size_km: 1.0,
            polar: FieldSpec {
                bumps: 3,
                amplitude: [0.2, 1.5],
                width: [1.0, 2.0],
                base: 0.3,
            },
            wind: FieldSpec {
                bumps: 2,
                amplitude: [1.0, 4.0],
                width: [1.0, 2.5],
                base: 1.0,
            },
            obstacles: vec![],
            seed,
        };
        let coeffs = EnergyModelCoefficients {
            gamma1: 1.0,
            gamma2: 0.1,
            gamma3: 0.002,
            gamma4: 0.4,
        };
        generate_environment(&spec)
            .unwrap()
            .apply_cost_model(&coeffs, 0.0)
            .unwrap()
    }

    fn toy_problem(env: &GridEnvironment, horizon: usize) -> HorizonProblem<'_> {
        HorizonProblem::new(
            env,
            GridPos::new(0, 0),
            GridPos::new(5, 5),
            AcoParams {
                horizon,
                ..AcoParams::default()
            },
        )
        .unwrap()
    }

    fn seeded(seed: u64) -> MetaheuristicParams {
        MetaheuristicParams {
            seed,
            ..MetaheuristicParams::default()
        }
    }

    #[test]
    fn decode_respects_bounds() {
        let decoded = decode_continuous(&[-3.5, 0.0, 0.99, 7.1, 8.0, 42.0, 3.999]);
        assert_eq!(decoded, vec![0, 0, 0, 7, 7, 7, 3]);
        for &m in &decoded {
            assert!(m < NUM_MOVES);
        }
    }

    #[test]
    fn ga_without_variation_does_not_drift() {
        let env = toy_env(5);
        let problem = toy_problem(&env, 2);
        let frozen = MetaheuristicParams {
            crossover_rate: 0.0,
            mutation_rate: Some(0.0),
            ..seeded(12)
        };
        let init_only = MetaheuristicParams {
            iterations: 0,
            ..frozen.clone()
        };
        let full = ga_horizon_search(&problem, &frozen).unwrap();
        let init = ga_horizon_search(&problem, &init_only).unwrap();
        assert_eq!(full.best.score, init.best.score);
    }

    #[test]
    fn ga_matches_exhaustive_on_toy_problems() {
        let mut hits = 0;
        for seed in 0..100 {
            let env = toy_env(seed);
            let problem = toy_problem(&env, 2);
            let optimum = exhaustive_horizon_search(&problem).unwrap();
            let got = ga_horizon_search(&problem, &seeded(seed)).unwrap();
            assert!(
                got.best.score >= optimum.score,
                "seed {seed} beat enumeration"
            );
            if got.best.score == optimum.score {
                hits += 1;
            }
        }
        assert!(
            hits >= 95,
            "GA matched the optimum on only {hits}/100 seeds"
        );
    }

    #[test]
    fn ga_is_deterministic() {
        let env = toy_env(1);
        let problem = toy_problem(&env, 3);
        let a = ga_horizon_search(&problem, &seeded(7)).unwrap();
        let b = ga_horizon_search(&problem, &seeded(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pso_frozen_particles_keep_initial_best() {
        let env = toy_env(9);
        let problem = toy_problem(&env, 2);
        let frozen = MetaheuristicParams {
            inertia: 0.0,
            cognitive: 0.0,
            social: 0.0,
            ..seeded(4)
        };
        let init_only = MetaheuristicParams {
            iterations: 0,
            ..frozen.clone()
        };
        let full = pso_horizon_search(&problem, &frozen).unwrap();
        let init = pso_horizon_search(&problem, &init_only).unwrap();
        assert_eq!(full.best.score, init.best.score);
    }

    #[test]
    fn pso_matches_exhaustive_often() {
        let mut hits = 0;
        for seed in 0..100 {
            let env = toy_env(seed);
            let problem = toy_problem(&env, 2);
            let optimum = exhaustive_horizon_search(&problem).unwrap();
            let got = pso_horizon_search(&problem, &seeded(seed)).unwrap();
            assert!(
                got.best.score >= optimum.score,
                "seed {seed} beat enumeration"
            );
            if got.best.score == optimum.score {
                hits += 1;
            }
        }
        assert!(
            hits >= 90,
            "PSO matched the optimum on only {hits}/100 seeds"
        );
    }

    #[test]
    fn woa_zero_iterations_returns_initial_best() {
        let env = toy_env(3);
        let problem = toy_problem(&env, 3);
        let out = woa_horizon_search(
            &problem,
            &MetaheuristicParams {
                iterations: 0,
                ..seeded(8)
            },
        )
        .unwrap();
        assert_eq!(out.score_trace.len(), 1);
        assert_eq!(out.best.score, out.score_trace[0]);
    }

    #[test]
    fn woa_matches_exhaustive_often() {
        let mut hits = 0;
        for seed in 0..100 {
            let env = toy_env(seed);
            let problem = toy_problem(&env, 2);
            let optimum = exhaustive_horizon_search(&problem).unwrap();
            let got = woa_horizon_search(&problem, &seeded(seed)).unwrap();
            assert!(
                got.best.score >= optimum.score,
                "seed {seed} beat enumeration"
            );
            if got.best.score == optimum.score {
                hits += 1;
            }
        }
        assert!(
            hits >= 85,
            "WOA matched the optimum on only {hits}/100 seeds"
        );
    }

    #[test]
    fn woa_is_deterministic() {
        let env = toy_env(17);
        let problem = toy_problem(&env, 4);
        let a = woa_horizon_search(&problem, &seeded(3)).unwrap();
        let b = woa_horizon_search(&problem, &seeded(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hybrid_without_aco_reduces_to_woa() {
        let env = toy_env(6);
        let problem = toy_problem(&env, 3);
        let params = seeded(42);
        let plain = woa_horizon_search(&problem, &params).unwrap();
        let hybrid = woa_aco_horizon_search(
            &problem,
            &params,
            &AcoParams {
                generations: 0,
                ..AcoParams::default()
            },
        )
        .unwrap();
        assert_eq!(hybrid.best, plain.best);
        assert_eq!(hybrid.score_trace, plain.score_trace);
        assert_eq!(hybrid.aco_component_best, f64::INFINITY);
    }

    #[test]
    fn hybrid_matches_exhaustive_often() {
        let colony = AcoParams {
            n_ants: 10,
            generations: 2,
            ..AcoParams::default()
        };
        let mut hits = 0;
        for seed in 0..100 {
            let env = toy_env(seed);
            let problem = toy_problem(&env, 2);
            let optimum = exhaustive_horizon_search(&problem).unwrap();
            let got = woa_aco_horizon_search(&problem, &seeded(seed), &colony).unwrap();
            assert!(
                got.best.score >= optimum.score,
                "seed {seed} beat enumeration"
            );
            if got.best.score == optimum.score {
                hits += 1;
            }
        }
        assert!(
            hits >= 85,
            "hybrid matched the optimum on only {hits}/100 seeds"
        );
    }

    #[test]
    fn hybrid_best_is_running_minimum_of_components() {
        let colony = AcoParams {
            n_ants: 8,
            generations: 2,
            ..AcoParams::default()
        };
        for seed in 0..20 {
            let env = toy_env(seed);
            let problem = toy_problem(&env, 3);
            let got = woa_aco_horizon_search(&problem, &seeded(seed), &colony).unwrap();
            let floor = got.woa_component_best.min(got.aco_component_best);
            assert!(got.best.score <= floor);
            assert_eq!(got.best.score, floor);
        }
    }

    #[test]
    fn traces_are_non_increasing() {
        let env = toy_env(2);
        let problem = toy_problem(&env, 3);
        let params = seeded(5);
        let colony = AcoParams {
            n_ants: 6,
            generations: 1,
            ..AcoParams::default()
        };
        let traces = vec![
            ga_horizon_search(&problem, &params).unwrap().score_trace,
            pso_horizon_search(&problem, &params).unwrap().score_trace,
            woa_horizon_search(&problem, &params).unwrap().score_trace,
            woa_aco_horizon_search(&problem, &params, &colony)
                .unwrap()
                .score_trace,
        ];
        for trace in traces {
            for pair in trace.windows(2) {
                assert!(pair[1] <= pair[0]);
            }
        }
    }

    #[test]
    fn optimizers_never_beat_enumeration_on_deeper_horizons() {
        let env = toy_env(33);
        let problem = toy_problem(&env, 4);
        let optimum = exhaustive_horizon_search(&problem).unwrap();
        let params = seeded(33);
        let colony = AcoParams {
            n_ants: 10,
            generations: 2,
            ..AcoParams::default()
        };
        assert!(ga_horizon_search(&problem, &params).unwrap().best.score >= optimum.score);
        assert!(pso_horizon_search(&problem, &params).unwrap().best.score >= optimum.score);
        assert!(woa_horizon_search(&problem, &params).unwrap().best.score >= optimum.score);
        assert!(
            woa_aco_horizon_search(&problem, &params, &colony)
                .unwrap()
                .best
                .score
                >= optimum.score
        );
    }

    #[test]
    fn population_of_one_is_rejected() {
        let env = uniform_cost_environment(6, 6, 1.0, 1.0);
        let problem = toy_problem(&env, 2);
        let params = MetaheuristicParams {
            population: 1,
            ..MetaheuristicParams::default()
        };
        assert!(ga_horizon_search(&problem, &params).is_err());
        assert!(pso_horizon_search(&problem, &params).is_err());
        assert!(woa_horizon_search(&problem, &params).is_err());
    }
}
