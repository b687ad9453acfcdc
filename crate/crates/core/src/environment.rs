//! Discretized sea-surface environment: polar/wind fields, obstacle mask,
//! and the derived per-cell energy-cost map.

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::energy::EnergyModelCoefficients;
use crate::error::{Error, Result};
use crate::grid::GridPos;
use crate::rng::master_rng;

/// Immutable grid world. All four matrices are `n_y` rows by `n_x` columns,
/// stored row-major with row 0 at the top.
#[derive(Debug, Clone, PartialEq)]
pub struct GridEnvironment {
    n_x: usize,
    n_y: usize,
    cell_size: f64,
    polar: Vec<f64>,
    wind: Vec<f64>,
    obstacles: Vec<u8>,
    cost: Vec<f64>,
}

impl GridEnvironment {
    /// Builds an environment from raw row-major matrices, validating every
    /// structural invariant.
    pub fn new(
        n_x: usize,
        n_y: usize,
        cell_size: f64,
        polar: Vec<f64>,
        wind: Vec<f64>,
        obstacles: Vec<u8>,
        cost: Vec<f64>,
    ) -> Result<Self> {
        if n_x < 2 || n_y < 2 {
            return Err(Error::Spec(format!(
                "grid must be at least 2x2, got {n_x}x{n_y}"
            )));
        }
        if !(cell_size.is_finite() && cell_size > 0.0) {
            return Err(Error::Spec(format!(
                "cell_size must be > 0, got {cell_size}"
            )));
        }
        let n = n_x * n_y;
        for (name, field) in [("polar", &polar), ("wind", &wind), ("cost", &cost)] {
            if field.len() != n {
                return Err(Error::Spec(format!(
                    "{name} matrix has {} entries, expected {n}",
                    field.len()
                )));
            }
            for (i, v) in field.iter().enumerate() {
                if !(v.is_finite() && *v >= 0.0) {
                    return Err(Error::Spec(format!(
                        "{name}[row {}, col {}] = {v} is not a finite nonnegative value",
                        i / n_x,
                        i % n_x
                    )));
                }
            }
        }
        if obstacles.len() != n {
            return Err(Error::Spec(format!(
                "obstacles matrix has {} entries, expected {n}",
                obstacles.len()
            )));
        }
        if let Some(i) = obstacles.iter().position(|&o| o > 1) {
            return Err(Error::Spec(format!(
                "obstacles[row {}, col {}] = {} is not binary",
                i / n_x,
                i % n_x,
                obstacles[i]
            )));
        }
        Ok(GridEnvironment {
            n_x,
            n_y,
            cell_size,
            polar,
            wind,
            obstacles,
            cost,
        })
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    /// Cell edge length in km.
    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    fn idx(&self, pos: &GridPos) -> usize {
        debug_assert!(self.in_bounds(pos));
        pos.row as usize * self.n_x + pos.col as usize
    }

    pub fn in_bounds(&self, pos: &GridPos) -> bool {
        pos.col >= 0
            && pos.row >= 0
            && (pos.col as usize) < self.n_x
            && (pos.row as usize) < self.n_y
    }

    /// True iff the position is inside the grid and not an obstacle cell.
    pub fn is_valid(&self, pos: &GridPos) -> bool {
        self.in_bounds(pos) && self.obstacles[self.idx(pos)] == 0
    }

    /// Energy cost in kWh/km at an in-bounds cell.
    pub fn cost_at(&self, pos: &GridPos) -> f64 {
        self.cost[self.idx(pos)]
    }

    pub fn polar_at(&self, pos: &GridPos) -> f64 {
        self.polar[self.idx(pos)]
    }

    pub fn wind_at(&self, pos: &GridPos) -> f64 {
        self.wind[self.idx(pos)]
    }

    pub fn is_obstacle(&self, pos: &GridPos) -> bool {
        self.in_bounds(pos) && self.obstacles[self.idx(pos)] == 1
    }

    pub fn obstacle_count(&self) -> usize {
        self.obstacles.iter().filter(|&&o| o == 1).count()
    }

    /// Mean energy cost over free (non-obstacle) cells; 0 if every cell is
    /// blocked. Used to scale distance-based cost estimates.
    pub fn mean_free_cost(&self) -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for (i, &o) in self.obstacles.iter().enumerate() {
            if o == 0 {
                sum += self.cost[i];
                count += 1;
            }
        }
        if count == 0 {
            0.0
        } else {
            sum / count as f64
        }
    }

    /// Range of the cost field, for plotting color scales.
    pub fn cost_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &c in &self.cost {
            lo = lo.min(c);
            hi = hi.max(c);
        }
        (lo, hi)
    }

    /// Replaces the cost matrix with a per-cell evaluation of the energy
    /// model, clamped below at `cost_floor`.
    pub fn apply_cost_model(
        &self,
        coeffs: &EnergyModelCoefficients,
        cost_floor: f64,
    ) -> Result<GridEnvironment> {
        let mut out = self.clone();
        for row in 0..self.n_y {
            for col in 0..self.n_x {
                let i = row * self.n_x + col;
                let raw = coeffs.gamma1 * self.polar[i]
                    + coeffs.gamma2 * self.wind[i]
                    + coeffs.gamma3 * self.wind[i].powi(3)
                    + coeffs.gamma4;
                if !raw.is_finite() {
                    return Err(Error::Model(format!(
                        "cost model produced {raw} at cell (col {col}, row {row})"
                    )));
                }
                out.cost[i] = raw.max(cost_floor);
            }
        }
        Ok(out)
    }

    /// Serializes to the environment document format.
    pub fn to_document(&self) -> EnvDocument {
        let rows =
            |flat: &[f64]| -> Vec<Vec<f64>> { flat.chunks(self.n_x).map(|r| r.to_vec()).collect() };
        EnvDocument {
            n_x: self.n_x,
            n_y: self.n_y,
            cell_size_km: self.cell_size,
            polar: rows(&self.polar),
            wind: rows(&self.wind),
            obstacles: self
                .obstacles
                .chunks(self.n_x)
                .map(|r| r.iter().map(|&o| o as f64).collect())
                .collect(),
            cost: rows(&self.cost),
        }
    }

    /// Environment document rendered as JSON text (full float precision).
    pub fn to_json(&self) -> String {
        // Serialization of a fixed struct over finite floats cannot fail.
        serde_json::to_string_pretty(&self.to_document()).expect("environment serialization")
    }

    /// SHA-256 hex digest of the serialized document; identifies the exact
    /// environment in benchmark reports.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_json().as_bytes());
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// On-disk environment document: declared dimensions plus four row-major
/// nested arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvDocument {
    pub n_x: usize,
    pub n_y: usize,
    pub cell_size_km: f64,
    pub polar: Vec<Vec<f64>>,
    pub wind: Vec<Vec<f64>>,
    pub obstacles: Vec<Vec<f64>>,
    pub cost: Vec<Vec<f64>>,
}

impl EnvDocument {
    /// Validates shape and entry constraints, reporting the offending
    /// row/column on failure.
    pub fn into_environment(self) -> Result<GridEnvironment> {
        let flatten = |name: &str, rows: &[Vec<f64>], n_x: usize, n_y: usize| -> Result<Vec<f64>> {
            if rows.len() != n_y {
                return Err(Error::Parse(format!(
                    "{name} has {} rows, declared n_y = {n_y}",
                    rows.len()
                )));
            }
            let mut flat = Vec::with_capacity(n_x * n_y);
            for (r, row) in rows.iter().enumerate() {
                if row.len() != n_x {
                    return Err(Error::Parse(format!(
                        "{name} row {r} has {} entries, declared n_x = {n_x}",
                        row.len()
                    )));
                }
                flat.extend_from_slice(row);
            }
            Ok(flat)
        };
        let polar = flatten("polar", &self.polar, self.n_x, self.n_y)?;
        let wind = flatten("wind", &self.wind, self.n_x, self.n_y)?;
        let cost = flatten("cost", &self.cost, self.n_x, self.n_y)?;
        let obstacles_f = flatten("obstacles", &self.obstacles, self.n_x, self.n_y)?;
        let mut obstacles = Vec::with_capacity(obstacles_f.len());
        for (i, &v) in obstacles_f.iter().enumerate() {
            if v == 0.0 {
                obstacles.push(0u8);
            } else if v == 1.0 {
                obstacles.push(1u8);
            } else {
                return Err(Error::Parse(format!(
                    "obstacles[row {}, col {}] = {v}, expected 0 or 1",
                    i / self.n_x,
                    i % self.n_x
                )));
            }
        }
        GridEnvironment::new(
            self.n_x,
            self.n_y,
            self.cell_size_km,
            polar,
            wind,
            obstacles,
            cost,
        )
    }
}

/// Parses an environment document from JSON text.
pub fn load_environment(text: &str) -> Result<GridEnvironment> {
    let doc: EnvDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("environment document: {e}")))?;
    doc.into_environment()
}

/// One axis-aligned rectangular obstacle; both index ranges are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleRect {
    pub col_min: i64,
    pub col_max: i64,
    pub row_min: i64,
    pub row_max: i64,
}

/// Random smooth field built as a sum of Gaussian bumps with seeded
/// placement, plus a constant base level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// Number of Gaussian bumps.
    pub bumps: usize,
    /// Bump peak amplitude, drawn uniformly from `[min, max]`.
    pub amplitude: [f64; 2],
    /// Bump standard deviation in cell units, drawn uniformly from `[min, max]`.
    pub width: [f64; 2],
    /// Constant offset added everywhere (uniform-field component).
    #[serde(default)]
    pub base: f64,
}

impl FieldSpec {
    /// A field that is identically zero.
    pub fn zero() -> Self {
        FieldSpec {
            bumps: 0,
            amplitude: [0.0, 0.0],
            width: [1.0, 1.0],
            base: 0.0,
        }
    }

    /// A constant field with no bumps.
    pub fn constant(base: f64) -> Self {
        FieldSpec {
            bumps: 0,
            amplitude: [0.0, 0.0],
            width: [1.0, 1.0],
            base,
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let [a0, a1] = self.amplitude;
        let [w0, w1] = self.width;
        if !(a0.is_finite() && a1.is_finite() && 0.0 <= a0 && a0 <= a1) {
            return Err(Error::Spec(format!(
                "{name}.amplitude range [{a0}, {a1}] must satisfy 0 <= min <= max"
            )));
        }
        if !(w0.is_finite() && w1.is_finite() && 0.0 < w0 && w0 <= w1) {
            return Err(Error::Spec(format!(
                "{name}.width range [{w0}, {w1}] must satisfy 0 < min <= max"
            )));
        }
        if !(self.base.is_finite() && self.base >= 0.0) {
            return Err(Error::Spec(format!(
                "{name}.base must be finite and >= 0, got {}",
                self.base
            )));
        }
        Ok(())
    }

    /// Samples bump parameters and accumulates the field over cell centers.
    fn render(&self, n_x: usize, n_y: usize, rng: &mut impl Rng) -> Vec<f64> {
        let mut field = vec![self.base; n_x * n_y];
        for _ in 0..self.bumps {
            let cx: f64 = rng.gen_range(0.0..n_x as f64);
            let cy: f64 = rng.gen_range(0.0..n_y as f64);
            let amp: f64 = rng.gen_range(self.amplitude[0]..=self.amplitude[1]);
            let sigma: f64 = rng.gen_range(self.width[0]..=self.width[1]);
            let inv = 1.0 / (2.0 * sigma * sigma);
            for row in 0..n_y {
                for col in 0..n_x {
                    let dx = (col as f64 + 0.5) - cx;
                    let dy = (row as f64 + 0.5) - cy;
                    field[row * n_x + col] += amp * (-(dx * dx + dy * dy) * inv).exp();
                }
            }
        }
        field
    }
}

/// Recipe for a synthetic environment; a fixed spec (seed included)
/// always generates the identical environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvSpec {
    pub n_x: usize,
    pub n_y: usize,
    pub cell_size_km: f64,
    pub polar: FieldSpec,
    pub wind: FieldSpec,
    #[serde(default)]
    pub obstacles: Vec<ObstacleRect>,
    pub seed: u64,
}

impl EnvSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_x < 2 || self.n_y < 2 {
            return Err(Error::Spec(format!(
                "grid must be at least 2x2, got {}x{}",
                self.n_x, self.n_y
            )));
        }
        if !(self.cell_size_km.is_finite() && self.cell_size_km > 0.0) {
            return Err(Error::Spec(format!(
                "cell_size_km must be > 0, got {}",
                self.cell_size_km
            )));
        }
        self.polar.validate("polar")?;
        self.wind.validate("wind")?;
        for (i, r) in self.obstacles.iter().enumerate() {
            let within = 0 <= r.col_min
                && r.col_min <= r.col_max
                && (r.col_max as usize) < self.n_x
                && 0 <= r.row_min
                && r.row_min <= r.row_max
                && (r.row_max as usize) < self.n_y;
            if !within {
                return Err(Error::Spec(format!(
                    "obstacle rectangle {i} ({:?}) lies outside the {}x{} grid",
                    r, self.n_x, self.n_y
                )));
            }
        }
        Ok(())
    }
}

/// Generates the environment described by `spec`. The cost matrix is left
/// zero; run [`GridEnvironment::apply_cost_model`] to fill it.
pub fn generate_environment(spec: &EnvSpec) -> Result<GridEnvironment> {
    spec.validate()?;
    let mut rng = master_rng(spec.seed);
    let polar = spec.polar.render(spec.n_x, spec.n_y, &mut rng);
    let wind = spec.wind.render(spec.n_x, spec.n_y, &mut rng);
    let mut obstacles = vec![0u8; spec.n_x * spec.n_y];
    for r in &spec.obstacles {
        for row in r.row_min..=r.row_max {
            for col in r.col_min..=r.col_max {
                obstacles[row as usize * spec.n_x + col as usize] = 1;
            }
        }
    }
    let cost = vec![0.0; spec.n_x * spec.n_y];
    GridEnvironment::new(
        spec.n_x,
        spec.n_y,
        spec.cell_size_km,
        polar,
        wind,
        obstacles,
        cost,
    )
}

/// Convenience constructor for tests and examples: uniform cost `c`, free of
/// obstacles unless masked afterwards.
pub fn uniform_cost_environment(n_x: usize, n_y: usize, cell_size: f64, c: f64) -> GridEnvironment {
    GridEnvironment::new(
        n_x,
        n_y,
        cell_size,
        vec![0.0; n_x * n_y],
        vec![0.0; n_x * n_y],
        vec![0u8; n_x * n_y],
        vec![c; n_x * n_y],
    )
    .expect("uniform environment parameters")
}

/// Builds an environment like `env` but with the listed cells blocked.
/// Intended for small test layouts.
pub fn with_obstacles(env: &GridEnvironment, blocked: &[(i64, i64)]) -> GridEnvironment {
    let mut obstacles = env.obstacles.clone();
    for &(col, row) in blocked {
        let pos = GridPos::new(col, row);
        assert!(env.in_bounds(&pos), "obstacle {pos} out of bounds");
        obstacles[env.idx(&pos)] = 1;
    }
    GridEnvironment {
        obstacles,
        ..env.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat_spec(seed: u64) -> EnvSpec {
        EnvSpec {
            n_x: 8,
            n_y: 6,
            cell_size_km: 1.0,
            polar: FieldSpec::zero(),
            wind: FieldSpec::zero(),
            obstacles: vec![],
            seed,
        }
    }

    #[test]
    fn zero_bumps_yield_zero_fields() {
        let env = generate_environment(&flat_spec(7)).unwrap();
        for row in 0..6 {
            for col in 0..8 {
                let p = GridPos::new(col, row);
                assert_eq!(env.polar_at(&p), 0.0);
                assert_eq!(env.wind_at(&p), 0.0);
                assert!(env.is_valid(&p));
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let mut spec = flat_spec(42);
        spec.polar = FieldSpec {
            bumps: 3,
            amplitude: [0.5, 2.0],
            width: [1.0, 3.0],
            base: 0.1,
        };
        spec.wind = FieldSpec {
            bumps: 2,
            amplitude: [1.0, 5.0],
            width: [2.0, 4.0],
            base: 0.0,
        };
        let a = generate_environment(&spec).unwrap();
        let b = generate_environment(&spec).unwrap();
        assert_eq!(a, b);
        let mut other = spec.clone();
        other.seed = 43;
        let c = generate_environment(&other).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn inclusive_obstacle_rectangle_covers_nine_cells() {
        let mut spec = flat_spec(1);
        spec.n_x = 10;
        spec.n_y = 10;
        spec.obstacles = vec![ObstacleRect {
            col_min: 4,
            col_max: 6,
            row_min: 4,
            row_max: 6,
        }];
        let env = generate_environment(&spec).unwrap();
        assert_eq!(env.obstacle_count(), 9);
        assert!(!env.is_valid(&GridPos::new(5, 5)));
        assert!(env.is_valid(&GridPos::new(3, 5)));
    }

    #[test]
    fn out_of_bounds_obstacle_rejected() {
        let mut spec = flat_spec(1);
        spec.obstacles = vec![ObstacleRect {
            col_min: 6,
            col_max: 8,
            row_min: 0,
            row_max: 1,
        }];
        assert!(matches!(generate_environment(&spec), Err(Error::Spec(_))));
    }

    #[test]
    fn tiny_dimensions_rejected() {
        let mut spec = flat_spec(1);
        spec.n_y = 1;
        assert!(matches!(generate_environment(&spec), Err(Error::Spec(_))));
    }

    #[test]
    fn cost_model_direct_formula() {
        let mut env = uniform_cost_environment(3, 3, 1.0, 0.0);
        env.polar = vec![0.3; 9];
        env.wind = vec![2.0; 9];
        let coeffs = EnergyModelCoefficients {
            gamma1: 2.0,
            gamma2: 1.0,
            gamma3: 0.0,
            gamma4: 0.5,
        };
        let out = env.apply_cost_model(&coeffs, 0.0).unwrap();
        let got = out.cost_at(&GridPos::new(1, 1));
        assert!((got - 3.1).abs() < 1e-15, "got {got}");
    }

    #[test]
    fn constant_model_gives_uniform_cost() {
        let env = generate_environment(&flat_spec(3)).unwrap();
        let coeffs = EnergyModelCoefficients {
            gamma1: 0.0,
            gamma2: 0.0,
            gamma3: 0.0,
            gamma4: 4.25,
        };
        let out = env.apply_cost_model(&coeffs, 0.0).unwrap();
        let (lo, hi) = out.cost_range();
        assert_eq!((lo, hi), (4.25, 4.25));
    }

    #[test]
    fn negative_raw_cost_clamps_to_floor() {
        let env = generate_environment(&flat_spec(3)).unwrap();
        let coeffs = EnergyModelCoefficients {
            gamma1: 1.0,
            gamma2: 1.0,
            gamma3: 1.0,
            gamma4: -50.0,
        };
        let out = env.apply_cost_model(&coeffs, 0.0).unwrap();
        assert_eq!(out.cost_range(), (0.0, 0.0));
        let floored = env.apply_cost_model(&coeffs, 0.75).unwrap();
        assert_eq!(floored.cost_range(), (0.75, 0.75));
    }

    #[test]
    fn cost_model_matches_elementwise_oracle() {
        let mut spec = flat_spec(11);
        spec.polar = FieldSpec {
            bumps: 4,
            amplitude: [0.1, 1.5],
            width: [1.0, 2.5],
            base: 0.2,
        };
        spec.wind = FieldSpec {
            bumps: 3,
            amplitude: [0.5, 6.0],
            width: [1.5, 3.0],
            base: 1.0,
        };
        let env = generate_environment(&spec).unwrap();
        let coeffs = EnergyModelCoefficients {
            gamma1: 0.8,
            gamma2: 0.05,
            gamma3: 0.0008,
            gamma4: 0.3,
        };
        let out = env.apply_cost_model(&coeffs, 0.0).unwrap();
        for row in 0..spec.n_y as i64 {
            for col in 0..spec.n_x as i64 {
                let p = GridPos::new(col, row);
                let expected = (coeffs.gamma1 * env.polar_at(&p)
                    + coeffs.gamma2 * env.wind_at(&p)
                    + coeffs.gamma3 * env.wind_at(&p).powi(3)
                    + coeffs.gamma4)
                    .max(0.0);
                assert!((out.cost_at(&p) - expected).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn validity_is_bounds_and_mask() {
        let env = with_obstacles(&uniform_cost_environment(4, 4, 1.0, 1.0), &[(2, 1)]);
        assert!(!env.is_valid(&GridPos::new(-1, 3)));
        assert!(!env.is_valid(&GridPos::new(0, 4)));
        assert!(env.is_valid(&GridPos::new(0, 0)));
        assert!(!env.is_valid(&GridPos::new(2, 1)));
        // Exhaustive check of the definition over a window straddling the
        // boundary.
        for col in -2..6 {
            for row in -2..6 {
                let p = GridPos::new(col, row);
                let expected = env.in_bounds(&p) && !env.is_obstacle(&p);
                assert_eq!(env.is_valid(&p), expected, "at {p}");
            }
        }
    }

    #[test]
    fn save_load_round_trip() {
        let mut spec = flat_spec(99);
        spec.polar = FieldSpec {
            bumps: 2,
            amplitude: [0.5, 1.0],
            width: [1.0, 2.0],
            base: 0.0,
        };
        spec.obstacles = vec![ObstacleRect {
            col_min: 1,
            col_max: 2,
            row_min: 1,
            row_max: 2,
        }];
        let env = generate_environment(&spec)
            .unwrap()
            .apply_cost_model(
                &EnergyModelCoefficients {
                    gamma1: 1.0,
                    gamma2: 0.0,
                    gamma3: 0.0,
                    gamma4: 0.25,
                },
                0.0,
            )
            .unwrap();
        let text = env.to_json();
        let back = load_environment(&text).unwrap();
        assert_eq!(env, back);
        assert_eq!(env.digest(), back.digest());
    }

    #[test]
    fn ragged_row_reports_location() {
        let text = r#"{
            "n_x": 3, "n_y": 2, "cell_size_km": 1.0,
            "polar": [[0,0,0],[0,0]],
            "wind": [[0,0,0],[0,0,0]],
            "obstacles": [[0,0,0],[0,0,0]],
            "cost": [[1,1,1],[1,1,1]]
        }"#;
        let err = load_environment(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("polar row 1"), "unexpected message: {msg}");
    }

    #[test]
    fn non_binary_obstacle_rejected() {
        let text = r#"{
            "n_x": 2, "n_y": 2, "cell_size_km": 1.0,
            "polar": [[0,0],[0,0]],
            "wind": [[0,0],[0,0]],
            "obstacles": [[0,2],[0,0]],
            "cost": [[1,1],[1,1]]
        }"#;
        let err = load_environment(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 0, col 1"), "unexpected message: {msg}");
    }

    #[test]
    fn declared_dimension_mismatch_rejected() {
        let text = r#"{
            "n_x": 2, "n_y": 3, "cell_size_km": 1.0,
            "polar": [[0,0],[0,0]],
            "wind": [[0,0],[0,0]],
            "obstacles": [[0,0],[0,0]],
            "cost": [[1,1],[1,1]]
        }"#;
        let err = load_environment(text).unwrap_err();
        assert!(err.to_string().contains("declared n_y = 3"));
    }

    #[test]
    fn mean_free_cost_ignores_obstacles() {
        let mut env = with_obstacles(&uniform_cost_environment(2, 2, 1.0, 0.0), &[(0, 0)]);
        env.cost = vec![100.0, 2.0, 4.0, 6.0];
        assert!((env.mean_free_cost() - 4.0).abs() < 1e-15);
    }
}
