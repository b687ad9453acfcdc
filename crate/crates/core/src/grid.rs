//! Grid coordinates and the 8-connected move set.

use serde::{Deserialize, Serialize};

/// Number of movement directions.
pub const NUM_MOVES: usize = 8;

/// The 8 moves as (d_col, d_row) offsets, in fixed order. Pheromone
/// columns and move-sequence genotypes index into this array, so the
/// order is part of the contract.
pub const MOVES: [(i64, i64); NUM_MOVES] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

/// A cell position, column-major in x (`col`) and row-major in y (`row`),
/// row 0 at the top of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridPos {
    pub col: i64,
    pub row: i64,
}

impl GridPos {
    pub fn new(col: i64, row: i64) -> Self {
        GridPos { col, row }
    }

    /// Position after applying move `m` (index into [`MOVES`]).
    pub fn step(&self, m: usize) -> GridPos {
        let (dc, dr) = MOVES[m];
        GridPos::new(self.col + dc, self.row + dr)
    }

    /// Euclidean distance in cell units.
    pub fn euclid(&self, other: &GridPos) -> f64 {
        let dc = (self.col - other.col) as f64;
        let dr = (self.row - other.row) as f64;
        (dc * dc + dr * dr).sqrt()
    }

    /// Chebyshev distance: the step count of an unobstructed 8-connected path.
    pub fn chebyshev(&self, other: &GridPos) -> i64 {
        (self.col - other.col)
            .abs()
            .max((self.row - other.row).abs())
    }
}

impl std::fmt::Display for GridPos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// Geometric length of move `m` in cell units: 1 for axial, sqrt(2) for
/// diagonal moves.
pub fn move_length(m: usize) -> f64 {
    let (dc, dr) = MOVES[m];
    if dc != 0 && dr != 0 {
        std::f64::consts::SQRT_2
    } else {
        1.0
    }
}

/// Length in cell units of the shortest 8-connected path between two
/// cells on an empty grid: diagonal legs count sqrt(2), axial legs 1.
pub fn geodesic_length(a: &GridPos, b: &GridPos) -> f64 {
    let dc = (a.col - b.col).abs();
    let dr = (a.row - b.row).abs();
    let diag = dc.min(dr) as f64;
    let axial = (dc - dr).abs() as f64;
    diag * std::f64::consts::SQRT_2 + axial
}

/// Move index whose offset equals `to - from`, if the cells are 8-adjacent.
pub fn move_between(from: &GridPos, to: &GridPos) -> Option<usize> {
    let delta = (to.col - from.col, to.row - from.row);
    MOVES.iter().position(|&m| m == delta)
}
