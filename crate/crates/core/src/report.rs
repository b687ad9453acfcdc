//! Benchmark report types and the delimited-table renderer.

use serde::{Deserialize, Serialize};

use crate::planner::TerminationStatus;

/// JSON has no ∞ literal (serde_json would emit `null`), so energy fields
/// serialize non-finite values as the strings `inf`/`-inf` instead.
mod float_or_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(v),
            Raw::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(serde::de::Error::custom(format!(
                    "expected a number or \"inf\", got {other:?}"
                ))),
            },
        }
    }
}

/// One (planner, seed) benchmark measurement. `energy_kwh` is the
/// independent re-evaluation of the emitted path, +∞ when the route is
/// invalid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub planner: String,
    pub seed: u64,
    #[serde(with = "float_or_inf")]
    pub energy_kwh: f64,
    pub steps: usize,
    pub status: TerminationStatus,
    pub wall_ms: f64,
}

/// Per-planner statistics over the seed list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannerSummary {
    pub planner: String,
    #[serde(with = "float_or_inf")]
    pub median_kwh: f64,
    #[serde(with = "float_or_inf")]
    pub min_kwh: f64,
    #[serde(with = "float_or_inf")]
    pub max_kwh: f64,
    /// Fraction of seeds whose route was feasible (finite energy).
    pub feasibility: f64,
}

/// Complete benchmark output: every (planner, seed) cell, per-planner
/// summaries, and the digest of the exact environment used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub scenario: String,
    pub env_digest: String,
    pub rows: Vec<BenchRow>,
    pub summaries: Vec<PlannerSummary>,
}

/// Median with the usual even/odd convention; +∞ entries participate like
/// any other value (the median of {3, ∞, ∞} is ∞).
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty slice");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Builds the summary block for `rows`, preserving first-appearance planner
/// order.
pub fn summarize(rows: &[BenchRow]) -> Vec<PlannerSummary> {
    let mut order: Vec<&str> = Vec::new();
    for row in rows {
        if !order.contains(&row.planner.as_str()) {
            order.push(&row.planner);
        }
    }
    order
        .into_iter()
        .map(|name| {
            let energies: Vec<f64> = rows
                .iter()
                .filter(|r| r.planner == name)
                .map(|r| r.energy_kwh)
                .collect();
            let feasible = energies.iter().filter(|e| e.is_finite()).count();
            let min = energies.iter().copied().fold(f64::INFINITY, f64::min);
            let max = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            PlannerSummary {
                planner: name.to_string(),
                median_kwh: median(&energies),
                min_kwh: min,
                max_kwh: max,
                feasibility: feasible as f64 / energies.len() as f64,
            }
        })
        .collect()
}

impl BenchReport {
    /// Assembles a report from measurement rows (summaries derived).
    pub fn from_rows(scenario: &str, env_digest: &str, rows: Vec<BenchRow>) -> Self {
        let summaries = summarize(&rows);
        BenchReport {
            scenario: scenario.to_string(),
            env_digest: env_digest.to_string(),
            rows,
            summaries,
        }
    }

    /// Renders the fixed-column table: one data row per (planner, seed) and
    /// one `#`-prefixed summary row per planner. Floats use the shortest
    /// round-trip formatting, so numeric cells parse back to the report
    /// values exactly, and ∞ prints as the literal `inf`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("planner,seed,energy_kWh,steps,status,wall_ms\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.planner, row.seed, row.energy_kwh, row.steps, row.status, row.wall_ms
            ));
        }
        for s in &self.summaries {
            out.push_str(&format!(
                "# summary planner={} median_kWh={} min_kWh={} max_kWh={} feasibility={:.3}\n",
                s.planner, s.median_kwh, s.min_kwh, s.max_kwh, s.feasibility
            ));
        }
        out
    }

    /// Report serialized as pretty JSON (companion artifact to the table).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}
