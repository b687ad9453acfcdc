//! Linear energy/renewable models over the basis {feature, v, v³, 1} and the
//! least-squares fitter behind them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Condition-estimate ceiling: beyond this, 64-bit coefficient recovery is
/// numerically meaningless and the fit is rejected.
pub const CONDITION_LIMIT: f64 = 1e10;

/// Per-cell energy cost model: cost = γ1·polar + γ2·v + γ3·v³ + γ4 (kWh/km).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyModelCoefficients {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub gamma4: f64,
}

impl EnergyModelCoefficients {
    /// Evaluates the model; no clamping (that is the caller's policy).
    pub fn predict(&self, polar: f64, v: f64) -> f64 {
        self.gamma1 * polar + self.gamma2 * v + self.gamma3 * v.powi(3) + self.gamma4
    }

    pub fn is_finite(&self) -> bool {
        self.gamma1.is_finite()
            && self.gamma2.is_finite()
            && self.gamma3.is_finite()
            && self.gamma4.is_finite()
    }
}

/// Renewable generation model: P = c0 + c_irr·Irr + c_v·v + c_v3·v³ (kW).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenewableModelCoefficients {
    pub c0: f64,
    pub c_irr: f64,
    pub c_v: f64,
    pub c_v3: f64,
}

impl RenewableModelCoefficients {
    /// Default hybrid PV + wind generation model:
    /// P = −166.3272 + 15·Irr + 51.7979·v − 0.047·v³.
    pub fn default_model() -> Self {
        RenewableModelCoefficients {
            c0: -166.3272,
            c_irr: 15.0,
            c_v: 51.7979,
            c_v3: -0.047,
        }
    }

    /// Evaluates the model; may be negative (clamp at the call site when a
    /// physical power is required).
    pub fn predict(&self, irr: f64, v: f64) -> f64 {
        self.c0 + self.c_irr * irr + self.c_v * v + self.c_v3 * v.powi(3)
    }
}

/// One regression sample: a feature value (polar strength or irradiance),
/// a wind speed, and the observed response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub feature1: f64,
    pub wind: f64,
    pub response: f64,
}

/// A set of regression samples; must have at least as many rows as basis
/// functions (4).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub samples: Vec<Sample>,
}

impl SampleSet {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        if samples.len() < 4 {
            return Err(Error::Spec(format!(
                "need at least 4 samples, got {}",
                samples.len()
            )));
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.feature1.is_finite() && s.wind.is_finite() && s.response.is_finite()) {
                return Err(Error::Spec(format!(
                    "sample {i} contains a non-finite value"
                )));
            }
        }
        Ok(SampleSet { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Parses the delimited sample format: one `feature1, wind, response` triple
/// per line, `#` comment lines and blank lines ignored.
pub fn parse_samples(text: &str) -> Result<SampleSet> {
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "line {}: expected 3 comma-separated fields, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let mut values = [0.0f64; 3];
        for (j, f) in fields.iter().enumerate() {
            values[j] = f.parse().map_err(|_| {
                Error::Parse(format!(
                    "line {}: field {} ({f:?}) is not a number",
                    lineno + 1,
                    j + 1
                ))
            })?;
        }
        samples.push(Sample {
            feature1: values[0],
            wind: values[1],
            response: values[2],
        });
    }
    SampleSet::new(samples)
}

/// The basis row for one sample: [feature1, v, v³, 1].
pub fn basis_row(feature1: f64, v: f64) -> [f64; 4] {
    [feature1, v, v.powi(3), 1.0]
}

/// Least-squares solution with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct LsqSolution {
    pub coefficients: Vec<f64>,
    pub residual_norm: f64,
    pub condition_estimate: f64,
}

/// Solves min ‖design·x − response‖₂ by Householder QR. Orthogonalization is
/// used deliberately instead of normal equations: the cubic wind column gives
/// the design matrix a wide dynamic range, and squaring it (AᵀA) doubles the
/// condition number exponent.
pub fn solve_least_squares(design: &[Vec<f64>], response: &[f64]) -> Result<LsqSolution> {
    let n = design.len();
    if n == 0 {
        return Err(Error::Argument("empty design matrix".into()));
    }
    let k = design[0].len();
    if k == 0 || design.iter().any(|row| row.len() != k) {
        return Err(Error::Argument(
            "design matrix rows have inconsistent lengths".into(),
        ));
    }
    if response.len() != n {
        return Err(Error::Argument(format!(
            "response length {} does not match {} design rows",
            response.len(),
            n
        )));
    }
    if n < k {
        return Err(Error::Argument(format!(
            "underdetermined system: {n} rows < {k} columns"
        )));
    }

    // Row-major working copies; reflections are applied in place.
    let mut a: Vec<f64> = design.iter().flat_map(|row| row.iter().copied()).collect();
    let mut y: Vec<f64> = response.to_vec();

    for j in 0..k {
        let norm: f64 = (j..n)
            .map(|i| a[i * k + j] * a[i * k + j])
            .sum::<f64>()
            .sqrt();
        // Sign chosen opposite the pivot to avoid cancellation.
        let alpha = if a[j * k + j] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (j..n).map(|i| a[i * k + j]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for col in j..k {
                let dot: f64 = (j..n).map(|i| v[i - j] * a[i * k + col]).sum();
                let f = 2.0 * dot / vnorm2;
                for i in j..n {
                    a[i * k + col] -= f * v[i - j];
                }
            }
            let dot: f64 = (j..n).map(|i| v[i - j] * y[i]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in j..n {
                y[i] -= f * v[i - j];
            }
        }
        // Store the exact pivot; the reflection leaves roundoff below it.
        a[j * k + j] = alpha;
        for i in (j + 1)..n {
            a[i * k + j] = 0.0;
        }
    }

    let mut r_max = 0.0f64;
    let mut r_min = f64::INFINITY;
    for j in 0..k {
        let d = a[j * k + j].abs();
        r_max = r_max.max(d);
        r_min = r_min.min(d);
    }
    let condition_estimate = if r_min == 0.0 {
        f64::INFINITY
    } else {
        r_max / r_min
    };
    if !condition_estimate.is_finite() || condition_estimate > CONDITION_LIMIT {
        return Err(Error::DegenerateDesign(format!(
            "design matrix condition estimate {condition_estimate:.3e} exceeds {CONDITION_LIMIT:.0e}"
        )));
    }

    let mut x = vec![0.0f64; k];
    for j in (0..k).rev() {
        let mut s = y[j];
        for l in (j + 1)..k {
            s -= a[j * k + l] * x[l];
        }
        x[j] = s / a[j * k + j];
    }
    let residual_norm = (k..n).map(|i| y[i] * y[i]).sum::<f64>().sqrt();

    Ok(LsqSolution {
        coefficients: x,
        residual_norm,
        condition_estimate,
    })
}

/// Fit diagnostics emitted alongside coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    /// Coefficients in basis order [feature1, v, v³, 1].
    pub coefficients: [f64; 4],
    pub residual_norm: f64,
    pub condition_estimate: f64,
    pub n_samples: usize,
}

/// Fits the shared basis {feature1, v, v³, 1} to a sample set.
pub fn fit_linear_model(samples: &SampleSet) -> Result<FitReport> {
    let design: Vec<Vec<f64>> = samples
        .samples
        .iter()
        .map(|s| basis_row(s.feature1, s.wind).to_vec())
        .collect();
    let response: Vec<f64> = samples.samples.iter().map(|s| s.response).collect();
    let sol = solve_least_squares(&design, &response)?;
    Ok(FitReport {
        coefficients: [
            sol.coefficients[0],
            sol.coefficients[1],
            sol.coefficients[2],
            sol.coefficients[3],
        ],
        residual_norm: sol.residual_norm,
        condition_estimate: sol.condition_estimate,
        n_samples: samples.len(),
    })
}

/// Fits the energy-cost model (feature1 = polar strength, response in kWh/km).
pub fn fit_energy_model(samples: &SampleSet) -> Result<(EnergyModelCoefficients, FitReport)> {
    let report = fit_linear_model(samples)?;
    let [g1, g2, g3, g4] = report.coefficients;
    Ok((
        EnergyModelCoefficients {
            gamma1: g1,
            gamma2: g2,
            gamma3: g3,
            gamma4: g4,
        },
        report,
    ))
}

/// Fits the renewable generation model (feature1 = irradiance, response in kW).
pub fn fit_renewable_model(samples: &SampleSet) -> Result<(RenewableModelCoefficients, FitReport)> {
    let report = fit_linear_model(samples)?;
    let [c_irr, c_v, c_v3, c0] = report.coefficients;
    Ok((
        RenewableModelCoefficients {
            c0,
            c_irr,
            c_v,
            c_v3,
        },
        report,
    ))
}
