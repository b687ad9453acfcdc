//! Battery/backup energy dispatch along a planned route.
//!
//! Given a per-slot electrical demand profile and a renewable generation
//! forecast, the dispatcher chooses battery charge/discharge, backup draw,
//! and curtailment per slot to minimize operating cost subject to
//! state-of-charge and rate limits. The problem is a linear program solved
//! exactly with the in-crate simplex solver.

use serde::{Deserialize, Serialize};

use crate::energy::RenewableModelCoefficients;
use crate::environment::GridEnvironment;
use crate::error::{Error, Result};
use crate::planner::PlanResult;
use crate::simplex::{solve_lp, LpConstraint, LpProblem, Relation};

/// Tiny objective bias that prefers charging surplus into the battery over
/// curtailing it when both are free.
const CURTAIL_BIAS: f64 = 1e-9;
/// Even tinier per-slot ramp that prefers charging in earlier slots among
/// otherwise equivalent schedules.
const EARLY_CHARGE_BIAS: f64 = 1e-12;

/// Battery pack limits and efficiency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BatteryParams {
    /// Pack capacity in kWh.
    pub capacity_kwh: f64,
    /// State of charge at the start of the first slot, kWh.
    pub initial_soc_kwh: f64,
    /// Maximum charging power, kW.
    pub p_charge_max_kw: f64,
    /// Maximum discharging power, kW.
    pub p_discharge_max_kw: f64,
    /// Round-trip efficiency split symmetrically: charging stores
    /// `efficiency * power` and discharging drains `power / efficiency`.
    pub efficiency: f64,
    /// Lower state-of-charge bound, kWh.
    pub soc_min_kwh: f64,
    /// Upper state-of-charge bound, kWh.
    pub soc_max_kwh: f64,
}

impl Default for BatteryParams {
    fn default() -> Self {
        Self {
            capacity_kwh: 1000.0,
            initial_soc_kwh: 500.0,
            p_charge_max_kw: 1000.0,
            p_discharge_max_kw: 100.0,
            efficiency: 0.9,
            soc_min_kwh: 0.0,
            soc_max_kwh: 1000.0,
        }
    }
}

impl BatteryParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("capacity_kwh", self.capacity_kwh),
            ("initial_soc_kwh", self.initial_soc_kwh),
            ("p_charge_max_kw", self.p_charge_max_kw),
            ("p_discharge_max_kw", self.p_discharge_max_kw),
            ("efficiency", self.efficiency),
            ("soc_min_kwh", self.soc_min_kwh),
            ("soc_max_kwh", self.soc_max_kwh),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::Spec(format!("battery {name} must be finite")));
            }
        }
        if self.capacity_kwh <= 0.0 {
            return Err(Error::Spec("battery capacity_kwh must be positive".into()));
        }
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::Spec(format!(
                "battery efficiency must lie in (0, 1], got {}",
                self.efficiency
            )));
        }
        if self.p_charge_max_kw < 0.0 || self.p_discharge_max_kw < 0.0 {
            return Err(Error::Spec(
                "battery power limits must be nonnegative".into(),
            ));
        }
        let ordered = 0.0 <= self.soc_min_kwh
            && self.soc_min_kwh <= self.initial_soc_kwh
            && self.initial_soc_kwh <= self.soc_max_kwh
            && self.soc_max_kwh <= self.capacity_kwh;
        if !ordered {
            return Err(Error::Spec(format!(
                "battery state bounds must satisfy 0 <= soc_min ({}) <= initial_soc ({}) <= soc_max ({}) <= capacity ({})",
                self.soc_min_kwh, self.initial_soc_kwh, self.soc_max_kwh, self.capacity_kwh
            )));
        }
        Ok(())
    }
}

/// One dispatch optimization instance over `demand_kw.len()` time slots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispatchProblem {
    /// Electrical demand per slot, kW.
    pub demand_kw: Vec<f64>,
    /// Renewable generation per slot, kW.
    pub renewable_kw: Vec<f64>,
    /// Slot width in hours.
    #[serde(default = "default_delta_t")]
    pub delta_t_h: f64,
    /// Cost of battery throughput, $/kWh discharged.
    #[serde(default = "default_c_battery")]
    pub c_battery: f64,
    /// Cost of backup generation, $/kWh.
    #[serde(default = "default_c_backup")]
    pub c_backup: f64,
    #[serde(default)]
    pub battery: BatteryParams,
}

fn default_delta_t() -> f64 {
    1.0
}

fn default_c_battery() -> f64 {
    0.1
}

fn default_c_backup() -> f64 {
    0.5
}

impl DispatchProblem {
    pub fn n_slots(&self) -> usize {
        self.demand_kw.len()
    }

    pub fn validate(&self) -> Result<()> {
        self.battery.validate()?;
        if self.demand_kw.is_empty() {
            return Err(Error::Spec("dispatch needs at least one time slot".into()));
        }
        if self.renewable_kw.len() != self.demand_kw.len() {
            return Err(Error::Spec(format!(
                "demand has {} slots but renewable has {}",
                self.demand_kw.len(),
                self.renewable_kw.len()
            )));
        }
        for (name, series) in [
            ("demand_kw", &self.demand_kw),
            ("renewable_kw", &self.renewable_kw),
        ] {
            if let Some(t) = series.iter().position(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::Spec(format!(
                    "{name} slot {t} must be finite and nonnegative, got {}",
                    series[t]
                )));
            }
        }
        if !(self.delta_t_h.is_finite() && self.delta_t_h > 0.0) {
            return Err(Error::Spec(format!(
                "delta_t_h must be a positive number of hours, got {}",
                self.delta_t_h
            )));
        }
        for (name, value) in [("c_battery", self.c_battery), ("c_backup", self.c_backup)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::Spec(format!(
                    "{name} must be finite and nonnegative, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Optimal dispatch schedule: one value per slot plus the post-slot state of
/// charge trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispatchSchedule {
    /// Battery charging power per slot, kW.
    pub u_charge_kw: Vec<f64>,
    /// Battery discharging power per slot, kW.
    pub u_discharge_kw: Vec<f64>,
    /// Backup generation per slot, kW.
    pub p_backup_kw: Vec<f64>,
    /// Curtailed renewable power per slot, kW.
    pub curtail_kw: Vec<f64>,
    /// State of charge after each slot, kWh.
    pub soc_kwh: Vec<f64>,
    /// Minimized operating cost, $.
    pub objective_cost: f64,
}

/// State of charge after each slot: `x0 + Σ (η·u_ch − u_dis/η)·Δt` over the
/// slots consumed so far.
pub fn soc_trajectory(
    battery: &BatteryParams,
    delta_t_h: f64,
    u_charge_kw: &[f64],
    u_discharge_kw: &[f64],
) -> Result<Vec<f64>> {
    if u_charge_kw.len() != u_discharge_kw.len() {
        return Err(Error::Argument(format!(
            "charge schedule has {} slots but discharge has {}",
            u_charge_kw.len(),
            u_discharge_kw.len()
        )));
    }
    let mut soc = Vec::with_capacity(u_charge_kw.len());
    let mut state = battery.initial_soc_kwh;
    for (ch, dis) in u_charge_kw.iter().zip(u_discharge_kw) {
        state += (battery.efficiency * ch - dis / battery.efficiency) * delta_t_h;
        soc.push(state);
    }
    Ok(soc)
}

/// Solves the dispatch LP exactly.
///
/// Per slot `t` the decision variables are charge `u_ch[t]`, discharge
/// `u_dis[t]`, backup `p_bk[t]`, and curtailment `w[t]`, all nonnegative,
/// subject to
///
/// * power balance: `renewable + u_dis + p_bk = demand + u_ch + w`,
/// * rate limits on `u_ch` and `u_dis`,
/// * the state of charge staying inside `[soc_min, soc_max]` after every slot,
///
/// minimizing `Σ (c_battery·u_dis[t] + c_backup·p_bk[t])·Δt`. Ties among
/// zero-cost schedules are broken toward charging instead of curtailing and
/// toward charging earlier, via infinitesimal objective perturbations; the
/// reported objective is recomputed from the unperturbed prices.
pub fn solve_dispatch(problem: &DispatchProblem) -> Result<DispatchSchedule> {
    problem.validate()?;
    let n = problem.n_slots();
    let battery = &problem.battery;
    let dt = problem.delta_t_h;
    let n_vars = 4 * n;
    let idx_ch = |t: usize| t;
    let idx_dis = |t: usize| n + t;
    let idx_bk = |t: usize| 2 * n + t;
    let idx_w = |t: usize| 3 * n + t;

    let mut objective = vec![0.0; n_vars];
    for t in 0..n {
        objective[idx_dis(t)] = problem.c_battery * dt;
        objective[idx_bk(t)] = problem.c_backup * dt;
        objective[idx_w(t)] = CURTAIL_BIAS;
        objective[idx_ch(t)] = EARLY_CHARGE_BIAS * t as f64;
    }

    let mut constraints = Vec::with_capacity(4 * n);
    for t in 0..n {
        let mut coeffs = vec![0.0; n_vars];
        coeffs[idx_ch(t)] = -1.0;
        coeffs[idx_dis(t)] = 1.0;
        coeffs[idx_bk(t)] = 1.0;
        coeffs[idx_w(t)] = -1.0;
        constraints.push(LpConstraint {
            coeffs,
            relation: Relation::Eq,
            rhs: problem.demand_kw[t] - problem.renewable_kw[t],
        });
    }
    for t in 0..n {
        let mut upper = vec![0.0; n_vars];
        upper[idx_ch(t)] = 1.0;
        constraints.push(LpConstraint {
            coeffs: upper,
            relation: Relation::Le,
            rhs: battery.p_charge_max_kw,
        });
        let mut upper = vec![0.0; n_vars];
        upper[idx_dis(t)] = 1.0;
        constraints.push(LpConstraint {
            coeffs: upper,
            relation: Relation::Le,
            rhs: battery.p_discharge_max_kw,
        });
    }
    for t in 0..n {
        // Cumulative energy moved through the pack up to and including slot t.
        let mut delta = vec![0.0; n_vars];
        for tau in 0..=t {
            delta[idx_ch(tau)] = battery.efficiency * dt;
            delta[idx_dis(tau)] = -dt / battery.efficiency;
        }
        constraints.push(LpConstraint {
            coeffs: delta.clone(),
            relation: Relation::Le,
            rhs: battery.soc_max_kwh - battery.initial_soc_kwh,
        });
        constraints.push(LpConstraint {
            coeffs: delta,
            relation: Relation::Ge,
            rhs: battery.soc_min_kwh - battery.initial_soc_kwh,
        });
    }

    let solution = solve_lp(&LpProblem {
        objective,
        constraints,
    })?;

    let take =
        |lo: usize| -> Vec<f64> { solution.x[lo..lo + n].iter().map(|v| v.max(0.0)).collect() };
    let u_charge_kw = take(0);
    let u_discharge_kw = take(n);
    let p_backup_kw = take(2 * n);
    let curtail_kw = take(3 * n);
    let soc_kwh = soc_trajectory(battery, dt, &u_charge_kw, &u_discharge_kw)?;
    let objective_cost = (0..n)
        .map(|t| (problem.c_battery * u_discharge_kw[t] + problem.c_backup * p_backup_kw[t]) * dt)
        .sum();
    Ok(DispatchSchedule {
        u_charge_kw,
        u_discharge_kw,
        p_backup_kw,
        curtail_kw,
        soc_kwh,
        objective_cost,
    })
}

/// Converts a completed plan into a per-slot electrical demand profile.
///
/// The vessel traverses each step at `cruise_speed_kmh`, drawing that step's
/// energy at a constant rate over its travel time. The resulting power signal
/// is averaged over consecutive windows of `delta_t_h` hours; total energy is
/// conserved up to float rounding.
pub fn demand_from_path(
    env: &GridEnvironment,
    plan: &PlanResult,
    cruise_speed_kmh: f64,
    delta_t_h: f64,
) -> Result<Vec<f64>> {
    if !(cruise_speed_kmh.is_finite() && cruise_speed_kmh > 0.0) {
        return Err(Error::Argument(format!(
            "cruise speed must be positive, got {cruise_speed_kmh}"
        )));
    }
    if !(delta_t_h.is_finite() && delta_t_h > 0.0) {
        return Err(Error::Argument(format!(
            "delta_t_h must be positive, got {delta_t_h}"
        )));
    }
    if plan.path.is_empty() {
        return Err(Error::Argument("plan has an empty path".into()));
    }
    if plan.per_step_costs.len() + 1 != plan.path.len() {
        return Err(Error::Argument(format!(
            "plan has {} path points but {} step costs",
            plan.path.len(),
            plan.per_step_costs.len()
        )));
    }
    if plan.per_step_costs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Argument(
            "plan carries non-finite step energies; dispatch needs a completed route".into(),
        ));
    }

    let mut bins: Vec<f64> = Vec::new();
    let mut tau = 0.0_f64;
    for (i, energy) in plan.per_step_costs.iter().enumerate() {
        let length_km = plan.path[i].euclid(&plan.path[i + 1]) * env.cell_size();
        let duration_h = length_km / cruise_speed_kmh;
        let rate_kw = energy / duration_h;
        let mut remaining = duration_h;
        while remaining > duration_h * 1e-12 {
            let k = (tau / delta_t_h).floor() as usize;
            let bin_end = (k + 1) as f64 * delta_t_h;
            let span = bin_end - tau;
            if span <= 0.0 {
                tau = bin_end;
                continue;
            }
            let span = span.min(remaining);
            if bins.len() <= k {
                bins.resize(k + 1, 0.0);
            }
            bins[k] += rate_kw * span;
            tau += span;
            remaining -= span;
        }
    }
    for b in bins.iter_mut() {
        *b /= delta_t_h;
    }
    Ok(bins)
}

/// Renewable power per slot from irradiance and wind-speed series, clamped at
/// zero where the fitted model goes negative.
pub fn renewable_series(
    irradiance: &[f64],
    wind_speed_ms: &[f64],
    model: &RenewableModelCoefficients,
) -> Result<Vec<f64>> {
    if irradiance.len() != wind_speed_ms.len() {
        return Err(Error::Argument(format!(
            "irradiance has {} slots but wind speed has {}",
            irradiance.len(),
            wind_speed_ms.len()
        )));
    }
    for (name, series) in [("irradiance", irradiance), ("wind speed", wind_speed_ms)] {
        if let Some(t) = series.iter().position(|v| !v.is_finite()) {
            return Err(Error::Argument(format!("{name} slot {t} is not finite")));
        }
    }
    Ok(irradiance
        .iter()
        .zip(wind_speed_ms)
        .map(|(&g, &v)| model.predict(g, v).max(0.0))
        .collect())
}
