//! `seaplan` — command-line front end for the voyage-planning toolkit.
//!
//! Verbs: `gen-env` renders an environment spec into a full document, `fit`
//! regresses the energy or renewable model from samples, `plan` runs one
//! planner on one route, `dispatch` solves a battery dispatch problem,
//! `bench` executes a whole scenario (planners × seeds, with artifacts), and
//! `plot` overlays stored paths on an environment as an SVG.
//!
//! Every run prints the resolved configuration — defaults included — as a
//! JSON block before its results, so any output file can be traced back to
//! the exact inputs that produced it.
//!
//! Exit codes: 0 success, 2 validation error (including command-line usage
//! errors), 3 runtime or budget error, 4 I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seaplan_core::{
    default_deviation_amplitude, emit_plot, evaluate_fixed_path, fit_energy_model,
    fit_renewable_model, generate_environment, load_environment, parse_samples, path_from_csv,
    path_to_csv, run_scenario_with, scenario_from_json, solve_dispatch, DispatchProblem,
    EnergyModelCoefficients, EnvSpec, Error, GridPos, MpcParams, PlannerEntry, PlotPath, Result,
    RunOptions, ScenarioSpec,
};

#[derive(Parser)]
#[command(
    name = "seaplan",
    version,
    about = "Grid-world voyage planning, energy modeling, and battery dispatch"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render an environment spec into a full environment document.
    GenEnv(GenEnvArgs),
    /// Fit the shared regression basis to a sample file.
    Fit(FitArgs),
    /// Plan a single route with one planner.
    Plan(PlanArgs),
    /// Solve a battery dispatch problem.
    Dispatch(DispatchArgs),
    /// Run a scenario: every planner × seed, with table/plot artifacts.
    Bench(BenchArgs),
    /// Render an environment plus stored paths as an SVG overlay.
    Plot(PlotArgs),
}

#[derive(Args)]
struct GenEnvArgs {
    /// Environment spec JSON: grid size, field recipes, obstacles, seed.
    #[arg(long)]
    spec: PathBuf,
    /// Destination for the rendered environment document.
    #[arg(long)]
    out: PathBuf,
    /// Energy-model coefficients `gamma1,gamma2,gamma3,gamma4` used to fill
    /// the per-cell cost layer; without them the cost layer is all zeros.
    #[arg(long, value_parser = parse_coefficients)]
    coefficients: Option<EnergyModelCoefficients>,
    /// Lower clamp on modeled per-km costs.
    #[arg(long, default_value_t = 0.0)]
    cost_floor: f64,
}

#[derive(Args)]
struct FitArgs {
    /// Sample CSV: `feature1, wind_speed, response` rows, `#` comments.
    #[arg(long)]
    samples: PathBuf,
    /// Which model the first feature belongs to.
    #[arg(long, value_enum)]
    basis: Basis,
    /// Optional destination for the fit result JSON (also printed).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    /// Propulsion energy model: feature1 is the polar-resistance term.
    Energy,
    /// Renewable generation model: feature1 is solar irradiance.
    Renewable,
}

#[derive(Args)]
struct PlanArgs {
    /// Environment document JSON (as produced by gen-env).
    #[arg(long)]
    env: PathBuf,
    /// Planner name (see the scenario schema for the full list).
    #[arg(long)]
    planner: String,
    /// Start cell as `col,row`.
    #[arg(long, value_parser = parse_grid_pos)]
    start: GridPos,
    /// Target cell as `col,row`.
    #[arg(long, value_parser = parse_grid_pos)]
    target: GridPos,
    /// Planner RNG seed.
    #[arg(long)]
    seed: u64,
    /// Planner-entry JSON overriding tuning defaults; same schema as one
    /// element of a scenario's `planners` list, and its `name` must match
    /// --planner.
    #[arg(long)]
    entry: Option<PathBuf>,
    /// Search-horizon override applied on top of the entry parameters.
    #[arg(long)]
    horizon: Option<usize>,
    /// Receding-horizon loop controls JSON (max iterations, stall window,
    /// commit length, arrival tolerance).
    #[arg(long)]
    mpc: Option<PathBuf>,
    /// Optional destination for the planned path as `col,row` CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DispatchArgs {
    /// Dispatch problem JSON: forecasts, demand, battery, prices.
    #[arg(long)]
    problem: PathBuf,
    /// Optional destination for the schedule JSON (also printed).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Scenario JSON; relative file references resolve against its directory.
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory for the table, plot, and report artifacts.
    #[arg(long)]
    out_dir: PathBuf,
    /// Worker threads for the planner × seed fan-out.
    #[arg(long)]
    jobs: Option<usize>,
    /// Record real wall-clock times in the table. Timings vary run to run,
    /// so this trades byte-identical output for profiling data.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct PlotArgs {
    /// Environment document JSON.
    #[arg(long)]
    env: PathBuf,
    /// Path CSV files (`col,row` per line); each becomes one overlay named
    /// after the file stem.
    #[arg(long, num_args = 1.., required = true)]
    paths: Vec<PathBuf>,
    /// Destination SVG.
    #[arg(long)]
    out: PathBuf,
}

fn parse_grid_pos(s: &str) -> std::result::Result<GridPos, String> {
    let (c, r) = s
        .split_once(',')
        .ok_or_else(|| format!("expected col,row, got {s:?}"))?;
    let col = c
        .trim()
        .parse::<i64>()
        .map_err(|e| format!("column {:?}: {e}", c.trim()))?;
    let row = r
        .trim()
        .parse::<i64>()
        .map_err(|e| format!("row {:?}: {e}", r.trim()))?;
    Ok(GridPos::new(col, row))
}

fn parse_coefficients(s: &str) -> std::result::Result<EnergyModelCoefficients, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected gamma1,gamma2,gamma3,gamma4, got {} value(s)",
            parts.len()
        ));
    }
    let mut gamma = [0.0f64; 4];
    for (slot, part) in gamma.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("{:?}: {e}", part.trim()))?;
    }
    Ok(EnergyModelCoefficients {
        gamma1: gamma[0],
        gamma2: gamma[1],
        gamma3: gamma[2],
        gamma4: gamma[3],
    })
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn write_text(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization of plain data")
}

fn print_config(config: &serde_json::Value) {
    println!("# configuration");
    println!("{}", pretty(config));
}

/// JSON cell for a possibly infinite energy value, matching the table
/// convention of spelling out `inf` rather than losing it to null.
fn energy_value(kwh: f64) -> serde_json::Value {
    if kwh.is_finite() {
        serde_json::json!(kwh)
    } else if kwh > 0.0 {
        serde_json::json!("inf")
    } else {
        serde_json::json!("-inf")
    }
}

fn gen_env(args: GenEnvArgs) -> Result<()> {
    let spec: EnvSpec = parse_json(&args.spec, &read_text(&args.spec)?)?;
    print_config(&serde_json::json!({
        "command": "gen-env",
        "spec_file": args.spec,
        "out": args.out,
        "spec": spec,
        "coefficients": args.coefficients,
        "cost_floor": args.cost_floor,
    }));

    let mut env = generate_environment(&spec)?;
    if let Some(coeffs) = &args.coefficients {
        env = env.apply_cost_model(coeffs, args.cost_floor)?;
    }
    write_text(&args.out, &env.to_json())?;
    println!("# result");
    println!(
        "wrote {} ({}x{} cells, digest {})",
        args.out.display(),
        env.n_x(),
        env.n_y(),
        env.digest()
    );
    Ok(())
}

fn fit(args: FitArgs) -> Result<()> {
    let samples = parse_samples(&read_text(&args.samples)?)?;
    print_config(&serde_json::json!({
        "command": "fit",
        "samples": args.samples,
        "basis": match args.basis {
            Basis::Energy => "energy",
            Basis::Renewable => "renewable",
        },
        "n_samples": samples.samples.len(),
        "out": args.out,
    }));

    let (model, report) = match args.basis {
        Basis::Energy => {
            let (coeffs, report) = fit_energy_model(&samples)?;
            (serde_json::to_value(coeffs).expect("coefficients"), report)
        }
        Basis::Renewable => {
            let (coeffs, report) = fit_renewable_model(&samples)?;
            (serde_json::to_value(coeffs).expect("coefficients"), report)
        }
    };
    let result = serde_json::json!({ "model": model, "report": report });
    println!("# result");
    println!("{}", pretty(&result));
    if let Some(out) = &args.out {
        write_text(out, &(pretty(&result) + "\n"))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn plan_route(args: PlanArgs) -> Result<()> {
    let env = load_environment(&read_text(&args.env)?)?;
    let mut entry = match &args.entry {
        Some(path) => {
            let entry: PlannerEntry = parse_json(path, &read_text(path)?)?;
            if entry.name != args.planner {
                return Err(Error::Argument(format!(
                    "entry file names planner {:?} but --planner is {:?}",
                    entry.name, args.planner
                )));
            }
            entry
        }
        None => PlannerEntry::named(&args.planner),
    };
    if let Some(horizon) = args.horizon {
        let mut params = entry.params.clone().unwrap_or_default();
        params.horizon = horizon;
        entry.params = Some(params);
    }
    let mut entry = entry.resolved();
    if entry.name == "50-50" && entry.amplitude.is_none() {
        entry.amplitude = Some(default_deviation_amplitude(args.start, args.target));
    }
    let mpc: MpcParams = match &args.mpc {
        Some(path) => parse_json(path, &read_text(path)?)?,
        None => MpcParams::default(),
    };
    print_config(&serde_json::json!({
        "command": "plan",
        "env": args.env,
        "environment_digest": env.digest(),
        "planner": entry,
        "mpc": mpc,
        "start": args.start,
        "target": args.target,
        "seed": args.seed,
        "out": args.out,
    }));

    let result = entry.run(&env, args.start, args.target, &mpc, args.seed)?;
    println!("# result");
    println!(
        "{}",
        pretty(&serde_json::json!({
            "planner": result.planner,
            "seed": result.seed,
            "status": result.status,
            "steps": result.steps,
            "total_energy_kwh": energy_value(result.total_energy),
            "path_cells": result.path.len(),
        }))
    );
    if let Some(out) = &args.out {
        write_text(out, &path_to_csv(&result.path))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn dispatch(args: DispatchArgs) -> Result<()> {
    let problem: DispatchProblem = parse_json(&args.problem, &read_text(&args.problem)?)?;
    print_config(&serde_json::json!({
        "command": "dispatch",
        "problem_file": args.problem,
        "problem": problem,
        "out": args.out,
    }));

    let schedule = solve_dispatch(&problem)?;
    println!("# result");
    println!("{}", pretty(&schedule));
    if let Some(out) = &args.out {
        write_text(out, &(pretty(&schedule) + "\n"))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let spec = scenario_from_json(&read_text(&args.scenario)?)?;
    let resolved = ScenarioSpec {
        planners: spec.planners.iter().map(PlannerEntry::resolved).collect(),
        ..spec.clone()
    };
    print_config(&serde_json::json!({
        "command": "bench",
        "scenario": args.scenario,
        "out_dir": args.out_dir,
        "jobs": args.jobs,
        "timing": args.timing,
        "spec": resolved,
    }));

    let options = RunOptions {
        timing: args.timing,
        jobs: args.jobs,
        base_dir: args.scenario.parent().map(Path::to_path_buf),
    };
    let run = run_scenario_with(&spec, &options)?;
    let written = run.write_artifacts(&args.out_dir)?;
    println!("# result");
    println!("environment digest: {}", run.report.env_digest);
    for summary in &run.report.summaries {
        println!(
            "{}: median {} kWh (min {}, max {}), feasible {:.0}%",
            summary.planner,
            energy_text(summary.median_kwh),
            energy_text(summary.min_kwh),
            energy_text(summary.max_kwh),
            summary.feasibility * 100.0
        );
    }
    for path in &written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn energy_text(kwh: f64) -> String {
    if kwh.is_finite() {
        format!("{kwh:.3}")
    } else if kwh > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn plot(args: PlotArgs) -> Result<()> {
    let env = load_environment(&read_text(&args.env)?)?;
    print_config(&serde_json::json!({
        "command": "plot",
        "env": args.env,
        "environment_digest": env.digest(),
        "paths": args.paths,
        "out": args.out,
    }));

    let mut overlays = Vec::new();
    for file in &args.paths {
        let positions = path_from_csv(&read_text(file)?)?;
        let label = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| file.display().to_string());
        let cost = evaluate_fixed_path(&env, &positions);
        overlays.push(PlotPath {
            label,
            positions,
            cost,
        });
    }
    write_text(&args.out, &emit_plot(&env, &overlays))?;
    println!("# result");
    println!("wrote {} ({} paths)", args.out.display(), overlays.len());
    Ok(())
}

fn run_command(command: Command) -> Result<()> {
    match command {
        Command::GenEnv(args) => gen_env(args),
        Command::Fit(args) => fit(args),
        Command::Plan(args) => plan_route(args),
        Command::Dispatch(args) => dispatch(args),
        Command::Bench(args) => bench(args),
        Command::Plot(args) => plot(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
