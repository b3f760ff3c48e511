//! Batch front end: read one JSON config, run the requested pipeline, write
//! `report.json` plus CSV artifacts into the output directory.
//!
//! Exit codes: 0 = a verdict was computed (any verdict), 2 = configuration
//! error, 3 = numerical failure.

pub mod config;
pub mod report;

use std::path::{Path, PathBuf};

use clap::Parser;

use crate::error::{Error, Result};
use crate::global_analysis::{analyze, cost_curve, AnalyzeOptions, Consistency, FractionalFamily};
use crate::observability::{frobenius_norm, observability_gramian, GramianMethod};
use crate::synthesis::steer_truncated_system;
use config::{Command, RunConfig};
use report::{InvariantCheck, Report, SynthesisReport, TrajectorySummary};

#[derive(Parser, Debug)]
#[command(
    name = "symctrl",
    about = "Decide exact controllability of du/dt = Au + Bv from operator symbols"
)]
pub struct CliArgs {
    /// Path to the JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory for report.json and CSV files.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Dot-path config overrides, e.g. --override horizon=2.0
    #[arg(long = "override", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Worker threads for block-parallel analysis (falls back to
    /// SYMCTRL_THREADS, then to the rayon default).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Apply `key=value` with a dot path into the raw JSON document; the value
/// is parsed as JSON, falling back to a plain string.
pub fn apply_override(doc: &mut serde_json::Value, spec: &str) -> Result<()> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override {spec:?} is not KEY=VALUE")))?;
    let value: serde_json::Value = serde_json::from_str(raw)
        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let mut cursor = doc;
    let parts: Vec<&str> = path.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        if !cursor.is_object() {
            return Err(Error::Config(format!(
                "override path {path:?} crosses a non-object at {part:?}"
            )));
        }
        let map = cursor.as_object_mut().expect("checked object");
        if i == parts.len() - 1 {
            map.insert(part.to_string(), value);
            return Ok(());
        }
        cursor = map
            .entry(part.to_string())
            .or_insert_with(|| serde_json::Value::Object(Default::default()));
    }
    unreachable!("override path is never empty")
}

fn configure_threads(args: &CliArgs) {
    let n = args.threads.or_else(|| {
        std::env::var("SYMCTRL_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        // A second initialization in the same process is harmless: the pool
        // is already running with the earlier setting.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

pub fn load_config(args: &CliArgs) -> Result<RunConfig> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", args.config.display())))?;
    if args.overrides.is_empty() {
        RunConfig::from_json(&text)
    } else {
        let mut doc: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("invalid config: {e}")))?;
        for spec in &args.overrides {
            apply_override(&mut doc, spec)?;
        }
        RunConfig::from_json(&serde_json::to_string(&doc)?)
    }
}

fn analyze_options(config: &RunConfig) -> AnalyzeOptions {
    AnalyzeOptions {
        tolerance: config.tolerance_policy(),
        method: config.gramian_method(),
        tail: config.tail.as_ref().map(|t| FractionalFamily {
            c_b: t.c_b,
            kappa: t.kappa,
            s: t.s,
            r: t.r,
            sandwich_c: t.sandwich_c,
        }),
    }
}

fn run_analyze(config: &RunConfig, out: &Path) -> Result<String> {
    let system = config.build_system()?;
    let l_max = config.effective_l_max()?;
    let global = analyze(&system, l_max, &analyze_options(config))?;
    let mut rep = Report::new("analyze");
    rep.analysis = Some(&global);
    rep.write(out)?;
    report::write_blocks_csv(out, &global)?;
    let cost = match global.global_cost_truncated {
        Some(c) => format!("{c:.6}"),
        None => "inf".into(),
    };
    Ok(format!(
        "verdict: {:?} (truncated global cost {cost}, {} blocks)",
        global.verdict,
        global.block_reports.len()
    ))
}

fn run_cost_curve(config: &RunConfig, out: &Path) -> Result<String> {
    let system = config.build_system()?;
    let l_max = config.effective_l_max()?;
    let horizons = config
        .horizons
        .clone()
        .ok_or_else(|| Error::Config("cost-curve needs horizons".into()))?;
    let rows = cost_curve(&system, l_max, &horizons, config.gramian_method())?;
    let mut rep = Report::new("cost-curve");
    rep.cost_curve = Some(&rows);
    rep.write(out)?;
    report::write_cost_curve_csv(out, &rows)?;
    Ok(format!(
        "cost curve: {} blocks x {} horizons = {} rows",
        l_max + 1,
        horizons.len(),
        rows.len()
    ))
}

fn run_synthesize(config: &RunConfig, out: &Path) -> Result<String> {
    let system = config.build_system()?;
    let l_max = config.effective_l_max()?;
    let spec = config.synthesis.clone().unwrap_or(config::SynthesisSpec {
        initial: None,
        target: None,
        grid: 512,
    });
    let zero_data = |l: usize| {
        nalgebra::DVector::from_element(system.sigma_a.dims(l), num_complex::Complex64::ZERO)
    };
    let resolve = |data: &Option<Vec<config::JsonVector>>| -> Result<Vec<_>> {
        match data {
            None => Ok((0..=l_max).map(zero_data).collect()),
            Some(vs) => {
                if vs.len() != l_max + 1 {
                    return Err(Error::Config(format!(
                        "synthesis data has {} blocks, expected {}",
                        vs.len(),
                        l_max + 1
                    )));
                }
                for (l, v) in vs.iter().enumerate() {
                    if v.len() != system.sigma_a.dims(l) {
                        return Err(Error::Config(format!(
                            "synthesis block {l} has length {}, expected {}",
                            v.len(),
                            system.sigma_a.dims(l)
                        )));
                    }
                }
                Ok(vs.iter().map(config::json_to_vector).collect())
            }
        }
    };
    let initial = resolve(&spec.initial)?;
    let target = resolve(&spec.target)?;
    let (trajectories, summary) =
        steer_truncated_system(&system, l_max, &initial, &target, spec.grid)?;
    for traj in &trajectories {
        report::write_trajectory_csv(out, traj)?;
    }
    let mut rep = Report::new("synthesize");
    rep.synthesis = Some(SynthesisReport {
        summary: &summary,
        blocks: trajectories
            .iter()
            .map(|t| TrajectorySummary {
                block: t.block,
                steps: t.times.len() - 1,
                terminal_error: t.terminal_error,
                control_energy: t.control_energy,
                gramian_energy: t.gramian_energy,
                ill_conditioned: t.ill_conditioned,
            })
            .collect(),
    });
    rep.write(out)?;
    Ok(format!(
        "steered {} blocks: aggregate terminal error {:.3e}, total energy {:.6}",
        trajectories.len(),
        summary.aggregate_error,
        summary.total_energy
    ))
}

fn run_check_invariants(config: &RunConfig, out: &Path) -> Result<String> {
    let l_max = config.effective_l_max()?;
    let model = config.spectral_model()?;
    let blocks = crate::spectra::generate_blocks(&model, l_max)?;
    let system = config.build_system()?;
    let mut checks = Vec::new();

    let (r, c, big_c) = model.default_sandwich();
    let sandwich = crate::spectra::verify_eigenvalue_sandwich(&blocks, r, c, big_c)?;
    checks.push(InvariantCheck {
        name: "eigenvalue-sandwich".into(),
        passed: sandwich.ok,
        detail: format!(
            "r={r}, c={c}, C={big_c}, zero eigenvalues exempted: {}",
            sandwich.zero_eigenvalues_exempted
        ),
    });

    let doubled = crate::spectra::fractional_power(&blocks, 2.0)?;
    let identity_ok = blocks.iter().zip(&doubled).all(|(a, b)| {
        a.eigenvalues
            .iter()
            .zip(&b.eigenvalues)
            .all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(1.0))
    });
    checks.push(InvariantCheck {
        name: "fractional-power-identity".into(),
        passed: identity_ok,
        detail: "s = 2 reproduces the eigenvalues".into(),
    });

    let mut reduced_ok = true;
    let mut reduced_detail = String::from("all blocks agree");
    for l in 0..=system.l_max() {
        let a = system.sigma_a.block(l);
        if a.nrows() > 6 {
            continue; // d^2 powers get numerically meaningless on big blocks
        }
        if !crate::kalman::rank_test_reduced_equals_full(a, system.sigma_b.block(l))? {
            reduced_ok = false;
            reduced_detail = format!("block {l}: d powers disagree with d^2 powers");
            break;
        }
    }
    checks.push(InvariantCheck {
        name: "rank-power-reduction".into(),
        passed: reduced_ok,
        detail: reduced_detail,
    });

    let mut methods_ok = true;
    let mut methods_detail = String::from("Frobenius-relative agreement <= 1e-8");
    for l in 0..=system.l_max() {
        let a = system.sigma_a.block(l);
        let b = system.sigma_b.block(l);
        let g1 = observability_gramian(a, b, system.horizon, GramianMethod::BlockExp)?;
        let g2 = observability_gramian(a, b, system.horizon, GramianMethod::Quadrature)?;
        let diff = frobenius_norm(&(&g1.gramian - &g2.gramian))
            / frobenius_norm(&g1.gramian).max(f64::MIN_POSITIVE);
        if diff > 1e-8 {
            methods_ok = false;
            methods_detail = format!("block {l}: methods differ by {diff:.3e}");
            break;
        }
    }
    checks.push(InvariantCheck {
        name: "gramian-method-agreement".into(),
        passed: methods_ok,
        detail: methods_detail,
    });

    let global = analyze(&system, l_max, &analyze_options(config))?;
    let contradictions = global
        .block_reports
        .iter()
        .filter(|r| r.consistency == Consistency::Contradiction)
        .count();
    checks.push(InvariantCheck {
        name: "kalman-gramian-consistency".into(),
        passed: contradictions == 0,
        detail: format!("{contradictions} contradictions among {} blocks", l_max + 1),
    });

    let mut rep = Report::new("check-invariants");
    rep.invariants = Some(&checks);
    rep.write(out)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    Ok(format!(
        "invariants: {} checked, {} failed",
        checks.len(),
        failed
    ))
}

/// Run the configured command; returns the one-line stdout summary.
pub fn run(config: &RunConfig, out: &Path) -> Result<String> {
    match config.command {
        Command::Analyze => run_analyze(config, out),
        Command::CostCurve => run_cost_curve(config, out),
        Command::Synthesize => run_synthesize(config, out),
        Command::CheckInvariants => run_check_invariants(config, out),
    }
}

/// Full process entry: parse args, load config, run, map errors to exit
/// codes (0 verdict, 2 configuration, 3 numerical).
pub fn main_with_args(args: CliArgs) -> i32 {
    configure_threads(&args);
    let config = match load_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    match run(&config, &args.out) {
        Ok(line) => {
            println!("{line}");
            0
        }
        Err(e @ (Error::Config(_) | Error::Json(_))) => {
            eprintln!("{e}");
            2
        }
        Err(e) => {
            eprintln!("numerical failure: {e}");
            3
        }
    }
}
