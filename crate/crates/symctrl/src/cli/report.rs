//! Disk artifacts: `report.json`, `blocks.csv` and `trajectory_<l>.csv`.
//! All numbers are printed with shortest-round-trip formatting, so identical
//! runs produce byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::global_analysis::{CostCurveRow, GlobalReport};
use crate::synthesis::{BlockTrajectory, SteeringSummary};

#[derive(Serialize)]
pub struct Report<'a> {
    pub schema_version: u32,
    pub command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<&'a GlobalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost_curve: Option<&'a [CostCurveRow]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synthesis: Option<SynthesisReport<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<&'a [InvariantCheck]>,
}

#[derive(Serialize)]
pub struct SynthesisReport<'a> {
    pub summary: &'a SteeringSummary,
    pub blocks: Vec<TrajectorySummary>,
}

/// Trajectory metadata without the bulky sample arrays (those go to CSV).
#[derive(Serialize)]
pub struct TrajectorySummary {
    pub block: usize,
    pub steps: usize,
    pub terminal_error: f64,
    pub control_energy: f64,
    pub gramian_energy: f64,
    pub ill_conditioned: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl<'a> Report<'a> {
    pub fn new(command: &'a str) -> Self {
        Self {
            schema_version: 1,
            command,
            analysis: None,
            cost_curve: None,
            synthesis: None,
            invariants: None,
        }
    }

    pub fn write(&self, out_dir: &Path) -> Result<()> {
        std::fs::create_dir_all(out_dir)?;
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(out_dir.join("report.json"), text)?;
        Ok(())
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v}"),
        None => "inf".to_string(),
    }
}

pub fn write_blocks_csv(out_dir: &Path, report: &GlobalReport) -> Result<()> {
    let mut csv = String::from("l,dim,rank,controllable,c_min,cost,method,quad_err\n");
    for b in &report.block_reports {
        writeln!(
            csv,
            "{},{},{},{},{},{},{:?},{}",
            b.block,
            b.dim,
            b.rank.rank,
            b.rank.controllable,
            b.c_min,
            fmt_opt(b.cost),
            b.method,
            b.quad_error_estimate
        )
        .expect("string write");
    }
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("blocks.csv"), csv)?;
    Ok(())
}

pub fn write_cost_curve_csv(out_dir: &Path, rows: &[CostCurveRow]) -> Result<()> {
    let mut csv = String::from("l,T,c_min,cost\n");
    for r in rows {
        writeln!(
            csv,
            "{},{},{},{}",
            r.block,
            r.horizon,
            r.c_min,
            fmt_opt(r.cost)
        )
        .expect("string write");
    }
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("blocks.csv"), csv)?;
    Ok(())
}

pub fn write_trajectory_csv(out_dir: &Path, traj: &BlockTrajectory) -> Result<()> {
    let d = traj.states.first().map(|s| s.len()).unwrap_or(0);
    let m = traj.controls.first().map(|v| v.len()).unwrap_or(0);
    let mut csv = String::from("t");
    for i in 0..d {
        write!(csv, ",u{i}_re,u{i}_im").expect("string write");
    }
    for i in 0..m {
        write!(csv, ",v{i}_re,v{i}_im").expect("string write");
    }
    csv.push('\n');
    for (k, t) in traj.times.iter().enumerate() {
        write!(csv, "{t}").expect("string write");
        for z in &traj.states[k] {
            write!(csv, ",{},{}", z.re, z.im).expect("string write");
        }
        for z in &traj.controls[k] {
            write!(csv, ",{},{}", z.re, z.im).expect("string write");
        }
        csv.push('\n');
    }
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join(format!("trajectory_{}.csv", traj.block)), csv)?;
    Ok(())
}
