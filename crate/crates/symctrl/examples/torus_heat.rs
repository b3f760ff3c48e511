//! Heat equation on the torus T^2 with full-strength control on every mode.
//! Every computed block passes, but no tail bound applies (kappa = 0 <
//! s/2), so the verdict stays "truncated only": the per-block cost grows
//! with the frequency and the global supremum is not certified finite.

use symctrl::global_analysis::{analyze, AnalyzeOptions, FractionalFamily};
use symctrl::spectra::{generate_blocks, SpectralModel};
use symctrl::symbols::{diagonal_symbol, identity_symbol, ControlSystem};

fn main() -> symctrl::Result<()> {
    let l_max = 12;
    let blocks = generate_blocks(&SpectralModel::torus(2), l_max)?;
    let system = ControlSystem::new(
        diagonal_symbol(&blocks, -1.0)?,
        identity_symbol(&blocks)?,
        1.0,
        "torus heat".into(),
    )?;

    let options = AnalyzeOptions {
        tail: Some(FractionalFamily {
            c_b: 1.0,
            kappa: 0.0,
            s: 2.0,
            r: 1,
            sandwich_c: 2.0,
        }),
        ..Default::default()
    };
    let report = analyze(&system, l_max, &options)?;

    println!("  l  |k|^2  dim  cost");
    for (b, spec) in report.block_reports.iter().zip(&blocks) {
        println!(
            "{:>3} {:>6} {:>4}  {:.6}",
            b.block,
            spec.lambda_max(),
            b.dim,
            b.cost.unwrap()
        );
    }
    println!("verdict: {:?}", report.verdict);
    println!(
        "tail hypothesis met: {}",
        report.tail_bound.as_ref().unwrap().hypothesis_met
    );
    Ok(())
}
