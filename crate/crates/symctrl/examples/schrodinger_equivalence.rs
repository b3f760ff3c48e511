//! The Schrodinger-type rewrite i du/dt = Au + Bv -> du/dt = -iAu - iBv
//! multiplies both symbols by -i, which never changes a controllability
//! verdict: the Kalman column blocks pick up unit-modulus factors only.

use symctrl::global_analysis::{analyze, AnalyzeOptions};
use symctrl::kalman::schrodinger_transform;
use symctrl::spectra::{generate_blocks, SpectralModel};
use symctrl::symbols::{diagonal_symbol, identity_symbol, ControlSystem};

fn main() -> symctrl::Result<()> {
    let l_max = 6;
    let blocks = generate_blocks(&SpectralModel::su2_laplacian(), l_max)?;
    let system = ControlSystem::new(
        diagonal_symbol(&blocks, -1.0)?,
        identity_symbol(&blocks)?,
        1.0,
        "su2 heat".into(),
    )?;
    let transformed = schrodinger_transform(&system)?;

    let options = AnalyzeOptions::default();
    let before = analyze(&system, l_max, &options)?;
    let after = analyze(&transformed, l_max, &options)?;

    println!("  l  rank(A,B)  rank(-iA,-iB)  agree");
    for (x, y) in before.block_reports.iter().zip(&after.block_reports) {
        println!(
            "{:>3} {:>9} {:>13}  {}",
            x.block,
            x.rank.rank,
            y.rank.rank,
            x.rank.controllable == y.rank.controllable
        );
    }
    println!(
        "verdicts: {:?} vs {:?}",
        before.verdict, after.verdict
    );
    Ok(())
}
