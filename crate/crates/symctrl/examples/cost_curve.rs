//! Controllability cost as a function of the horizon T: the cost blows up
//! as T -> 0 and levels off towards sqrt(2 lambda) for dissipative blocks.

use symctrl::global_analysis::cost_curve;
use symctrl::observability::GramianMethod;
use symctrl::spectra::{generate_blocks, SpectralModel};
use symctrl::symbols::{diagonal_symbol, identity_symbol, ControlSystem};

fn main() -> symctrl::Result<()> {
    let l_max = 3;
    let blocks = generate_blocks(&SpectralModel::torus(1), l_max)?;
    let system = ControlSystem::new(
        diagonal_symbol(&blocks, -1.0)?,
        identity_symbol(&blocks)?,
        1.0,
        "torus heat".into(),
    )?;

    let horizons = [0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0];
    let rows = cost_curve(&system, l_max, &horizons, GramianMethod::BlockExp)?;

    println!("  l      T     cost");
    for r in &rows {
        println!(
            "{:>3} {:>6}  {}",
            r.block,
            r.horizon,
            r.cost.map(|c| format!("{c:.6}")).unwrap_or("inf".into())
        );
    }
    Ok(())
}
