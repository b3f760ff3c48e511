//! User-supplied spectral data: analyze an abstract diagonal model whose
//! blocks are given directly as eigenvalue tuples, with one block made
//! deliberately uncontrollable to show the witness in the verdict.

use nalgebra::DMatrix;
use symctrl::global_analysis::{analyze, AnalyzeOptions};
use symctrl::spectra::{generate_blocks, BlockSpectrum, SpectralModel};
use symctrl::symbols::{diagonal_symbol, identity_symbol, ControlSystem, SymbolSequence};

fn main() -> symctrl::Result<()> {
    let spectra = vec![
        BlockSpectrum::new(0, vec![0.0], 1.0),
        BlockSpectrum::new(1, vec![1.0, 1.5], 2.0f64.sqrt()),
        BlockSpectrum::new(2, vec![3.0, 3.0, 4.0], 5.0f64.sqrt()),
        BlockSpectrum::new(3, vec![7.0, 8.0], 9.0f64.sqrt()),
    ];
    let model = SpectralModel::abstract_diagonal(spectra);
    let blocks = generate_blocks(&model, 3)?;

    let sigma_a = diagonal_symbol(&blocks, -1.0)?;
    // identity control everywhere except block 2, which gets no actuation
    let mut b_blocks = identity_symbol(&blocks)?.blocks().to_vec();
    b_blocks[2] = DMatrix::zeros(3, 3);
    let sigma_b = SymbolSequence::from_blocks(b_blocks)?;

    let system = ControlSystem::new(sigma_a, sigma_b, 1.0, "abstract diagonal".into())?;
    let report = analyze(&system, 3, &AnalyzeOptions::default())?;

    for b in &report.block_reports {
        println!(
            "block {}: rank {}/{}, controllable = {}",
            b.block, b.rank.rank, b.dim, b.rank.controllable
        );
    }
    println!("verdict: {:?}", report.verdict);
    Ok(())
}
