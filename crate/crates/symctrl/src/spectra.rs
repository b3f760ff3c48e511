//! Spectral block data for the concrete models under analysis.
//!
//! A model produces, per block index `l`, the block dimension, the eigenvalue
//! tuple of the generating operator restricted to the block, and the Japanese
//! bracket `(1 + lambda_max)^{1/2}` built from the Laplacian eigenvalue.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Hard cap on the number of blocks a single call may generate.
pub const BLOCK_BUDGET: usize = 4096;

/// One spectral block: dimension, eigenvalue tuple (ascending) and bracket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSpectrum {
    pub index: usize,
    pub dim: usize,
    pub eigenvalues: Vec<f64>,
    pub bracket: f64,
}

impl BlockSpectrum {
    pub fn new(index: usize, eigenvalues: Vec<f64>, bracket: f64) -> Self {
        let mut eigenvalues = eigenvalues;
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        Self {
            index,
            dim: eigenvalues.len(),
            eigenvalues,
            bracket,
        }
    }

    /// Largest eigenvalue of the block, 0 for an empty tuple.
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// The named generators of block data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelKind {
    /// Laplacian on the torus T^n; blocks are distinct values of |k|^2.
    TorusLaplacian { n: usize },
    /// Laplacian on SU(2) with the flat block-diagonal lift: block `l`
    /// (spin l/2) has dimension (l+1)^2 and a single repeated eigenvalue.
    SU2Laplacian,
    /// Sub-Laplacian on SU(2): per-copy eigenvalues l(l+1) - m^2, repeated
    /// across the (l+1) copies of the flat lift.
    SU2SubLaplacian,
    /// User-supplied diagonal model: blocks are returned verbatim.
    AbstractDiagonal { blocks: Vec<BlockSpectrum> },
}

/// A spectral model together with its Hormander step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralModel {
    pub kind: ModelKind,
    /// Step r in the eigenvalue sandwich: 1 for elliptic, 2 for SU2SubLaplacian.
    pub hormander_step: u32,
}

impl SpectralModel {
    pub fn torus(n: usize) -> Self {
        Self {
            kind: ModelKind::TorusLaplacian { n },
            hormander_step: 1,
        }
    }

    pub fn su2_laplacian() -> Self {
        Self {
            kind: ModelKind::SU2Laplacian,
            hormander_step: 1,
        }
    }

    pub fn su2_sub_laplacian() -> Self {
        Self {
            kind: ModelKind::SU2SubLaplacian,
            hormander_step: 2,
        }
    }

    pub fn abstract_diagonal(blocks: Vec<BlockSpectrum>) -> Self {
        Self {
            kind: ModelKind::AbstractDiagonal { blocks },
            hormander_step: 1,
        }
    }

    /// Default sandwich constants (r, c, C) for this model. The constants are
    /// existential in the underlying estimate; these are working defaults to
    /// be verified, never derived.
    pub fn default_sandwich(&self) -> (u32, f64, f64) {
        match self.kind {
            ModelKind::SU2SubLaplacian => (2, 0.25, 2.0),
            _ => (1, 0.5, 2.0),
        }
    }
}

/// Generate blocks `0..=l_max` for the given model.
pub fn generate_blocks(model: &SpectralModel, l_max: usize) -> Result<Vec<BlockSpectrum>> {
    if l_max + 1 > BLOCK_BUDGET {
        return Err(Error::BlockBudgetExceeded {
            requested: l_max,
            budget: BLOCK_BUDGET,
        });
    }
    match &model.kind {
        ModelKind::TorusLaplacian { n } => {
            if *n == 0 {
                return Err(Error::Precondition("torus dimension n must be >= 1".into()));
            }
            torus_blocks(*n, l_max)
        }
        ModelKind::SU2Laplacian => Ok((0..=l_max).map(su2_laplacian_block).collect()),
        ModelKind::SU2SubLaplacian => Ok((0..=l_max).map(su2_sub_laplacian_block).collect()),
        ModelKind::AbstractDiagonal { blocks } => {
            if blocks.len() < l_max + 1 {
                return Err(Error::Precondition(format!(
                    "abstract model supplies {} blocks but l_max = {}",
                    blocks.len(),
                    l_max
                )));
            }
            Ok(blocks[..=l_max].to_vec())
        }
    }
}

/// Laplacian eigenvalue l(l+1) on the SU(2) block of twice-spin `l2`.
fn su2_laplacian_eigenvalue(l2: usize) -> f64 {
    // l = l2/2, so l(l+1) = l2 (l2 + 2) / 4, exact in doubles for desk scale.
    (l2 as f64) * (l2 as f64 + 2.0) / 4.0
}

fn su2_laplacian_block(l2: usize) -> BlockSpectrum {
    let lam = su2_laplacian_eigenvalue(l2);
    let dim = (l2 + 1) * (l2 + 1);
    BlockSpectrum::new(l2, vec![lam; dim], (1.0 + lam).sqrt())
}

fn su2_sub_laplacian_block(l2: usize) -> BlockSpectrum {
    let lam = su2_laplacian_eigenvalue(l2);
    // Per-copy tuple l(l+1) - m^2 for m = -l..l; 2m runs over -l2..l2 in steps of 2.
    let per_copy: Vec<f64> = (0..=l2)
        .map(|k| {
            let two_m = 2.0 * k as f64 - l2 as f64;
            lam - two_m * two_m / 4.0
        })
        .collect();
    let mut eigenvalues = Vec::with_capacity((l2 + 1) * (l2 + 1));
    for _ in 0..=l2 {
        eigenvalues.extend_from_slice(&per_copy);
    }
    BlockSpectrum::new(l2, eigenvalues, (1.0 + lam).sqrt())
}

fn torus_blocks(n: usize, l_max: usize) -> Result<Vec<BlockSpectrum>> {
    // Radius cap: distinct |k|^2 values up to K^2 are complete once every
    // coordinate is bounded by K. Grow K until enough complete values exist.
    let mut cap: i64 = 1;
    loop {
        let counts = lattice_norm_counts(n, cap);
        let complete: Vec<(i64, usize)> = counts
            .into_iter()
            .filter(|(v, _)| *v <= cap * cap)
            .collect();
        if complete.len() > l_max {
            let blocks = complete
                .into_iter()
                .take(l_max + 1)
                .enumerate()
                .map(|(idx, (v, mult))| {
                    BlockSpectrum::new(idx, vec![v as f64; mult], (1.0 + v as f64).sqrt())
                })
                .collect();
            return Ok(blocks);
        }
        cap *= 2;
        if cap > 1 << 20 {
            return Err(Error::Precondition(
                "torus block enumeration radius overflow".into(),
            ));
        }
    }
}

/// Multiplicity of each value of |k|^2 over k in Z^n with |k_i| <= cap,
/// enumerated lexicographically.
fn lattice_norm_counts(n: usize, cap: i64) -> BTreeMap<i64, usize> {
    let mut counts = BTreeMap::new();
    let mut point = vec![-cap; n];
    loop {
        let norm_sq: i64 = point.iter().map(|k| k * k).sum();
        *counts.entry(norm_sq).or_insert(0) += 1;
        // lexicographic advance
        let mut i = n;
        loop {
            if i == 0 {
                return counts;
            }
            i -= 1;
            if point[i] < cap {
                point[i] += 1;
                for p in point.iter_mut().skip(i + 1) {
                    *p = -cap;
                }
                break;
            }
        }
    }
}

/// Map each eigenvalue tuple componentwise through `t -> t^{s/2}`.
pub fn fractional_power(blocks: &[BlockSpectrum], s: f64) -> Result<Vec<BlockSpectrum>> {
    if s <= 0.0 {
        return Err(Error::Precondition(format!(
            "fractional power s must be positive, got {s}"
        )));
    }
    blocks
        .iter()
        .map(|b| {
            let eigenvalues: Result<Vec<f64>> = b
                .eigenvalues
                .iter()
                .map(|&t| {
                    if t < 0.0 {
                        Err(Error::NegativeEigenvalue {
                            block: b.index,
                            value: t,
                        })
                    } else {
                        Ok(t.powf(s / 2.0))
                    }
                })
                .collect();
            Ok(BlockSpectrum {
                index: b.index,
                dim: b.dim,
                eigenvalues: eigenvalues?,
                bracket: b.bracket,
            })
        })
        .collect()
}

/// Report from a sandwich verification run.
#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub ok: bool,
    pub first_violation: Option<SandwichViolation>,
    /// Zero eigenvalues are exempt from the lower bound and counted here.
    pub zero_eigenvalues_exempted: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichViolation {
    pub block: usize,
    pub eigenvalue: f64,
    pub bracket: f64,
    pub side: SandwichSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SandwichSide {
    Lower,
    Upper,
}

/// Check `c * bracket^{1/r} <= lambda^{1/2} <= C * bracket` for every nonzero
/// eigenvalue of every block.
pub fn verify_eigenvalue_sandwich(
    blocks: &[BlockSpectrum],
    r: u32,
    c: f64,
    big_c: f64,
) -> Result<SandwichReport> {
    if c <= 0.0 || big_c <= 0.0 || r == 0 {
        return Err(Error::Precondition(format!(
            "sandwich constants must be positive (r = {r}, c = {c}, C = {big_c})"
        )));
    }
    let mut zero_exempt = 0usize;
    for b in blocks {
        for &lam in &b.eigenvalues {
            if lam == 0.0 {
                zero_exempt += 1;
                continue;
            }
            let sqrt_lam = lam.sqrt();
            let lower = c * b.bracket.powf(1.0 / r as f64);
            let upper = big_c * b.bracket;
            let side = if sqrt_lam < lower {
                Some(SandwichSide::Lower)
            } else if sqrt_lam > upper {
                Some(SandwichSide::Upper)
            } else {
                None
            };
            if let Some(side) = side {
                return Ok(SandwichReport {
                    ok: false,
                    first_violation: Some(SandwichViolation {
                        block: b.index,
                        eigenvalue: lam,
                        bracket: b.bracket,
                        side,
                    }),
                    zero_eigenvalues_exempted: zero_exempt,
                });
            }
        }
    }
    Ok(SandwichReport {
        ok: true,
        first_violation: None,
        zero_eigenvalues_exempted: zero_exempt,
    })
}
