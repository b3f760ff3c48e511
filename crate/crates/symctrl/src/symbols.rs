//! Global matrix-valued symbols of invariant operators and the algebra used
//! to build model systems: diagonal symbols from spectra, bracket-scaled
//! control symbols, blockwise combination, the block-diagonal group lift and
//! the blockwise semigroup symbol.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::observability::expm;
use crate::spectra::BlockSpectrum;

pub type CMatrix = DMatrix<Complex64>;

/// A finite prefix of a global symbol: one complex matrix per block index
/// `0..=l_max`. Evaluation is pure; the blocks are stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSequence {
    blocks: Vec<CMatrix>,
}

impl SymbolSequence {
    pub fn from_blocks(blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Precondition(
                "a symbol sequence needs at least one block".into(),
            ));
        }
        Ok(Self { blocks })
    }

    pub fn l_max(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, l: usize) -> &CMatrix {
        &self.blocks[l]
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// Row count of block `l`.
    pub fn dims(&self, l: usize) -> usize {
        self.blocks[l].nrows()
    }

    /// Column count of block `l`; differs from `dims` for rectangular
    /// control symbols.
    pub fn cols(&self, l: usize) -> usize {
        self.blocks[l].ncols()
    }

    /// Blockwise conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn map<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(usize, &CMatrix) -> Result<CMatrix>,
    {
        let blocks: Result<Vec<CMatrix>> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(l, b)| f(l, b))
            .collect();
        Ok(Self { blocks: blocks? })
    }
}

/// A control system on the Fourier side: state symbol, control symbol and a
/// positive horizon.
#[derive(Debug, Clone)]
pub struct ControlSystem {
    pub sigma_a: SymbolSequence,
    pub sigma_b: SymbolSequence,
    pub horizon: f64,
    pub label: String,
}

impl ControlSystem {
    pub fn new(
        sigma_a: SymbolSequence,
        sigma_b: SymbolSequence,
        horizon: f64,
        label: String,
    ) -> Result<Self> {
        if horizon <= 0.0 {
            return Err(Error::Precondition(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        if sigma_a.l_max() != sigma_b.l_max() {
            return Err(Error::Precondition(format!(
                "state symbol has l_max {} but control symbol has l_max {}",
                sigma_a.l_max(),
                sigma_b.l_max()
            )));
        }
        for l in 0..=sigma_a.l_max() {
            if sigma_a.dims(l) != sigma_a.cols(l) {
                return Err(Error::NonSquareBlock {
                    block: l,
                    rows: sigma_a.dims(l),
                    cols: sigma_a.cols(l),
                });
            }
            if sigma_a.dims(l) != sigma_b.dims(l) {
                return Err(Error::DimensionMismatch {
                    block: l,
                    detail: format!(
                        "state block is {}x{} but control block has {} rows",
                        sigma_a.dims(l),
                        sigma_a.cols(l),
                        sigma_b.dims(l)
                    ),
                });
            }
        }
        Ok(Self {
            sigma_a,
            sigma_b,
            horizon,
            label,
        })
    }

    pub fn l_max(&self) -> usize {
        self.sigma_a.l_max()
    }
}

/// `sigma(l) = sign * diag(eigenvalues of block l)`.
pub fn diagonal_symbol(blocks: &[BlockSpectrum], sign: f64) -> Result<SymbolSequence> {
    let mats = blocks
        .iter()
        .map(|b| {
            CMatrix::from_fn(b.dim, b.dim, |i, j| {
                if i == j {
                    Complex64::new(sign * b.eigenvalues[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        })
        .collect();
    SymbolSequence::from_blocks(mats)
}

/// `sigma_B(l) = C_B * bracket^kappa * I`, saturating the bracket lower
/// bound with equality.
pub fn scaled_bracket_symbol(
    blocks: &[BlockSpectrum],
    constant: f64,
    kappa: f64,
) -> Result<SymbolSequence> {
    if constant <= 0.0 {
        return Err(Error::Precondition(format!(
            "bracket constant must be positive, got {constant}"
        )));
    }
    let mats = blocks
        .iter()
        .map(|b| {
            let scale = Complex64::new(constant * b.bracket.powf(kappa), 0.0);
            CMatrix::identity(b.dim, b.dim) * scale
        })
        .collect();
    SymbolSequence::from_blocks(mats)
}

/// Blockwise identity symbol over the given block dimensions.
pub fn identity_symbol(blocks: &[BlockSpectrum]) -> Result<SymbolSequence> {
    let mats = blocks
        .iter()
        .map(|b| CMatrix::identity(b.dim, b.dim))
        .collect();
    SymbolSequence::from_blocks(mats)
}

/// Block-diagonal group lift: block `l` of size `d` becomes the `d^2`-sized
/// block-diagonal matrix carrying `d` copies of the input block.
pub fn lift_to_group_block(sigma: &SymbolSequence) -> Result<SymbolSequence> {
    sigma.map(|l, m| {
        let d = m.nrows();
        if d != m.ncols() {
            return Err(Error::NonSquareBlock {
                block: l,
                rows: d,
                cols: m.ncols(),
            });
        }
        let mut lifted = CMatrix::zeros(d * d, d * d);
        for copy in 0..d {
            lifted.view_mut((copy * d, copy * d), (d, d)).copy_from(m);
        }
        Ok(lifted)
    })
}

/// Blockwise combination of symbol sequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CombineOp {
    Add,
    Scale(Complex64),
    NegI,
}

impl CombineOp {
    pub fn apply(&self, inputs: &[SymbolSequence]) -> Result<SymbolSequence> {
        match self {
            CombineOp::Add => {
                if inputs.len() < 2 {
                    return Err(Error::Precondition("Add needs at least two inputs".into()));
                }
                let first = &inputs[0];
                first.map(|l, block| {
                    let mut acc = block.clone();
                    for other in &inputs[1..] {
                        if other.l_max() != first.l_max() {
                            return Err(Error::Precondition(
                                "Add inputs have different truncations".into(),
                            ));
                        }
                        let o = other.block(l);
                        if o.shape() != acc.shape() {
                            return Err(Error::DimensionMismatch {
                                block: l,
                                detail: format!(
                                    "cannot add {}x{} and {}x{}",
                                    acc.nrows(),
                                    acc.ncols(),
                                    o.nrows(),
                                    o.ncols()
                                ),
                            });
                        }
                        acc += o;
                    }
                    Ok(acc)
                })
            }
            CombineOp::Scale(factor) => {
                let [input] = single(inputs)?;
                input.map(|_, block| Ok(block * *factor))
            }
            CombineOp::NegI => {
                let [input] = single(inputs)?;
                let neg_i = Complex64::new(0.0, -1.0);
                input.map(|_, block| Ok(block * neg_i))
            }
        }
    }
}

fn single(inputs: &[SymbolSequence]) -> Result<[&SymbolSequence; 1]> {
    match inputs {
        [one] => Ok([one]),
        _ => Err(Error::Precondition(format!(
            "unary combine expects one input, got {}",
            inputs.len()
        ))),
    }
}

/// Blockwise semigroup symbol `exp(t * sigma_A(l))`.
pub fn semigroup_symbol(sigma_a: &SymbolSequence, t: f64) -> Result<SymbolSequence> {
    if !t.is_finite() {
        return Err(Error::Precondition(format!("time must be finite, got {t}")));
    }
    sigma_a.map(|l, block| {
        if block.nrows() != block.ncols() {
            return Err(Error::NonSquareBlock {
                block: l,
                rows: block.nrows(),
                cols: block.ncols(),
            });
        }
        expm(&(block * Complex64::new(t, 0.0)))
    })
}
