//! Blockwise controllability by the rank condition, with the power
//! reduction, the wave augmentation and the Schrodinger transform.

use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbols::{CombineOp, ControlSystem};

pub type CMatrix = DMatrix<Complex64>;

/// Spectral-norm threshold above which the state block is pre-scaled before
/// forming Kalman powers; the Kalman column space is invariant under a
/// positive scaling of the state matrix.
const BALANCE_THRESHOLD: f64 = 1e2;

/// How the numerical rank tolerance is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TolerancePolicy {
    /// `tol = max(rows, cols) * sigma_max * eps * safety`.
    Relative { safety: f64 },
    /// Fixed absolute singular-value threshold.
    Absolute { tolerance: f64 },
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy::Relative { safety: 32.0 }
    }
}

/// Outcome of a per-block rank test.
#[derive(Debug, Clone, Serialize)]
pub struct RankVerdict {
    pub block: usize,
    pub dim: usize,
    pub rank: usize,
    pub controllable: bool,
    /// Singular values of the Kalman matrix, descending.
    pub singular_values: Vec<f64>,
    pub tolerance_used: f64,
    /// Smallest counted singular value divided by the tolerance; `None` when
    /// the rank is zero. Values near 1 flag near-degenerate decisions.
    pub spectral_gap: Option<f64>,
    /// Scale factor applied to the state block before forming powers, if any.
    pub balance_scale: Option<f64>,
}

impl RankVerdict {
    pub fn with_block(mut self, block: usize) -> Self {
        self.block = block;
        self
    }
}

fn spectral_norm_upper(m: &CMatrix) -> f64 {
    // 1-norm / inf-norm bound, cheap and adequate for a scaling decision.
    let one: f64 = (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let inf: f64 = (0..m.nrows())
        .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    (one * inf).sqrt()
}

fn check_finite(m: &CMatrix, context: &str) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite {
            context: context.to_string(),
        })
    }
}

/// Horizontal concatenation `[B, AB, ..., A^{p-1}B]` by iterated multiply.
pub fn kalman_matrix(a: &CMatrix, b: &CMatrix, powers: usize) -> Result<CMatrix> {
    let d = a.nrows();
    if d != a.ncols() {
        return Err(Error::NonSquareBlock {
            block: 0,
            rows: d,
            cols: a.ncols(),
        });
    }
    if b.nrows() != d {
        return Err(Error::DimensionMismatch {
            block: 0,
            detail: format!("A is {d}x{d} but B has {} rows", b.nrows()),
        });
    }
    if powers == 0 {
        return Err(Error::Precondition("powers must be >= 1".into()));
    }
    let m = b.ncols();
    let mut k = CMatrix::zeros(d, powers * m);
    let mut col = b.clone();
    for p in 0..powers {
        k.view_mut((0, p * m), (d, m)).copy_from(&col);
        if p + 1 < powers {
            col = a * col;
        }
    }
    Ok(k)
}

fn numerical_rank(k: &CMatrix, policy: TolerancePolicy) -> (usize, Vec<f64>, f64) {
    let svd = SVD::new(k.clone(), false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let tol = match policy {
        TolerancePolicy::Relative { safety } => {
            let n = k.nrows().max(k.ncols()) as f64;
            n * sigma_max * f64::EPSILON * safety
        }
        TolerancePolicy::Absolute { tolerance } => tolerance,
    };
    let rank = sv.iter().filter(|&&s| s > tol).count();
    (rank, sv, tol)
}

/// Numerical rank of the Kalman matrix with `d` powers, via singular values.
pub fn rank_test(a: &CMatrix, b: &CMatrix, policy: TolerancePolicy) -> Result<RankVerdict> {
    check_finite(a, "rank test state block")?;
    check_finite(b, "rank test control block")?;
    let d = a.nrows();
    let norm = spectral_norm_upper(a);
    let (a_scaled, balance_scale) = if norm > BALANCE_THRESHOLD {
        (a / Complex64::new(norm, 0.0), Some(1.0 / norm))
    } else {
        (a.clone(), None)
    };
    let k = kalman_matrix(&a_scaled, b, d.max(1))?;
    let (rank, singular_values, tolerance_used) = numerical_rank(&k, policy);
    let spectral_gap = if rank > 0 && tolerance_used > 0.0 {
        Some(singular_values[rank - 1] / tolerance_used)
    } else {
        None
    };
    Ok(RankVerdict {
        block: 0,
        dim: d,
        rank,
        controllable: rank == d,
        singular_values,
        tolerance_used,
        spectral_gap,
        balance_scale,
    })
}

/// Power-reduction oracle: rank with `d` powers equals rank with `d^2`
/// powers. Returns the comparison outcome rather than asserting it.
pub fn rank_test_reduced_equals_full(a: &CMatrix, b: &CMatrix) -> Result<bool> {
    let d = a.nrows();
    if d != a.ncols() {
        return Err(Error::NonSquareBlock {
            block: 0,
            rows: d,
            cols: a.ncols(),
        });
    }
    let norm = spectral_norm_upper(a).max(1.0);
    let a_scaled = a / Complex64::new(norm, 0.0);
    let policy = TolerancePolicy::default();
    let k_red = kalman_matrix(&a_scaled, b, d.max(1))?;
    let k_full = kalman_matrix(&a_scaled, b, (d * d).max(1))?;
    let (r_red, _, _) = numerical_rank(&k_red, policy);
    let (r_full, _, _) = numerical_rank(&k_full, policy);
    Ok(r_red == r_full)
}

/// Order reduction of the second-order system: returns
/// `a2 = [[0, I], [A, 0]]` and `b2 = [[0, 0], [0, B]]` of shape
/// `2d x (d + m)`; the zero columns mirror the augmented control pair.
pub fn wave_augment(a: &CMatrix, b: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let d = a.nrows();
    if d != a.ncols() {
        return Err(Error::NonSquareBlock {
            block: 0,
            rows: d,
            cols: a.ncols(),
        });
    }
    if b.nrows() != d {
        return Err(Error::DimensionMismatch {
            block: 0,
            detail: format!("A is {d}x{d} but B has {} rows", b.nrows()),
        });
    }
    let m = b.ncols();
    let mut a2 = CMatrix::zeros(2 * d, 2 * d);
    a2.view_mut((0, d), (d, d))
        .copy_from(&CMatrix::identity(d, d));
    a2.view_mut((d, 0), (d, d)).copy_from(a);
    let mut b2 = CMatrix::zeros(2 * d, d + m);
    b2.view_mut((d, d), (d, m)).copy_from(b);
    Ok((a2, b2))
}

/// Multiply both symbols of a system blockwise by `-i`, turning
/// `i du/dt = Au + Bv` into `du/dt = -iAu - iBv`.
pub fn schrodinger_transform(system: &ControlSystem) -> Result<ControlSystem> {
    let neg_i = CombineOp::NegI;
    Ok(ControlSystem::new(
        neg_i.apply(&[system.sigma_a.clone()])?,
        neg_i.apply(&[system.sigma_b.clone()])?,
        system.horizon,
        format!("{} (schrodinger)", system.label),
    )?)
}

/// Rank of the control block alone; valid shortcut when the state block is
/// diagonal. Refuses when the off-diagonal mass exceeds `1e-14` relative.
pub fn diagonal_shortcut_rank(
    a: &CMatrix,
    b: &CMatrix,
    policy: TolerancePolicy,
) -> Result<RankVerdict> {
    let d = a.nrows();
    if d != a.ncols() {
        return Err(Error::NonSquareBlock {
            block: 0,
            rows: d,
            cols: a.ncols(),
        });
    }
    let total: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let off: f64 = (0..d)
        .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| a[(i, j)].norm_sqr())
        .sum::<f64>()
        .sqrt();
    let limit = 1e-14 * total.max(1.0);
    if off > limit {
        return Err(Error::NotDiagonal { mass: off, limit });
    }
    let (rank, singular_values, tolerance_used) = numerical_rank(b, policy);
    let spectral_gap = if rank > 0 && tolerance_used > 0.0 {
        Some(singular_values[rank - 1] / tolerance_used)
    } else {
        None
    };
    Ok(RankVerdict {
        block: 0,
        dim: d,
        rank,
        controllable: rank == d,
        singular_values,
        tolerance_used,
        spectral_gap,
        balance_scale: None,
    })
}
