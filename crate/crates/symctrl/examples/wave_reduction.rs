//! Order reduction of the second-order (wave-type) system: the augmented
//! first-order pair doubles the Kalman rank, and the dedicated wave
//! observability functional detects the degenerate uncontrolled-position
//! case that a naive rank count would miss.

use nalgebra::dmatrix;
use num_complex::Complex64;
use symctrl::kalman::{rank_test, wave_augment, CMatrix, TolerancePolicy};
use symctrl::observability::{wave_observability_cost, GramianMethod};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn main() -> symctrl::Result<()> {
    let a = dmatrix![c(-1.0), c(0.3); c(0.0), c(-2.0)];
    let b = CMatrix::identity(2, 2);

    let base = rank_test(&a, &b, TolerancePolicy::default())?;
    let (a2, b2) = wave_augment(&a, &b)?;
    let augmented = rank_test(&a2, &b2, TolerancePolicy::default())?;
    println!(
        "base rank {} / {}, augmented rank {} / {} (doubles)",
        base.rank, base.dim, augmented.rank, augmented.dim
    );

    let cost = wave_observability_cost(&a, &b, 1.0, GramianMethod::BlockExp)?;
    println!(
        "wave cost on the stable pair: c_min = {:.6}, cost = {}",
        cost.c_min,
        cost.cost.map(|c| format!("{c:.6}")).unwrap_or("inf".into())
    );

    // A = 0: velocity feedback alone cannot observe the position component,
    // so the wave functional degenerates even though the first-order
    // augmented pair (a double integrator) is controllable.
    let a_zero = CMatrix::zeros(1, 1);
    let b_one = CMatrix::identity(1, 1);
    let degenerate = wave_observability_cost(&a_zero, &b_one, 1.0, GramianMethod::BlockExp)?;
    println!(
        "degenerate A = 0 case: c_min = {:.2e}, cost = {}",
        degenerate.c_min,
        degenerate
            .cost
            .map(|c| format!("{c:.6}"))
            .unwrap_or("inf".into())
    );
    Ok(())
}
