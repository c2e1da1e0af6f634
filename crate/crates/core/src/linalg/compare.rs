use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{cis, ComplexMatrix, ZERO};
use crate::{Error, Result};

/// Distance between two matrices once the best global phase is removed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub frobenius_distance: f64,
    /// Phase `δ ∈ (−π, π]` minimizing `‖a·e^{iδ} − b‖_F`.
    pub best_global_phase: f64,
    pub max_entry_deviation: f64,
}

/// Compares `a` and `b` up to a global phase. The optimal phase is
/// `arg tr(a†b)`; when that trace vanishes every phase is equally good and
/// `δ = 0` is returned.
pub fn distance_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComparisonReport> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "distance_up_to_phase",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let overlap: num_complex::Complex64 = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x.conj() * y)
        .sum();
    let mut phase = if overlap == ZERO { 0.0 } else { overlap.arg() };
    if phase <= -PI {
        phase = PI;
    }
    let rotation = cis(phase);
    let (mut sum_sq, mut max_dev) = (0.0_f64, 0.0_f64);
    for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
        let d = (x * rotation - y).norm();
        sum_sq += d * d;
        max_dev = max_dev.max(d);
    }
    Ok(ComparisonReport {
        frobenius_distance: sum_sq.sqrt(),
        best_global_phase: phase,
        max_entry_deviation: max_dev,
    })
}
