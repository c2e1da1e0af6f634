//! Module-wide numerical tolerances.
//!
//! Every threshold the library uses by default lives here. Callers that need
//! different values pass a [`Tolerances`] record (or an explicit `tol`
//! argument) instead of editing constants at the call site.

/// Exact algebraic identities evaluated in f64 (unitarity, braid relation).
pub const EXACT: f64 = 1e-12;

/// Eigen-residuals and Hermiticity preconditions.
pub const EIGEN: f64 = 1e-10;

/// LU pivot threshold, relative to the largest pivot magnitude.
pub const SINGULAR_PIVOT: f64 = 1e-12;

/// Window below zero inside which eigenvalues/probabilities are clamped to 0.
pub const CLAMP_NEGATIVE: f64 = 1e-10;

/// Bisection termination width for 1-D root finding.
pub const BISECTION: f64 = 1e-10;

/// Drift in a state's norm after a gate application that triggers renormalization.
pub const NORM_DRIFT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub exact: f64,
    pub eigen: f64,
    pub singular_pivot: f64,
    pub clamp_negative: f64,
    pub bisection: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            exact: EXACT,
            eigen: EIGEN,
            singular_pivot: SINGULAR_PIVOT,
            clamp_negative: CLAMP_NEGATIVE,
            bisection: BISECTION,
        }
    }
}

impl Tolerances {
    /// All tolerances must be strictly positive and finite.
    pub fn validate(&self) -> crate::Result<()> {
        let all = [
            ("exact", self.exact),
            ("eigen", self.eigen),
            ("singular_pivot", self.singular_pivot),
            ("clamp_negative", self.clamp_negative),
            ("bisection", self.bisection),
        ];
        for (name, value) in all {
            if !(value.is_finite() && value > 0.0) {
                return Err(crate::Error::invalid(format!(
                    "tolerance `{name}` must be > 0, got {value}"
                )));
            }
        }
        Ok(())
    }
}
