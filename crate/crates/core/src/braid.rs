//! Eight-vertex braid-group representation, braid/Yang-Baxter relation
//! checks, Yang-Baxterization and the braiding Hamiltonian.
//!
//! Matrices act on `V ⊗ V` with `V = C²`, rows and columns ordered
//! `|00⟩, |01⟩, |10⟩, |11⟩`. The deformation parameter is `q = e^{iφ}`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{c, cis, ComplexMatrix, I, ONE, ZERO};
use crate::tolerance;
use crate::{Error, Result};

/// The `±` variant of the eight-vertex braid matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// Which form of the eight-vertex matrix to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `(1/√2)·[[1,0,0,q],[0,1,±1,0],[0,∓1,1,0],[−q⁻¹,0,0,1]]`: unitary,
    /// eigenvalues `e^{±iπ/4}`.
    Normalized,
    /// The normalized pattern without the `1/√2` prefactor; eigenvalues `1 ± i`.
    Unscaled,
    /// The printed matrix: no prefactor and entry (3,4) equal to 1.
    /// Not unitary and not a braid-group representation.
    Verbatim,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BraidOperator {
    pub matrix: ComplexMatrix,
    pub sign: Sign,
    pub phi: f64,
    pub convention: Convention,
}

impl BraidOperator {
    /// Image of basis ket `index` in the ket-column display convention, where
    /// `M (|00⟩, |01⟩, |10⟩, |11⟩)ᵀ` lists `Σ_j M_ij |j⟩` in row `i`. This is
    /// the action of `Mᵀ`, i.e. row `index` of the matrix.
    pub fn display_image(&self, index: usize) -> Vec<Complex64> {
        self.matrix.row(index).to_vec()
    }
}

/// Result of a relation check: residual norm and whether it is below `tol`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub residual: f64,
    pub passed: bool,
}

impl RelationCheck {
    fn new(residual: f64, tol: f64) -> Self {
        Self {
            residual,
            passed: residual < tol,
        }
    }
}

/// Spectral parameter `x ≥ 0` and its angle `θ` with
/// `cos θ = 1/√(1+x²)`, `sin θ = x/√(1+x²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    x: f64,
    theta: f64,
}

impl SpectralParams {
    pub fn from_x(x: f64) -> Result<Self> {
        if !(x.is_finite() && x >= 0.0) {
            return Err(Error::invalid(format!(
                "spectral parameter must be finite and >= 0, got {x}"
            )));
        }
        Ok(Self { x, theta: x.atan() })
    }

    pub fn from_theta(theta: f64) -> Result<Self> {
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::invalid(format!(
                "theta must lie in [0, π/2), got {theta}"
            )));
        }
        Ok(Self {
            x: theta.tan(),
            theta,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Largest deviation from the defining cos/sin relation.
    pub fn relation_residual(&self) -> f64 {
        let root = (1.0 + self.x * self.x).sqrt();
        let dc = (self.theta.cos() - 1.0 / root).abs();
        let ds = (self.theta.sin() - self.x / root).abs();
        dc.max(ds)
    }
}

pub fn bgr_eight_vertex(sign: Sign, phi: f64, convention: Convention) -> BraidOperator {
    let q = cis(phi);
    let s = c(sign.value(), 0.0);
    let entry_34 = match convention {
        Convention::Verbatim => ONE,
        _ => ZERO,
    };
    let pattern = ComplexMatrix::from_rows(&[
        [ONE, ZERO, ZERO, q],
        [ZERO, ONE, s, ZERO],
        [ZERO, -s, ONE, entry_34],
        [-q.inv(), ZERO, ZERO, ONE],
    ]);
    let matrix = match convention {
        Convention::Normalized => pattern.scale_real(FRAC_1_SQRT_2),
        Convention::Unscaled | Convention::Verbatim => pattern,
    };
    BraidOperator {
        matrix,
        sign,
        phi,
        convention,
    }
}

/// `I^{⊗(i−1)} ⊗ b ⊗ I^{⊗(m−i−1)}` for a two-strand operator `b` placed on
/// strands `i, i+1` of `m` (1-based, `1 ≤ i ≤ m−1`, `m ≤ 10`).
pub fn embed_on_strands(
    b: &ComplexMatrix,
    position: usize,
    strands: usize,
) -> Result<ComplexMatrix> {
    if b.shape() != (4, 4) {
        return Err(Error::DimensionMismatch {
            op: "embed_on_strands",
            left: b.shape(),
            right: (4, 4),
        });
    }
    if !(2..=10).contains(&strands) || position < 1 || position > strands - 1 {
        return Err(Error::invalid(format!(
            "position {position} out of range for {strands} strands"
        )));
    }
    let left = ComplexMatrix::identity(1 << (position - 1));
    let right = ComplexMatrix::identity(1 << (strands - position - 1));
    Ok(left.kron(b).kron(&right))
}

fn require_two_strand(b: &ComplexMatrix, op: &'static str) -> Result<()> {
    if b.shape() == (4, 4) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op,
            left: b.shape(),
            right: (4, 4),
        })
    }
}

/// `‖b₁b₂b₁ − b₂b₁b₂‖_F` on three strands.
pub fn check_braid_relation(b: &ComplexMatrix, tol: f64) -> Result<RelationCheck> {
    require_two_strand(b, "check_braid_relation")?;
    let b1 = embed_on_strands(b, 1, 3)?;
    let b2 = embed_on_strands(b, 2, 3)?;
    let lhs = &(&b1 * &b2) * &b1;
    let rhs = &(&b2 * &b1) * &b2;
    Ok(RelationCheck::new((&lhs - &rhs).frobenius_norm(), tol))
}

/// `‖b₁b₃ − b₃b₁‖_F` on four strands. Holds by construction of the
/// embedding, so this is a self-test of the harness.
pub fn check_far_commutativity(b: &ComplexMatrix, tol: f64) -> Result<RelationCheck> {
    require_two_strand(b, "check_far_commutativity")?;
    let b1 = embed_on_strands(b, 1, 4)?;
    let b3 = embed_on_strands(b, 3, 4)?;
    Ok(RelationCheck::new(
        b1.commutator(&b3)?.frobenius_norm(),
        tol,
    ))
}

/// Product `Λ₁Λ₂` of the two distinct eigenvalues of an operator satisfying
/// a quadratic (Hecke-type) relation `b² − (Λ₁+Λ₂)·b + Λ₁Λ₂·I = 0` with
/// both eigenvalues of equal multiplicity.
///
/// The sum comes from the trace, the product from the relation itself, and
/// the residual of the relation is checked so that operators outside this
/// class are rejected rather than silently given a wrong product.
pub fn eigenvalue_product(b: &ComplexMatrix) -> Result<Complex64> {
    if !b.is_square() || !b.rows().is_multiple_of(2) {
        return Err(Error::invalid(
            "eigenvalue_product needs an even-dimensional square matrix",
        ));
    }
    let n = b.rows() as f64;
    let sum = b.trace()? * (2.0 / n);
    let b2 = b * b;
    let linear = &b.scale(sum) - &b2;
    let product = linear.trace()? / n;
    let residual = (&linear - &ComplexMatrix::identity(b.rows()).scale(product)).frobenius_norm();
    if residual > tolerance::EIGEN * (1.0 + b2.frobenius_norm()) {
        return Err(Error::invalid(format!(
            "operator does not satisfy a two-eigenvalue quadratic relation (residual {residual:e})"
        )));
    }
    Ok(product)
}

/// Yang-Baxterization `R(x) = b + x·Λ₁Λ₂·b⁻¹`. At `x = 0` the braid matrix
/// is returned unchanged.
pub fn yang_baxterize(b: &BraidOperator, x: f64) -> Result<ComplexMatrix> {
    if x == 0.0 {
        return Ok(b.matrix.clone());
    }
    let product = eigenvalue_product(&b.matrix)?;
    let inv = b.matrix.inverse()?;
    Ok(&b.matrix + &inv.scale(product * x))
}

/// The printed form `b + x·Λ₁Λ₂` (identity in place of `b⁻¹`). Kept only to
/// quantify how badly it fails the Yang-Baxter equation.
pub fn yang_baxterize_printed(b: &BraidOperator, x: f64) -> Result<ComplexMatrix> {
    let product = eigenvalue_product(&b.matrix)?;
    Ok(&b.matrix + &ComplexMatrix::identity(4).scale(product * x))
}

/// `cos θ · b±(φ) + sin θ · b±⁻¹(φ)` in the normalized convention.
pub fn r_trig(sign: Sign, theta: f64, phi: f64) -> ComplexMatrix {
    let b = bgr_eight_vertex(sign, phi, Convention::Normalized).matrix;
    // Normalized b is unitary, so its inverse is its adjoint.
    let inv = b.dagger();
    &b.scale_real(theta.cos()) + &inv.scale_real(theta.sin())
}

/// `‖R₁(x)R₂(xy)R₁(y) − R₂(y)R₁(xy)R₂(x)‖_F` on three strands.
pub fn check_qybe<F>(family: F, x: f64, y: f64, tol: f64) -> Result<RelationCheck>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::invalid(format!(
            "spectral parameters must be positive, got ({x}, {y})"
        )));
    }
    let r1 = |t: f64| -> Result<ComplexMatrix> { embed_on_strands(&family(t)?, 1, 3) };
    let r2 = |t: f64| -> Result<ComplexMatrix> { embed_on_strands(&family(t)?, 2, 3) };
    let lhs = &(&r1(x)? * &r2(x * y)?) * &r1(y)?;
    let rhs = &(&r2(y)? * &r1(x * y)?) * &r2(x)?;
    Ok(RelationCheck::new((&lhs - &rhs).frobenius_norm(), tol))
}

/// Largest QYBE residual over the product grid `xs × ys`.
pub fn qybe_grid_max<F>(family: F, xs: &[f64], ys: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    let mut worst = 0.0_f64;
    for &x in xs {
        for &y in ys {
            worst = worst.max(check_qybe(&family, x, y, f64::INFINITY)?.residual);
        }
    }
    Ok(worst)
}

/// Braiding Hamiltonian `H± = −(i/2)·b±(φ)²` in the normalized convention.
pub fn hamiltonian_from_braid(sign: Sign, phi: f64) -> ComplexMatrix {
    let b = bgr_eight_vertex(sign, phi, Convention::Normalized).matrix;
    (&b * &b).scale(c(0.0, -0.5))
}

/// The printed Hamiltonian pattern
/// `(i/2)·[[0,0,0,−e^{iφ}],[0,0,∓1,0],[0,±1,0,0],[e^{−iφ},0,0,0]]`.
pub fn printed_hamiltonian(sign: Sign, phi: f64) -> ComplexMatrix {
    let q = cis(phi);
    let s = c(sign.value(), 0.0);
    ComplexMatrix::from_rows(&[
        [ZERO, ZERO, ZERO, -q],
        [ZERO, ZERO, -s, ZERO],
        [ZERO, s, ZERO, ZERO],
        [q.conj(), ZERO, ZERO, ZERO],
    ])
    .scale(I * 0.5)
}

/// Least-squares real scale `k` with `h ≈ k·pattern`, and the residual
/// `‖h − k·pattern‖_F`.
pub fn scale_against(h: &ComplexMatrix, pattern: &ComplexMatrix) -> Result<(f64, f64)> {
    if h.shape() != pattern.shape() {
        return Err(Error::DimensionMismatch {
            op: "scale_against",
            left: h.shape(),
            right: pattern.shape(),
        });
    }
    let denom = pattern.frobenius_norm().powi(2);
    if denom == 0.0 {
        return Err(Error::invalid("reference pattern is zero"));
    }
    let num: f64 = pattern
        .as_slice()
        .iter()
        .zip(h.as_slice())
        .map(|(p, x)| (p.conj() * x).re)
        .sum();
    let k = num / denom;
    let residual = (h - &pattern.scale_real(k)).frobenius_norm();
    Ok((k, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigen, pauli_x};
    use std::f64::consts::{FRAC_PI_4, PI};

    const S2: f64 = FRAC_1_SQRT_2;

    fn swap() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
    }

    // Independent oracle: the three-strand products written out with explicit
    // index arithmetic instead of Kronecker embeddings.
    fn braid_residual_by_indices(b: &ComplexMatrix) -> f64 {
        let apply = |pos: usize, i: usize, j: usize| -> Complex64 {
            // bits: strand 1 is the most significant
            let bits = |k: usize| [(k >> 2) & 1, (k >> 1) & 1, k & 1];
            let (bi, bj) = (bits(i), bits(j));
            let (a, b2) = if pos == 1 { (0, 1) } else { (1, 2) };
            let other = if pos == 1 { 2 } else { 0 };
            if bi[other] != bj[other] {
                return ZERO;
            }
            b[(bi[a] * 2 + bi[b2], bj[a] * 2 + bj[b2])]
        };
        let full = |pos| ComplexMatrix::from_fn(8, 8, |i, j| apply(pos, i, j));
        let (b1, b2) = (full(1), full(2));
        (&(&(&b1 * &b2) * &b1) - &(&(&b2 * &b1) * &b2)).frobenius_norm()
    }

    #[test]
    fn normalized_entries_at_phi_zero() {
        let b = bgr_eight_vertex(Sign::Plus, 0.0, Convention::Normalized);
        assert!((b.matrix[(0, 3)] - c(S2, 0.0)).norm() < 1e-16);
        assert!((b.matrix[(3, 0)] - c(-S2, 0.0)).norm() < 1e-16);
        assert_eq!(b.matrix[(2, 3)], ZERO);
        assert!(b.matrix.is_unitary(1e-12).unwrap().unitary);
        assert!(check_braid_relation(&b.matrix, 1e-12).unwrap().passed);
        assert!(braid_residual_by_indices(&b.matrix) < 1e-12);
    }

    #[test]
    fn verbatim_matrix_is_not_unitary_or_braided() {
        let b = bgr_eight_vertex(Sign::Plus, 0.0, Convention::Verbatim);
        assert!(!b.matrix.is_unitary(1e-12).unwrap().unitary);
        assert_eq!(b.matrix[(2, 3)], ONE);
        assert!(braid_residual_by_indices(&b.matrix) > 1.0);
    }

    #[test]
    fn display_image_gives_phase_deformed_bell_state() {
        for phi in [0.3, 1.0, 2.0] {
            let b = bgr_eight_vertex(Sign::Minus, phi, Convention::Normalized);
            let img = b.display_image(0);
            let expected = [c(S2, 0.0), ZERO, ZERO, cis(phi) * S2];
            for (a, e) in img.iter().zip(&expected) {
                assert!((a - e).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let b = bgr_eight_vertex(Sign::Plus, 0.4, Convention::Normalized).matrix;
        assert_eq!(embed_on_strands(&b, 1, 2).unwrap(), b);
        assert_eq!(
            embed_on_strands(&ComplexMatrix::identity(4), 2, 4).unwrap(),
            ComplexMatrix::identity(16)
        );
        let xx = pauli_x().kron(&pauli_x());
        assert_eq!(
            embed_on_strands(&xx, 1, 3).unwrap(),
            pauli_x().kron(&pauli_x()).kron(&ComplexMatrix::identity(2))
        );
        assert!(embed_on_strands(&b, 0, 3).is_err());
        assert!(embed_on_strands(&b, 3, 3).is_err());
        assert!(embed_on_strands(&b, 1, 11).is_err());
    }

    #[test]
    fn braid_relation_examples() {
        assert_eq!(
            check_braid_relation(&ComplexMatrix::identity(4), 1e-12)
                .unwrap()
                .residual,
            0.0
        );
        assert!(check_braid_relation(&swap(), 1e-12).unwrap().passed);
        for sign in Sign::BOTH {
            for phi in [0.0, PI / 7.0, 1.0, PI / 2.0] {
                let b = bgr_eight_vertex(sign, phi, Convention::Normalized).matrix;
                assert!(check_braid_relation(&b, 1e-12).unwrap().passed);
                assert!(braid_residual_by_indices(&b) < 1e-12);
            }
        }
    }

    #[test]
    fn far_commutativity_examples() {
        assert_eq!(
            check_far_commutativity(&ComplexMatrix::identity(4), 1e-13)
                .unwrap()
                .residual,
            0.0
        );
        let b = bgr_eight_vertex(Sign::Plus, 1.0, Convention::Normalized).matrix;
        assert!(check_far_commutativity(&b, 1e-13).unwrap().passed);
    }

    #[test]
    fn eigenvalue_products_per_convention() {
        let norm = bgr_eight_vertex(Sign::Plus, 0.0, Convention::Normalized).matrix;
        assert!((eigenvalue_product(&norm).unwrap() - ONE).norm() < 1e-14);
        let unscaled = bgr_eight_vertex(Sign::Plus, 0.0, Convention::Unscaled).matrix;
        assert!((eigenvalue_product(&unscaled).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
        // 1 ± i are eigenvalues of the unscaled matrix.
        assert!(unscaled.eigenvalue_residual(c(1.0, 1.0)).unwrap() < 1e-10);
        assert!(unscaled.eigenvalue_residual(c(1.0, -1.0)).unwrap() < 1e-10);
        // e^{±iπ/4} for the normalized one.
        assert!(norm.eigenvalue_residual(cis(FRAC_PI_4)).unwrap() < 1e-10);
    }

    #[test]
    fn yang_baxterize_endpoints() {
        let b = bgr_eight_vertex(Sign::Plus, 0.0, Convention::Normalized);
        assert!(yang_baxterize(&b, 0.0).unwrap().bit_identical(&b.matrix));
        let r1 = yang_baxterize(&b, 1.0).unwrap();
        let target = ComplexMatrix::identity(4).scale_real(2f64.sqrt());
        assert!((&r1 - &target).frobenius_norm() < 1e-12);
    }

    #[test]
    fn unscaled_yang_baxterization_reproduces_printed_r_of_x() {
        // b + x·Λ₁Λ₂·b⁻¹ with Λ₁Λ₂ = 2 equals (1+x)·I + (1−x)·K for the
        // corrected pattern K.
        let b = bgr_eight_vertex(Sign::Plus, 0.6, Convention::Unscaled);
        let x = 0.35;
        let r = yang_baxterize(&b, x).unwrap();
        let k = &b.matrix - &ComplexMatrix::identity(4);
        let expected = &ComplexMatrix::identity(4).scale_real(1.0 + x) + &k.scale_real(1.0 - x);
        assert!((&r - &expected).frobenius_norm() < 1e-13);
    }

    #[test]
    fn qybe_examples() {
        let id = |_: f64| Ok(ComplexMatrix::identity(4));
        assert_eq!(check_qybe(id, 0.3, 0.6, 1e-13).unwrap().residual, 0.0);
        let sw = |_: f64| Ok(swap());
        assert!(check_qybe(sw, 0.3, 0.6, 1e-13).unwrap().passed);
        let b = bgr_eight_vertex(Sign::Plus, 0.9, Convention::Normalized);
        let fam = |x: f64| yang_baxterize(&b, x);
        assert!(check_qybe(fam, 0.3, 0.6, 1e-10).unwrap().passed);
        for x in [0.25, 0.5, 0.8] {
            for y in [0.25, 0.5, 0.8] {
                assert!(check_qybe(fam, x, y, 1e-10).unwrap().passed);
            }
        }
        assert!(check_qybe(fam, 0.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn printed_yang_baxterization_fails() {
        let b = bgr_eight_vertex(Sign::Plus, 0.0, Convention::Normalized);
        let fam = |x: f64| yang_baxterize_printed(&b, x);
        assert!(check_qybe(fam, 0.5, 0.5, 1e-10).unwrap().residual > 1e-3);
    }

    #[test]
    fn r_trig_examples() {
        let b = bgr_eight_vertex(Sign::Plus, 1.3, Convention::Normalized).matrix;
        assert!((&r_trig(Sign::Plus, 0.0, 1.3) - &b).frobenius_norm() < 1e-15);
        let r = r_trig(Sign::Plus, FRAC_PI_4, 0.0);
        assert!((&r - &ComplexMatrix::identity(4)).frobenius_norm() < 1e-12);
        assert!(
            r_trig(Sign::Minus, 0.7, 1.3)
                .is_unitary(1e-12)
                .unwrap()
                .unitary
        );
    }

    #[test]
    fn spectral_params_relation() {
        for x in [0.0, 0.3, 1.0, 7.5] {
            let p = SpectralParams::from_x(x).unwrap();
            assert!(p.relation_residual() < 1e-12);
            assert!((0.0..std::f64::consts::FRAC_PI_2).contains(&p.theta()));
        }
        assert!(SpectralParams::from_x(-1.0).is_err());
        let p = SpectralParams::from_theta(0.4).unwrap();
        assert!(p.relation_residual() < 1e-12);
    }

    #[test]
    fn hamiltonian_at_phi_zero() {
        let h = hamiltonian_from_braid(Sign::Plus, 0.0);
        assert!(h.hermiticity_residual().unwrap() < 1e-12);
        let vals = hermitian_eigen(&h).unwrap().values;
        let expected = [-0.5, -0.5, 0.5, 0.5];
        for (v, e) in vals.iter().zip(&expected) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn hamiltonian_at_phi_pi_matches_pattern() {
        for sign in Sign::BOTH {
            let s = sign.value();
            let h = hamiltonian_from_braid(sign, PI);
            let pattern = ComplexMatrix::from_real_rows(&[
                [0.0, 0.0, 0.0, 1.0],
                [0.0, 0.0, -s, 0.0],
                [0.0, s, 0.0, 0.0],
                [-1.0, 0.0, 0.0, 0.0],
            ])
            .scale(I * 0.5);
            let (k, resid) = scale_against(&h, &pattern).unwrap();
            assert!((k - 1.0).abs() < 1e-12);
            assert!(resid < 1e-12);
        }
    }

    #[test]
    fn hamiltonian_matches_printed_with_unit_scale() {
        for sign in Sign::BOTH {
            for phi in [0.0, 0.4, 2.2, 5.0] {
                let h = hamiltonian_from_braid(sign, phi);
                assert!(h.hermiticity_residual().unwrap() < 1e-12);
                let (k, resid) = scale_against(&h, &printed_hamiltonian(sign, phi)).unwrap();
                assert!((k - 1.0).abs() < 1e-12 && resid < 1e-12);
            }
        }
    }
}
