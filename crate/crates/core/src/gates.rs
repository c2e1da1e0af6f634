//! Qubit states, single- and two-qubit gates, the Clifford-algebra
//! matrices, and the braiding decomposition of CNOT.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::braid::{bgr_eight_vertex, Convention, Sign};
use crate::linalg::{
    c, distance_up_to_phase, kron_vec, norm, ComparisonReport, ComplexMatrix, I, ONE, ZERO,
};
use crate::tolerance;
use crate::{Error, Result};

/// Common interface of normalized pure states.
pub trait PureState: Sized {
    const DIM: usize;
    fn amplitudes(&self) -> &[Complex64];
    /// Wraps amplitudes without checking normalization.
    fn from_amplitudes_unchecked(amps: Vec<Complex64>) -> Self;
}

fn check_amplitudes(amps: &[Complex64], dim: usize) -> Result<()> {
    if amps.len() != dim {
        return Err(Error::BadShape {
            len: amps.len(),
            expected: dim,
        });
    }
    if let Some(index) = amps
        .iter()
        .position(|z| !(z.re.is_finite() && z.im.is_finite()))
    {
        return Err(Error::NonFinite { index });
    }
    let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > tolerance::EXACT {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok(())
}

fn normalize(amps: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = norm(amps);
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::invalid(
            "cannot normalize a zero or non-finite vector",
        ));
    }
    Ok(amps.iter().map(|z| z / n).collect())
}

/// `ψ₀|0⟩ + ψ₁|1⟩` with unit norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    amps: [Complex64; 2],
}

impl QubitState {
    pub fn new(psi0: Complex64, psi1: Complex64) -> Result<Self> {
        check_amplitudes(&[psi0, psi1], 2)?;
        Ok(Self { amps: [psi0, psi1] })
    }

    /// Scales an arbitrary nonzero vector to unit norm.
    pub fn normalized(psi0: Complex64, psi1: Complex64) -> Result<Self> {
        let v = normalize(&[psi0, psi1])?;
        Ok(Self { amps: [v[0], v[1]] })
    }

    pub fn zero() -> Self {
        Self { amps: [ONE, ZERO] }
    }

    pub fn one() -> Self {
        Self { amps: [ZERO, ONE] }
    }

    pub fn psi0(&self) -> Complex64 {
        self.amps[0]
    }

    pub fn psi1(&self) -> Complex64 {
        self.amps[1]
    }
}

impl PureState for QubitState {
    const DIM: usize = 2;

    fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn from_amplitudes_unchecked(amps: Vec<Complex64>) -> Self {
        Self {
            amps: [amps[0], amps[1]],
        }
    }
}

/// Two-qubit pure state over `|00⟩, |01⟩, |10⟩, |11⟩`; the first label is
/// the first tensor factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amps: [Complex64; 4],
}

impl TwoQubitState {
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        check_amplitudes(&amps, 4)?;
        Ok(Self { amps })
    }

    pub fn from_slice(amps: &[Complex64]) -> Result<Self> {
        check_amplitudes(amps, 4)?;
        Ok(Self::from_amplitudes_unchecked(amps.to_vec()))
    }

    /// Scales an arbitrary nonzero vector to unit norm.
    pub fn normalized(amps: &[Complex64]) -> Result<Self> {
        if amps.len() != 4 {
            return Err(Error::BadShape {
                len: amps.len(),
                expected: 4,
            });
        }
        Ok(Self::from_amplitudes_unchecked(normalize(amps)?))
    }

    /// Builds `a₀|00⟩ + a₁|10⟩ + a₂|01⟩ + a₃|11⟩`, the labelling used when
    /// the amplitudes are listed with the second qubit varying slowest.
    pub fn from_listing_order(a: [Complex64; 4]) -> Result<Self> {
        Self::new([a[0], a[2], a[1], a[3]])
    }

    /// Amplitudes in the `a₀|00⟩ + a₁|10⟩ + a₂|01⟩ + a₃|11⟩` labelling.
    pub fn listing_order(&self) -> [Complex64; 4] {
        let a = self.amps;
        [a[0], a[2], a[1], a[3]]
    }

    /// Basis ket `|ij⟩` with `index = 2i + j`.
    pub fn basis(index: usize) -> Result<Self> {
        if index >= 4 {
            return Err(Error::invalid(format!(
                "basis index {index} out of range 0..4"
            )));
        }
        let mut amps = [ZERO; 4];
        amps[index] = ONE;
        Ok(Self { amps })
    }

    pub fn product(a: &QubitState, b: &QubitState) -> Self {
        Self::from_amplitudes_unchecked(kron_vec(a.amplitudes(), b.amplitudes()))
    }

    pub fn amps(&self) -> [Complex64; 4] {
        self.amps
    }
}

impl PureState for TwoQubitState {
    const DIM: usize = 4;

    fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn from_amplitudes_unchecked(amps: Vec<Complex64>) -> Self {
        Self {
            amps: [amps[0], amps[1], amps[2], amps[3]],
        }
    }
}

/// Output of [`apply_gate`]; `renormalized` is set when the product drifted
/// from unit norm by more than the tolerance and was rescaled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Applied<S> {
    pub state: S,
    pub renormalized: bool,
}

pub fn apply_gate<S: PureState>(u: &ComplexMatrix, s: &S) -> Result<Applied<S>> {
    if u.shape() != (S::DIM, S::DIM) {
        return Err(Error::DimensionMismatch {
            op: "apply_gate",
            left: u.shape(),
            right: (S::DIM, 1),
        });
    }
    let check = u.is_unitary(tolerance::EIGEN)?;
    if !check.unitary {
        return Err(Error::NotUnitary {
            residual: check.residual,
        });
    }
    let out = u.mul_vec(s.amplitudes())?;
    let norm_sqr: f64 = out.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > tolerance::NORM_DRIFT {
        return Ok(Applied {
            state: S::from_amplitudes_unchecked(normalize(&out)?),
            renormalized: true,
        });
    }
    Ok(Applied {
        state: S::from_amplitudes_unchecked(out),
        renormalized: false,
    })
}

/// Quantum NOT, `M₋ = σx`.
pub fn not_gate() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

/// `√M₋ = ½[[1+i, 1−i], [1−i, 1+i]]`. Every entry is a dyadic rational, so
/// squaring it reproduces `M₋` exactly.
pub fn sqrt_not() -> ComplexMatrix {
    let p = c(0.5, 0.5);
    let m = c(0.5, -0.5);
    ComplexMatrix::from_rows(&[[p, m], [m, p]])
}

pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

/// One attempt at writing CNOT as `M·R·N` with `M = M₁⊗M₂`, `N = N₁⊗N₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct CnotDecomposition {
    pub m1: ComplexMatrix,
    pub m2: ComplexMatrix,
    pub n1: ComplexMatrix,
    pub n2: ComplexMatrix,
    pub r: ComplexMatrix,
    pub assembled: ComplexMatrix,
    pub report: ComparisonReport,
}

impl CnotDecomposition {
    fn assemble(
        m1: ComplexMatrix,
        m2: ComplexMatrix,
        r: ComplexMatrix,
        n1: ComplexMatrix,
        n2: ComplexMatrix,
    ) -> Result<Self> {
        let m = m1.kron(&m2);
        let n = n1.kron(&n2);
        let assembled = m.matmul(&r)?.matmul(&n)?;
        let report = distance_up_to_phase(&assembled, &cnot())?;
        Ok(Self {
            m1,
            m2,
            n1,
            n2,
            r,
            assembled,
            report,
        })
    }

    pub fn m(&self) -> ComplexMatrix {
        self.m1.kron(&self.m2)
    }

    pub fn n(&self) -> ComplexMatrix {
        self.n1.kron(&self.n2)
    }

    /// Entries `(i, j, assembled·e^{iδ}, cnot)` that differ by more than `tol`
    /// after removing the best global phase `δ`.
    pub fn failing_entries(&self, tol: f64) -> Vec<(usize, usize, Complex64, Complex64)> {
        let rot = crate::linalg::cis(self.report.best_global_phase);
        let target = cnot();
        let mut out = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                let got = self.assembled[(i, j)] * rot;
                if (got - target[(i, j)]).norm() > tol {
                    out.push((i, j, got, target[(i, j)]));
                }
            }
        }
        out
    }
}

fn printed_m1() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, -1.0]]).scale_real(FRAC_1_SQRT_2)
}

fn printed_m2() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[c(-1.0, 0.0), ONE], [I, I]]).scale_real(FRAC_1_SQRT_2)
}

fn printed_n1() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[ONE, I], [ONE, -I]]).scale_real(FRAC_1_SQRT_2)
}

/// The R matrix as printed alongside the decomposition, entry (4,1) = +1.
pub fn printed_r() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, -1.0, 0.0],
        [0.0, 1.0, 1.0, 0.0],
        [1.0, 0.0, 0.0, 1.0],
    ])
    .scale_real(FRAC_1_SQRT_2)
}

/// The decomposition with every matrix exactly as printed. `N₂` carries a
/// `−1/√2` prefactor, so `N` is not unitary, and `R` has rank 3.
pub fn cnot_decomposition() -> Result<CnotDecomposition> {
    let n2 = ComplexMatrix::diagonal(&[ONE, I]).scale_real(-FRAC_1_SQRT_2);
    CnotDecomposition::assemble(printed_m1(), printed_m2(), printed_r(), printed_n1(), n2)
}

/// The decomposition with two minimal repairs: `R` replaced by the unitary
/// braid matrix `b₋(0)` (entry (4,1) becomes −1) and `N₂ = −diag(1, i)`
/// (no `1/√2`). This composes to CNOT exactly up to global phase.
pub fn cnot_decomposition_corrected() -> Result<CnotDecomposition> {
    let r = bgr_eight_vertex(Sign::Minus, 0.0, Convention::Normalized).matrix;
    let n2 = ComplexMatrix::diagonal(&[ONE, I]).scale_real(-1.0);
    CnotDecomposition::assemble(printed_m1(), printed_m2(), r, printed_n1(), n2)
}

/// `P₀ = (1+γ¹)/2`, `P₁ = (1−γ¹)/2`.
pub fn projectors() -> (ComplexMatrix, ComplexMatrix) {
    let id = ComplexMatrix::identity(2);
    let g1 = crate::linalg::pauli_z();
    ((&id + &g1).scale_real(0.5), (&id - &g1).scale_real(0.5))
}

/// Two-dimensional Clifford algebra with metric `η = diag(−1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracMatrices {
    pub gamma0: ComplexMatrix,
    pub gamma1: ComplexMatrix,
    pub gamma5: ComplexMatrix,
    pub eta: ComplexMatrix,
}

impl DiracMatrices {
    pub fn gamma(&self, mu: usize) -> &ComplexMatrix {
        if mu == 0 {
            &self.gamma0
        } else {
            &self.gamma1
        }
    }

    /// Largest entry of `{γ^μ, γ^ν} − 2η^{μν}·I` over all index pairs.
    pub fn clifford_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(2);
        let mut worst = 0.0_f64;
        for mu in 0..2 {
            for nu in 0..2 {
                let ac = self
                    .gamma(mu)
                    .anticommutator(self.gamma(nu))
                    .expect("2x2 shapes");
                let rhs = id.scale(self.eta[(mu, nu)] * 2.0);
                worst = worst.max((&ac - &rhs).max_abs());
            }
        }
        worst
    }

    /// Largest entry of `{γ⁵, γ^μ}` over `μ = 0, 1`.
    pub fn gamma5_residual(&self) -> f64 {
        (0..2)
            .map(|mu| {
                self.gamma5
                    .anticommutator(self.gamma(mu))
                    .expect("2x2 shapes")
                    .max_abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `γ⁰ = iσ²`, `γ¹ = σ³`, `γ⁵ = γ⁰γ¹`, `η = diag(−1, 1)`.
pub fn dirac_matrices() -> DiracMatrices {
    let gamma0 = crate::linalg::pauli_y().scale(I);
    let gamma1 = crate::linalg::pauli_z();
    let gamma5 = &gamma0 * &gamma1;
    DiracMatrices {
        gamma0,
        gamma1,
        gamma5,
        eta: ComplexMatrix::real_diagonal(&[-1.0, 1.0]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kets_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    #[test]
    fn not_and_sqrt_not() {
        let one = apply_gate(&not_gate(), &QubitState::zero()).unwrap().state;
        assert_eq!(one, QubitState::one());
        let half = apply_gate(&sqrt_not(), &QubitState::zero()).unwrap().state;
        assert_eq!(half.amplitudes(), &[c(0.5, 0.5), c(0.5, -0.5)]);
        let sq = &sqrt_not() * &sqrt_not();
        assert_eq!((&sq - &not_gate()).max_abs(), 0.0);
        assert!(sqrt_not().is_unitary(1e-12).unwrap().unitary);
    }

    #[test]
    fn cnot_action() {
        let s = apply_gate(&cnot(), &TwoQubitState::basis(2).unwrap()).unwrap();
        assert_eq!(s.state, TwoQubitState::basis(3).unwrap());
        assert!(!s.renormalized);
        let s = apply_gate(&cnot(), &TwoQubitState::basis(0).unwrap()).unwrap();
        assert_eq!(s.state, TwoQubitState::basis(0).unwrap());
        assert_eq!(&cnot() * &cnot(), ComplexMatrix::identity(4));
    }

    #[test]
    fn apply_gate_checks() {
        let s = TwoQubitState::basis(0).unwrap();
        assert_eq!(
            apply_gate(&ComplexMatrix::identity(4), &s).unwrap().state,
            s
        );
        let flipped = apply_gate(&not_gate().kron(&ComplexMatrix::identity(2)), &s).unwrap();
        assert_eq!(flipped.state, TwoQubitState::basis(2).unwrap());
        assert!(matches!(
            apply_gate(&ComplexMatrix::identity(2), &s),
            Err(Error::DimensionMismatch { .. })
        ));
        let bad = ComplexMatrix::identity(4).scale_real(2.0);
        assert!(matches!(
            apply_gate(&bad, &s),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn apply_gate_flags_drift() {
        // Unitary within 1e-10 but stretching norms by ~1e-11.
        let u = ComplexMatrix::identity(2).scale_real(1.0 + 5e-12);
        let out = apply_gate(&u, &QubitState::zero()).unwrap();
        assert!(out.renormalized);
        assert!((norm(out.state.amplitudes()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn listing_order_constructor() {
        let a = [c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.5), c(0.0, -0.5)];
        let s = TwoQubitState::from_listing_order(a).unwrap();
        // a₁ multiplies |10⟩, a₂ multiplies |01⟩.
        assert_eq!(s.amps()[2], a[1]);
        assert_eq!(s.amps()[1], a[2]);
        assert_eq!(s.listing_order(), a);
    }

    #[test]
    fn state_validation() {
        assert!(matches!(
            QubitState::new(ONE, ONE),
            Err(Error::NotNormalized { .. })
        ));
        assert!(TwoQubitState::from_slice(&[ONE; 3]).is_err());
        let s = TwoQubitState::normalized(&[ONE; 4]).unwrap();
        assert!(kets_close(s.amplitudes(), &[c(0.5, 0.0); 4], 1e-16));
        assert!(TwoQubitState::normalized(&[ZERO; 4]).is_err());
    }

    #[test]
    fn verbatim_decomposition_does_not_reach_cnot() {
        let d = cnot_decomposition().unwrap();
        assert!(!printed_r().is_unitary(1e-12).unwrap().unitary);
        assert!(!d.n().is_unitary(1e-12).unwrap().unitary);
        assert!(d.m().is_unitary(1e-12).unwrap().unitary);
        assert!(d.report.frobenius_distance > 1.0);
        assert!(!d.failing_entries(1e-12).is_empty());
        assert!((d.m()[(0, 0)] - c(-0.5, 0.0)).norm() < 1e-15);
    }

    // Oracle: triple product written out as explicit index sums.
    fn brute_product(a: &ComplexMatrix, b: &ComplexMatrix, c2: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_fn(4, 4, |i, l| {
            let mut s = ZERO;
            for j in 0..4 {
                for k in 0..4 {
                    s += a[(i, j)] * b[(j, k)] * c2[(k, l)];
                }
            }
            s
        })
    }

    #[test]
    fn corrected_decomposition_is_cnot_up_to_phase() {
        let d = cnot_decomposition_corrected().unwrap();
        assert!(d.report.frobenius_distance < 1e-12);
        assert!(d.r.is_unitary(1e-12).unwrap().unitary && d.n().is_unitary(1e-12).unwrap().unitary);
        let oracle = brute_product(&d.m(), &d.r, &d.n());
        assert!((&oracle - &d.assembled).frobenius_norm() < 1e-14);
        assert!(d.failing_entries(1e-12).is_empty());
    }

    #[test]
    fn projector_and_clifford_identities() {
        let (p0, p1) = projectors();
        let s = QubitState::normalized(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let out = p0.mul_vec(s.amplitudes()).unwrap();
        assert_eq!(out, vec![s.psi0(), ZERO]);
        assert_eq!(&p0 + &p1, ComplexMatrix::identity(2));
        assert_eq!((&p0 * &p1).max_abs(), 0.0);
        assert_eq!(&p0 * &p0, p0);

        let d = dirac_matrices();
        assert_eq!(d.clifford_residual(), 0.0);
        assert_eq!(d.gamma5_residual(), 0.0);
        let g00 = d.gamma0.anticommutator(&d.gamma0).unwrap();
        assert_eq!(g00, ComplexMatrix::identity(2).scale_real(-2.0));
        for g in [&d.gamma0, &d.gamma1, &d.gamma5] {
            assert!(g.is_unitary(1e-12).unwrap().unitary);
        }
    }
}
