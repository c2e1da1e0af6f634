//! Separability tests, the R̄ two-qubit map, phase-deformed Bell states,
//! density matrices, partial traces and entropies (in bits).

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;

use crate::braid::Sign;
use crate::gates::{PureState, QubitState, TwoQubitState};
use crate::linalg::{c, cis, hermitian_eigen, ComplexMatrix, UnitarityCheck, ONE, ZERO};
use crate::tolerance;
use crate::{Error, Result};

/// Density matrix of a qubit or a qubit pair: Hermitian, unit trace,
/// eigenvalues no lower than `−1e−10`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matches!(matrix.shape(), (2, 2) | (4, 4)) {
            return Err(Error::invalid(format!(
                "density matrix must be 2x2 or 4x4, got {:?}",
                matrix.shape()
            )));
        }
        let residual = matrix.hermiticity_residual()?;
        if residual > tolerance::EXACT {
            return Err(Error::NotHermitian { residual });
        }
        let trace = matrix.trace()?;
        if (trace - ONE).norm() > tolerance::EXACT {
            return Err(Error::invalid(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        let min = hermitian_eigen(&matrix)?.values[0];
        if min < -tolerance::CLAMP_NEGATIVE {
            return Err(Error::NonPhysical {
                min_eigenvalue: min,
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// Probabilities in `[0, 1]` summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if let Some(index) = p.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if let Some(&value) = p.iter().find(|&&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::NegativeWeight {
                context: "probability vector",
                value,
            });
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > tolerance::EXACT {
            return Err(Error::invalid(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { p })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposability {
    pub decomposable: bool,
    /// `|a₀₀a₁₁ − a₀₁a₁₀|`, half the concurrence of the state.
    pub witness: f64,
}

pub fn is_decomposable(s: &TwoQubitState, tol: f64) -> Decomposability {
    let a = s.amps();
    let witness = (a[0] * a[3] - a[1] * a[2]).norm();
    Decomposability {
        decomposable: witness < tol,
        witness,
    }
}

/// The map `R̄` with `a₀` at (1,1), `a₃` at (2,3), `a₂` at (3,2) and `a₁` at
/// (4,4). It is unitary only when every `|aᵢ| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RbarMap {
    pub matrix: ComplexMatrix,
    pub unitarity: UnitarityCheck,
}

impl RbarMap {
    /// Image of basis ket `index` in the ket-column display convention
    /// (row `index` of the matrix): `|00⟩→a₀|00⟩`, `|01⟩→a₃|10⟩`,
    /// `|10⟩→a₂|01⟩`, `|11⟩→a₁|11⟩`.
    pub fn basis_image(&self, index: usize) -> Vec<Complex64> {
        self.matrix.row(index).to_vec()
    }
}

pub fn rbar_map(a: [Complex64; 4], tol: f64) -> Result<RbarMap> {
    let matrix = ComplexMatrix::from_rows(&[
        [a[0], ZERO, ZERO, ZERO],
        [ZERO, ZERO, a[3], ZERO],
        [ZERO, a[2], ZERO, ZERO],
        [ZERO, ZERO, ZERO, a[1]],
    ]);
    let unitarity = matrix.is_unitary(tol)?;
    Ok(RbarMap { matrix, unitarity })
}

/// The four phase-deformed Bell states
/// `(|00⟩+e^{iφ}|11⟩)/√2`, `(|10⟩±|01⟩)/√2`, `(∓|01⟩+|10⟩)/√2`,
/// `(−e^{−iφ}|00⟩+|11⟩)/√2`, listed as the images of `|00⟩…|11⟩` under
/// `b±(φ)`.
pub fn bell_states(sign: Sign, phi: f64) -> [TwoQubitState; 4] {
    let s = sign.value();
    let h = FRAC_1_SQRT_2;
    let q = cis(phi);
    let raw = [
        [c(h, 0.0), ZERO, ZERO, q * h],
        [ZERO, c(s * h, 0.0), c(h, 0.0), ZERO],
        [ZERO, c(-s * h, 0.0), c(h, 0.0), ZERO],
        [-q.inv() * h, ZERO, ZERO, c(h, 0.0)],
    ];
    raw.map(|a| TwoQubitState::from_amplitudes_unchecked(a.to_vec()))
}

/// `|ψ⟩⟨ψ|`
pub fn density_matrix<S: PureState>(s: &S) -> DensityMatrix {
    let a = s.amplitudes();
    DensityMatrix {
        matrix: ComplexMatrix::outer(a, a),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Traces out the subsystem not listed in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::invalid(
            "partial_trace needs a two-qubit density matrix",
        ));
    }
    let m = rho.matrix();
    let reduced = ComplexMatrix::from_fn(2, 2, |i, j| match keep {
        Subsystem::First => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
        Subsystem::Second => m[(i, j)] + m[(2 + i, 2 + j)],
    });
    Ok(DensityMatrix { matrix: reduced })
}

fn entropy_bits(p: impl IntoIterator<Item = f64>) -> f64 {
    let h: f64 = p
        .into_iter()
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.log2())
        .sum();
    // Cancellation can leave −0.0 or a tiny negative for pure inputs.
    h.max(0.0)
}

/// `−Σ p log₂ p` with `0·log₂0 = 0`.
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    entropy_bits(p.as_slice().iter().copied())
}

/// `−Tr ρ log₂ ρ`; eigenvalues in `[−1e−10, 0)` are clamped to zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let values = hermitian_eigen(rho.matrix())?.values;
    let mut clamped = Vec::with_capacity(values.len());
    for v in values {
        if v < -tolerance::CLAMP_NEGATIVE {
            return Err(Error::NegativeWeight {
                context: "density-matrix eigenvalue",
                value: v,
            });
        }
        clamped.push(v.max(0.0));
    }
    Ok(entropy_bits(clamped))
}

/// Von Neumann entropy of the first-qubit marginal.
pub fn entanglement_entropy(s: &TwoQubitState) -> Result<f64> {
    von_neumann_entropy(&partial_trace(&density_matrix(s), Subsystem::First)?)
}

fn random_amplitudes<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if crate::linalg::norm(&v) > 1e-3 {
            return v;
        }
    }
}

pub fn random_qubit_state<R: Rng>(rng: &mut R) -> QubitState {
    let v = random_amplitudes(rng, 2);
    QubitState::normalized(v[0], v[1]).expect("nonzero vector")
}

pub fn random_two_qubit_state<R: Rng>(rng: &mut R) -> TwoQubitState {
    TwoQubitState::normalized(&random_amplitudes(rng, 4)).expect("nonzero vector")
}

pub fn random_product_state<R: Rng>(rng: &mut R) -> TwoQubitState {
    TwoQubitState::product(&random_qubit_state(rng), &random_qubit_state(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{bgr_eight_vertex, Convention};
    use crate::linalg::{distance_up_to_phase, inner};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn state(v: [f64; 4]) -> TwoQubitState {
        TwoQubitState::normalized(&v.map(|x| c(x, 0.0))).unwrap()
    }

    #[test]
    fn decomposability_examples() {
        let z = state([1.0, 1.0, 1.0, 1.0]);
        let d = is_decomposable(&z, 1e-12);
        assert!(d.decomposable && d.witness < 1e-16);
        let e = state([0.0, 1.0, 1.0, 0.0]);
        let d = is_decomposable(&e, 1e-12);
        assert!(!d.decomposable && (d.witness - 0.5).abs() < 1e-15);
        assert_eq!(
            is_decomposable(&TwoQubitState::basis(0).unwrap(), 1e-12).witness,
            0.0
        );
    }

    #[test]
    fn witness_matches_listing_labels() {
        // In a₀|00⟩ + a₁|10⟩ + a₂|01⟩ + a₃|11⟩ labels, the R̄ output
        // a₀|00⟩ + a₂|01⟩ + a₃|10⟩ + a₁|11⟩ is a product iff a₀a₁ = a₂a₃.
        let a = [c(0.5, 0.0), c(0.0, 0.5), c(0.5, 0.0), c(0.0, 0.5)];
        let s = TwoQubitState::new([a[0], a[2], a[3], a[1]]).unwrap();
        let w = is_decomposable(&s, 1e-12).witness;
        assert!((w - (a[0] * a[1] - a[2] * a[3]).norm()).abs() < 1e-16);
    }

    #[test]
    fn rbar_examples() {
        let r = rbar_map([ONE; 4], 1e-12).unwrap();
        assert!(r.unitarity.unitary);
        let alpha = 0.7;
        let r = rbar_map([ONE, ONE, cis(alpha), cis(-alpha)], 1e-12).unwrap();
        assert!(r.unitarity.unitary);
        let r = rbar_map([c(0.5, 0.0); 4], 1e-12).unwrap();
        assert!(!r.unitarity.unitary);

        let a = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)];
        let r = rbar_map(a, 1e-12).unwrap();
        assert_eq!(r.basis_image(0), vec![a[0], ZERO, ZERO, ZERO]);
        assert_eq!(r.basis_image(1), vec![ZERO, ZERO, a[3], ZERO]);
        assert_eq!(r.basis_image(2), vec![ZERO, a[2], ZERO, ZERO]);
        assert_eq!(r.basis_image(3), vec![ZERO, ZERO, ZERO, a[1]]);
    }

    #[test]
    fn bell_state_examples() {
        let b = bell_states(Sign::Plus, 0.0);
        let expected = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        for (x, e) in b[0].amplitudes().iter().zip(expected) {
            assert!((x - c(e, 0.0)).norm() < 1e-16);
        }
        let b = bell_states(Sign::Plus, PI);
        assert!((b[0].amplitudes()[3] + c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bell_states_are_braid_rows_up_to_phase() {
        for sign in Sign::BOTH {
            for phi in [0.0, 0.5, 2.0] {
                let b = bgr_eight_vertex(sign, phi, Convention::Normalized);
                for (k, s) in bell_states(sign, phi).iter().enumerate() {
                    let row = ComplexMatrix::column(&b.display_image(k));
                    let col = ComplexMatrix::column(s.amplitudes());
                    let r = distance_up_to_phase(&row, &col).unwrap();
                    assert!(r.frobenius_distance < 1e-13, "{sign} {phi} {k}");
                    let expected_phase = if sign == Sign::Minus && k == 1 {
                        PI
                    } else {
                        0.0
                    };
                    assert!((r.best_global_phase - expected_phase).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn bell_states_orthonormal_and_maximally_entangled() {
        for sign in Sign::BOTH {
            for k in 0..16 {
                let phi = 2.0 * PI * k as f64 / 16.0;
                let b = bell_states(sign, phi);
                for i in 0..4 {
                    for j in 0..4 {
                        let ip = inner(b[i].amplitudes(), b[j].amplitudes());
                        let expected = if i == j { ONE } else { ZERO };
                        assert!((ip - expected).norm() < 1e-12);
                    }
                    assert!((entanglement_entropy(&b[i]).unwrap() - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn density_and_partial_trace() {
        let rho = density_matrix(&QubitState::zero());
        assert_eq!(rho.matrix(), &ComplexMatrix::real_diagonal(&[1.0, 0.0]));
        let q = QubitState::normalized(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let rho = density_matrix(&q);
        assert_eq!(rho.matrix()[(0, 1)], q.psi0() * q.psi1().conj());

        let bell = density_matrix(&bell_states(Sign::Plus, 0.0)[0]);
        for keep in [Subsystem::First, Subsystem::Second] {
            let m = partial_trace(&bell, keep).unwrap();
            assert!((m.matrix() - &ComplexMatrix::identity(2).scale_real(0.5)).max_abs() < 1e-15);
        }
    }

    #[test]
    fn entropy_examples() {
        let half = ProbabilityVector::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(shannon_entropy(&half), 1.0);
        let pure = density_matrix(&bell_states(Sign::Minus, 0.3)[2]);
        assert!(von_neumann_entropy(&pure).unwrap() < 1e-10);
        let p = vec![0.1, 0.2, 0.3, 0.4];
        let rho = DensityMatrix::new(ComplexMatrix::real_diagonal(&p)).unwrap();
        let pv = ProbabilityVector::new(p).unwrap();
        assert!((von_neumann_entropy(&rho).unwrap() - shannon_entropy(&pv)).abs() < 1e-12);
        assert_eq!(
            entanglement_entropy(&TwoQubitState::basis(0).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn rejects_unphysical_inputs() {
        assert!(ProbabilityVector::new(vec![1.2, -0.2]).is_err());
        assert!(ProbabilityVector::new(vec![0.3, 0.3]).is_err());
        let m = ComplexMatrix::real_diagonal(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NonPhysical { .. })
        ));
        assert!(DensityMatrix::new(ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn phase_does_not_change_bell_entropy() {
        for phi in [0.5, 1.5, 3.0] {
            let s = bell_states(Sign::Plus, phi)[0];
            assert!((entanglement_entropy(&s).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn decomposable_iff_zero_entropy_on_seeded_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let s = random_two_qubit_state(&mut rng);
            let d = is_decomposable(&s, 1e-8).decomposable;
            assert_eq!(d, entanglement_entropy(&s).unwrap() < 1e-8);
        }
        for _ in 0..20 {
            let s = random_product_state(&mut rng);
            assert!(is_decomposable(&s, 1e-8).decomposable);
            assert!(entanglement_entropy(&s).unwrap() < 1e-8);
        }
    }
}
