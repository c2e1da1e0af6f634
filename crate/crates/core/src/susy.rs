//! Discretized supersymmetric quantum mechanics: ladder operators
//! `A⁻ ≈ d/dx + v`, `A⁺ = (A⁻)ᵀ`, partner Hamiltonians `H₀ = A⁺A⁻`,
//! `H₁ = A⁻A⁺`, supercharges on the doubled space and the two-level
//! correspondence with √NOT.
//!
//! Operators are real and banded, so they are held as sparse CSR matrices;
//! [`to_dense`] converts for small-size checks.

use sprs::{CsMat, TriMat};

use crate::gates::{not_gate, sqrt_not};
use crate::linalg::{pauli_z, ComplexMatrix, SymmetricTridiagonal};
use crate::{Error, Result};

/// Superpotential samples `v(x_min + i·dx)`, `i = 0..n`, Dirichlet beyond.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpotentialProblem {
    x_min: f64,
    dx: f64,
    v: Vec<f64>,
}

impl SuperpotentialProblem {
    pub fn new(x_min: f64, dx: f64, v: Vec<f64>) -> Result<Self> {
        if !(dx > 0.0 && dx.is_finite() && x_min.is_finite()) {
            return Err(Error::invalid(format!(
                "dx must be positive and finite, got {dx}"
            )));
        }
        if v.len() < 3 {
            return Err(Error::invalid(format!(
                "need at least 3 grid points, got {}",
                v.len()
            )));
        }
        if let Some(index) = v.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { x_min, dx, v })
    }

    pub fn from_fn(v: impl Fn(f64) -> f64, x_min: f64, dx: f64, n_points: usize) -> Result<Self> {
        let samples = (0..n_points).map(|i| v(x_min + dx * i as f64)).collect();
        Self::new(x_min, dx, samples)
    }

    /// Grid of `n_points` centred on 0. With `dx` a power of two and moderate
    /// `n_points`, every grid point is exactly representable.
    pub fn centered(v: impl Fn(f64) -> f64, dx: f64, n_points: usize) -> Result<Self> {
        let x_min = -dx * (n_points as f64 - 1.0) / 2.0;
        Self::from_fn(v, x_min, dx, n_points)
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + self.dx * i as f64
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn n_points(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }
}

/// Superpotentials used by the CLI and the tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Superpotential {
    /// `v = x`: `H₀ = −d² + x² − 1`, levels `0, 2, 4, …`; `H₁` levels `2, 4, …`.
    Oscillator,
    /// `v = c`: both partners approximate `−d² + c²` in the bulk.
    Constant(f64),
}

impl Superpotential {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Superpotential::Oscillator => x,
            Superpotential::Constant(c) => c,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SusyPair {
    pub n: usize,
    pub a_minus: CsMat<f64>,
    pub a_plus: CsMat<f64>,
    pub h0: CsMat<f64>,
    pub h1: CsMat<f64>,
    /// `[[0, A⁺], [0, 0]]`
    pub q_plus: CsMat<f64>,
    /// `[[0, 0], [A⁻, 0]]`
    pub q_minus: CsMat<f64>,
    pub q_charge: CsMat<f64>,
    /// `σ₃ ⊗ I_n`
    pub grading: CsMat<f64>,
}

fn blocks(n: usize, parts: &[(usize, usize, &CsMat<f64>)]) -> CsMat<f64> {
    let mut t = TriMat::new((2 * n, 2 * n));
    for &(bi, bj, m) in parts {
        for (v, (i, j)) in m.iter() {
            t.add_triplet(bi * n + i, bj * n + j, *v);
        }
    }
    t.to_csr()
}

/// `A⁻ = D + diag(v)` with `(Df)_i = (f_{i+1} − f_i)/dx` and `f_n = 0`;
/// `A⁺ = (A⁻)ᵀ`. Positivity of `H₀`, `H₁` and the intertwining relations
/// then hold by construction; discretization error sits only in the spectra.
pub fn build_susy_pair(p: &SuperpotentialProblem) -> SusyPair {
    let n = p.n_points();
    let inv = 1.0 / p.dx;
    let mut t = TriMat::new((n, n));
    for i in 0..n {
        t.add_triplet(i, i, p.v[i] - inv);
        if i + 1 < n {
            t.add_triplet(i, i + 1, inv);
        }
    }
    let a_minus: CsMat<f64> = t.to_csr();
    let a_plus: CsMat<f64> = a_minus.transpose_view().to_csr();
    let h0 = &a_plus * &a_minus;
    let h1 = &a_minus * &a_plus;
    let q_plus = blocks(n, &[(0, 1, &a_plus)]);
    let q_minus = blocks(n, &[(1, 0, &a_minus)]);
    let q_charge = &q_plus + &q_minus;
    let eye: CsMat<f64> = CsMat::eye(n);
    let neg_eye = eye.map(|x| -x);
    let grading = blocks(n, &[(0, 0, &eye), (1, 1, &neg_eye)]);
    SusyPair {
        n,
        a_minus,
        a_plus,
        h0,
        h1,
        q_plus,
        q_minus,
        q_charge,
        grading,
    }
}

pub fn frobenius(m: &CsMat<f64>) -> f64 {
    m.data().iter().fold(0.0, |a, x| a + x * x).sqrt()
}

pub fn max_abs(m: &CsMat<f64>) -> f64 {
    m.data().iter().fold(0.0, |a, x| a.max(x.abs()))
}

pub fn to_dense(m: &CsMat<f64>) -> ComplexMatrix {
    let mut d = ComplexMatrix::zeros(m.rows(), m.cols());
    for (v, (i, j)) in m.iter() {
        d[(i, j)] += *v;
    }
    d
}

pub fn mul_vec(m: &CsMat<f64>, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != m.cols() {
        return Err(Error::DimensionMismatch {
            op: "sparse mul_vec",
            left: m.shape(),
            right: (x.len(), 1),
        });
    }
    Ok(m.outer_iterator()
        .map(|row| row.iter().map(|(j, v)| v * x[j]).sum())
        .collect())
}

/// Band of a sparse real symmetric tridiagonal matrix.
pub fn tridiagonal_of(m: &CsMat<f64>) -> Result<SymmetricTridiagonal> {
    let n = m.rows();
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n.saturating_sub(1)];
    let mut lower = vec![0.0; n.saturating_sub(1)];
    for (v, (i, j)) in m.iter() {
        match j as isize - i as isize {
            0 => diag[i] += v,
            1 => upper[i] += v,
            -1 => lower[j] += v,
            _ if *v == 0.0 => {}
            _ => return Err(Error::invalid("operator is not tridiagonal")),
        }
    }
    if let Some(k) = (0..upper.len()).find(|&k| upper[k] != lower[k]) {
        return Err(Error::NotHermitian {
            residual: (upper[k] - lower[k]).abs(),
        });
    }
    SymmetricTridiagonal::new(diag, upper)
}

/// Superalgebra identities of a pair, each as a largest-entry residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperalgebraCheck {
    pub q_plus_squared: f64,
    pub q_minus_squared: f64,
    /// `{Q⁺, Q⁻} − diag(H₀, H₁)`
    pub anticommutator: f64,
    /// `{Q, σ₃ ⊗ I}`
    pub grading_anticommutator: f64,
}

pub fn check_superalgebra(pair: &SusyPair) -> SuperalgebraCheck {
    let qp2 = &pair.q_plus * &pair.q_plus;
    let qm2 = &pair.q_minus * &pair.q_minus;
    let ac = &(&pair.q_plus * &pair.q_minus) + &(&pair.q_minus * &pair.q_plus);
    let h = blocks(pair.n, &[(0, 0, &pair.h0), (1, 1, &pair.h1)]);
    let g = &(&pair.q_charge * &pair.grading) + &(&pair.grading * &pair.q_charge);
    SuperalgebraCheck {
        q_plus_squared: max_abs(&qp2),
        q_minus_squared: max_abs(&qm2),
        anticommutator: max_abs(&(&ac - &h)),
        grading_anticommutator: max_abs(&g),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntertwiningResiduals {
    /// `‖H₀A⁺ − A⁺H₁‖_F`
    pub plus: f64,
    /// `‖A⁻H₀ − H₁A⁻‖_F`
    pub minus: f64,
    /// `‖A⁻H₁ − H₀A⁻‖_F`. This ordering is not an identity: in the
    /// continuum with `v = x` the difference is `2A⁻`, so the residual is
    /// large and does not enter `passed`.
    pub printed_minus: f64,
    /// `‖H₀‖_F·‖A⁺‖_F`, the natural size of either product.
    pub scale: f64,
    pub passed: bool,
}

/// Checks `H₀A⁺ = A⁺H₁` and `A⁻H₀ = H₁A⁻` against an absolute `tol`.
///
/// With `H₀ = A⁺A⁻` and `H₁ = A⁻A⁺` both sides are the same triple product
/// grouped differently, so residuals are pure rounding; on a dyadic grid
/// with a polynomial superpotential they vanish.
pub fn check_intertwining(pair: &SusyPair, tol: f64) -> IntertwiningResiduals {
    let plus = frobenius(&(&(&pair.h0 * &pair.a_plus) - &(&pair.a_plus * &pair.h1)));
    let minus = frobenius(&(&(&pair.a_minus * &pair.h0) - &(&pair.h1 * &pair.a_minus)));
    let printed_minus = frobenius(&(&(&pair.a_minus * &pair.h1) - &(&pair.h0 * &pair.a_minus)));
    IntertwiningResiduals {
        plus,
        minus,
        printed_minus,
        scale: frobenius(&pair.h0) * frobenius(&pair.a_plus),
        passed: plus < tol && minus < tol,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DegeneracyRow {
    pub k: usize,
    #[serde(rename = "E0")]
    pub e0: f64,
    #[serde(rename = "E1")]
    pub e1: f64,
    pub rel_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyReport {
    pub energy_floor: f64,
    pub tol_rel: f64,
    /// `H₀` levels at or below the floor (the zero mode).
    pub h0_below_floor: Vec<f64>,
    /// `H₁` levels at or below the floor. On a finite square lattice `H₀` and
    /// `H₁` are isospectral, so the zero mode reappears here.
    pub h1_below_floor: Vec<f64>,
    pub rows: Vec<DegeneracyRow>,
    /// Indices into `rows` whose relative gap exceeds `tol_rel`.
    pub unmatched: Vec<usize>,
    pub extra_h0: Vec<f64>,
    pub extra_h1: Vec<f64>,
    pub min_eigenvalue: f64,
}

impl DegeneracyReport {
    pub fn all_matched(&self) -> bool {
        self.unmatched.is_empty() && self.extra_h0.is_empty() && self.extra_h1.is_empty()
    }
}

/// Pairs the levels of `H₀` and `H₁` above `energy_floor` in ascending
/// order and reports the relative gap of each pair.
pub fn spectrum_degeneracy_report(
    pair: &SusyPair,
    energy_floor: f64,
    tol_rel: f64,
) -> Result<DegeneracyReport> {
    let e0 = tridiagonal_of(&pair.h0)?.eigenvalues()?;
    let e1 = tridiagonal_of(&pair.h1)?.eigenvalues()?;
    let min_eigenvalue = e0[0].min(e1[0]);
    let split = |e: &[f64]| -> (Vec<f64>, Vec<f64>) { e.iter().partition(|&&x| x <= energy_floor) };
    let (h0_below_floor, up0) = split(&e0);
    let (h1_below_floor, up1) = split(&e1);
    let m = up0.len().min(up1.len());
    let rows: Vec<DegeneracyRow> = (0..m)
        .map(|k| {
            let (a, b) = (up0[k], up1[k]);
            DegeneracyRow {
                k,
                e0: a,
                e1: b,
                rel_gap: (a - b).abs() / a.abs().max(b.abs()),
            }
        })
        .collect();
    let unmatched = rows
        .iter()
        .filter(|r| r.rel_gap > tol_rel)
        .map(|r| r.k)
        .collect();
    Ok(DegeneracyReport {
        energy_floor,
        tol_rel,
        h0_below_floor,
        h1_below_floor,
        rows,
        unmatched,
        extra_h0: up0[m..].to_vec(),
        extra_h1: up1[m..].to_vec(),
        min_eigenvalue,
    })
}

/// Lowest eigenpair of `H₀`; the vector has unit Euclidean norm.
pub fn h0_ground_state(pair: &SusyPair) -> Result<(f64, Vec<f64>)> {
    let (vals, mut vecs) = tridiagonal_of(&pair.h0)?.lowest_eigenpairs(1)?;
    Ok((vals[0], vecs.remove(0)))
}

/// `Qψ` for `ψ` in the doubled space (upper half: grading +1 sector).
pub fn supercharge_action(pair: &SusyPair, psi: &[f64]) -> Result<Vec<f64>> {
    mul_vec(&pair.q_charge, psi)
}

/// `⟨ψ|σ₃⊗I|ψ⟩ / ⟨ψ|ψ⟩`
pub fn grading_expectation(pair: &SusyPair, psi: &[f64]) -> Result<f64> {
    let g = mul_vec(&pair.grading, psi)?;
    let num: f64 = psi.iter().zip(&g).map(|(a, b)| a * b).sum();
    let den: f64 = psi.iter().map(|a| a * a).sum();
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SqrtNotCorrespondence {
    /// Largest entry of `{M₋, σ₃}`: the two-level supercharge is odd.
    pub grading_anticommutator: f64,
    /// Largest entry of `(√M₋)² − M₋`.
    pub square_residual: f64,
    /// `√M₋·√M₋|0⟩` and `√M₋·√M₋|1⟩`.
    pub double_action: [[num_complex::Complex64; 2]; 2],
    /// Two-level truncation: `Q⁻ = Q⁰` lowers the grading, `Q⁺ = Q¹` raises it,
    /// and `Q = Q⁺ + Q⁻` acts as `M₋`.
    pub table: Vec<(&'static str, &'static str)>,
}

pub fn sqrt_not_correspondence() -> SqrtNotCorrespondence {
    let m = not_gate();
    let tau = pauli_z();
    let root = sqrt_not();
    let sq = &root * &root;
    let act = |k: usize| {
        let mut e = [num_complex::Complex64::new(0.0, 0.0); 2];
        e[k] = 1.0.into();
        let v = sq.mul_vec(&e).expect("2x2");
        [v[0], v[1]]
    };
    SqrtNotCorrespondence {
        grading_anticommutator: m.anticommutator(&tau).expect("2x2").max_abs(),
        square_residual: (&sq - &m).max_abs(),
        double_action: [act(0), act(1)],
        table: vec![
            ("Q^0 = Q^- : |0> (S=+1)", "|1> (S=-1), as M_-|0> = |1>"),
            ("Q^1 = Q^+ : |1> (S=-1)", "|0> (S=+1), as M_-|1> = |0>"),
            ("Q = Q^+ + Q^-", "M_- = sqrt(M_-) sqrt(M_-)"),
            ("tau = sigma_3", "{Q, tau} = 0"),
        ],
    }
}
