//! Two-kaon entangled states, the CP-admixture mixture ρ(ε, λ), the
//! Horodecki Bell-violation quantity, entropy formulas for a contaminated
//! kaon source and the separability boundary obtained from them.
//!
//! Entropies here are in nats; [`nats_to_bits`] converts.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use num_complex::Complex64;
use serde::Serialize;

use crate::braid::Sign;
use crate::entanglement::{bell_states, DensityMatrix};
use crate::gates::TwoQubitState;
use crate::linalg::{c, hermitian_eigen, pauli_x, pauli_y, pauli_z, ComplexMatrix, ONE, ZERO};
use crate::tolerance;
use crate::{Error, Result};

/// The printed comparison value for the single-kaon boundary, read as 0.71033.
pub const PRINTED_ALPHA_READING: f64 = 0.71033;

/// Flavor label of one kaon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    K,
    KBar,
}

/// Fixed qubit encoding `|K⟩ ↦ |0⟩`, `|K̄⟩ ↦ |1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KaonEncoding;

impl KaonEncoding {
    pub fn qubit(self, f: Flavor) -> usize {
        match f {
            Flavor::K => 0,
            Flavor::KBar => 1,
        }
    }

    pub fn flavor(self, bit: usize) -> Result<Flavor> {
        match bit {
            0 => Ok(Flavor::K),
            1 => Ok(Flavor::KBar),
            _ => Err(Error::invalid(format!("no flavor for qubit value {bit}"))),
        }
    }

    /// Two-kaon basis index of `|f₁ f₂⟩`.
    pub fn pair_index(self, first: Flavor, second: Flavor) -> usize {
        2 * self.qubit(first) + self.qubit(second)
    }

    /// Labels of the two-kaon basis in canonical order.
    pub fn pair_labels(self) -> [&'static str; 4] {
        ["KK", "KKbar", "KbarK", "KbarKbar"]
    }
}

/// `Φ₁ = (|KK⟩+|K̄K̄⟩)/√2`, `Φ₂ = (|KK⟩−|K̄K̄⟩)/√2`,
/// `Φ₃ = (|KK̄⟩+|K̄K⟩)/√2`, `Φ₄ = (|KK̄⟩−|K̄K⟩)/√2`.
pub fn kaon_bell_states() -> [TwoQubitState; 4] {
    let enc = KaonEncoding;
    let pair = |a: (Flavor, Flavor), b: (Flavor, Flavor), sign: f64| {
        let mut amps = [ZERO; 4];
        amps[enc.pair_index(a.0, a.1)] = c(FRAC_1_SQRT_2, 0.0);
        amps[enc.pair_index(b.0, b.1)] = c(sign * FRAC_1_SQRT_2, 0.0);
        TwoQubitState::new(amps).expect("unit norm by construction")
    };
    use Flavor::{KBar, K};
    [
        pair((K, K), (KBar, KBar), 1.0),
        pair((K, K), (KBar, KBar), -1.0),
        pair((K, KBar), (KBar, K), 1.0),
        pair((K, KBar), (KBar, K), -1.0),
    ]
}

/// Phase-deformed Bell states in the kaon encoding; amplitudes coincide with
/// [`bell_states`] since the encoding maps `K, K̄` to `0, 1`.
pub fn deformed_kaon_states(sign: Sign, phi: f64) -> [TwoQubitState; 4] {
    bell_states(sign, phi)
}

/// Mixture parameters: complex CP admixture `ε` and fraction `λ ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KaonMixture {
    epsilon: Complex64,
    lambda: f64,
}

impl KaonMixture {
    pub fn new(epsilon: Complex64, lambda: f64) -> Result<Self> {
        if !(epsilon.re.is_finite() && epsilon.im.is_finite()) {
            return Err(Error::invalid("epsilon must be finite"));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::invalid(format!(
                "lambda must lie in [0, 1], got {lambda}"
            )));
        }
        Ok(Self { epsilon, lambda })
    }

    pub fn epsilon(&self) -> Complex64 {
        self.epsilon
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `t = |ε|/(1+|ε|²)`
    pub fn t(&self) -> f64 {
        t_of(self.epsilon.norm())
    }
}

fn t_of(abs_eps: f64) -> f64 {
    abs_eps / (1.0 + abs_eps * abs_eps)
}

/// `ρ = ¼[I + λ·c·(σz⊗I − I⊗σz) + (1−2λ)·σz⊗σz − 2λt·(σx⊗σx + σy⊗σy)]`
/// with `c = (1−|ε|²)/(1+|ε|²)`.
///
/// Its spectrum is `{(1−λ)/2, (1−λ)/2, λ, 0}` for every `ε`, so it is always
/// a valid state with zero determinant.
pub fn rho_mixture(m: &KaonMixture) -> Result<DensityMatrix> {
    let e2 = m.epsilon.norm_sqr();
    let cp = (1.0 - e2) / (1.0 + e2);
    let lambda = m.lambda;
    let t = m.t();
    let id = ComplexMatrix::identity(2);
    let (sx, sy, sz) = (pauli_x(), pauli_y(), pauli_z());
    let terms = [
        (1.0, id.kron(&id)),
        (lambda * cp, &sz.kron(&id) - &id.kron(&sz)),
        (1.0 - 2.0 * lambda, sz.kron(&sz)),
        (-2.0 * lambda * t, &sx.kron(&sx) + &sy.kron(&sy)),
    ];
    let mut rho = ComplexMatrix::zeros(4, 4);
    for (k, term) in &terms {
        rho = &rho + &term.scale_real(0.25 * k);
    }
    DensityMatrix::new(rho)
}

/// `max{(2λ−1)² + 4λ²t², 8λ²t²}`; Bell inequalities can be violated iff > 1.
#[allow(non_snake_case)]
pub fn horodecki_M(m: &KaonMixture) -> f64 {
    m_of(m.lambda, m.t())
}

fn m_of(lambda: f64, t: f64) -> f64 {
    let a = (2.0 * lambda - 1.0).powi(2) + 4.0 * lambda * lambda * t * t;
    let b = 8.0 * lambda * lambda * t * t;
    a.max(b)
}

/// Horodecki quantity of an arbitrary two-qubit state: the sum of the two
/// largest eigenvalues of `TᵀT`, with `T_ij = Tr ρ (σ_i ⊗ σ_j)`.
pub fn horodecki_m_from_state(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::invalid("Horodecki quantity needs a two-qubit state"));
    }
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let op = paulis[i].kron(&paulis[j]);
            t[i][j] = rho.matrix().matmul(&op)?.trace()?.re;
        }
    }
    let ttt = ComplexMatrix::from_fn(3, 3, |i, j| c((0..3).map(|k| t[k][i] * t[k][j]).sum(), 0.0));
    let vals = hermitian_eigen(&ttt)?.values;
    Ok(vals[1] + vals[2])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ViolationThreshold {
    /// `½(1 − t)⁻¹` as printed.
    pub printed_lambda: f64,
    /// Smallest `λ` with `M > 1`, or 1 when no `λ < 1` violates.
    pub derived_lambda: f64,
    /// `min(1/(1+t²), 1/(2√2·t))`, the same threshold solved in closed form.
    pub analytic_lambda: f64,
}

/// Compares the printed threshold with the one implied by `M(ρ) > 1`.
///
/// `M ≤ 1` for all `λ ≤ ½` and `M` is nondecreasing on `[½, 1]`, so the
/// derived value is found by bisection on `[½, 1]`.
pub fn violation_threshold(epsilon: Complex64) -> ViolationThreshold {
    let t = t_of(epsilon.norm());
    let printed_lambda = 0.5 / (1.0 - t);
    let analytic_lambda = if t == 0.0 {
        1.0
    } else {
        (1.0 / (1.0 + t * t))
            .min(1.0 / (2.0 * 2f64.sqrt() * t))
            .min(1.0)
    };
    let derived_lambda = if m_of(1.0, t) <= 1.0 {
        1.0
    } else {
        let (mut lo, mut hi) = (0.5, 1.0);
        while hi - lo > tolerance::BISECTION {
            let mid = 0.5 * (lo + hi);
            if m_of(mid, t) > 1.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    ViolationThreshold {
        printed_lambda,
        derived_lambda,
        analytic_lambda,
    }
}

/// `λ = 1 − 2η`, inverting the relation `η = ½(1 − λ)`.
pub fn lambda_from_eta(eta: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&eta) {
        return Err(Error::invalid(format!(
            "eta must lie in [0, 1/2], got {eta}"
        )));
    }
    Ok(1.0 - 2.0 * eta)
}

pub fn nats_to_bits(nats: f64) -> f64 {
    nats / LN_2
}

/// Source contaminated by single kaons (weight `1 − α`) and by a random
/// pair source (weight `1 − v` within the pair part).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContaminatedSource {
    alpha: f64,
    v: f64,
}

impl ContaminatedSource {
    pub fn new(alpha: f64, v: f64) -> Result<Self> {
        for (name, x) in [("alpha", alpha), ("v", v)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::invalid(format!(
                    "{name} must lie in [0, 1], got {x}"
                )));
            }
        }
        Ok(Self { alpha, v })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn v(&self) -> f64 {
        self.v
    }
}

/// `coef · ln(arg)` with the convention that a zero coefficient gives 0.
fn xlog(coef: f64, arg: f64) -> f64 {
    if coef == 0.0 {
        0.0
    } else {
        coef * arg.ln()
    }
}

/// Pair entropy as printed:
/// `−S = ¾α(1−v)·ln(α(1−v)/4) + ¼α(1+3v)·ln(α(1+3v)/4) + α(1−α)·ln((1−α)/4)`.
pub fn entropy_pair(src: &ContaminatedSource) -> f64 {
    let (a, v) = (src.alpha, src.v);
    -(xlog(0.75 * a * (1.0 - v), a * (1.0 - v) / 4.0)
        + xlog(0.25 * a * (1.0 + 3.0 * v), a * (1.0 + 3.0 * v) / 4.0)
        + xlog(a * (1.0 - a), (1.0 - a) / 4.0))
}

/// Pair entropy with last coefficient `(1−α)` instead of `α(1−α)`. This is
/// the entropy of the diagonal reading of the source (see
/// [`contaminated_source`]); the two differ only in that coefficient.
pub fn entropy_pair_diagonal_reading(src: &ContaminatedSource) -> f64 {
    let (a, v) = (src.alpha, src.v);
    -(xlog(0.75 * a * (1.0 - v), a * (1.0 - v) / 4.0)
        + xlog(0.25 * a * (1.0 + 3.0 * v), a * (1.0 + 3.0 * v) / 4.0)
        + xlog(1.0 - a, (1.0 - a) / 4.0))
}

/// Single-kaon entropy as printed:
/// `−S = ((1+α)/2)·ln((1+α)/4) + ((1−α)/2)·ln((1−α)/4)`.
pub fn entropy_single(src: &ContaminatedSource) -> f64 {
    let a = src.alpha;
    -(xlog(0.5 * (1.0 + a), (1.0 + a) / 4.0) + xlog(0.5 * (1.0 - a), (1.0 - a) / 4.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementBoundary {
    pub v: f64,
    /// Largest root in `(0, 1)` of `S_pair(α, v) − S_single(α)`, if any.
    pub alpha_star: Option<f64>,
    /// Every root found by the scan, ascending.
    pub roots: Vec<f64>,
    /// Largest value of `S_pair − S_single` seen on the scan grid.
    pub max_difference: f64,
    /// `(1/√2)/v`, from `αv > 1/√2`.
    pub printed_criterion: f64,
    pub printed_alpha_reading: f64,
}

const BOUNDARY_LO: f64 = 1e-6;
const BOUNDARY_HI: f64 = 1.0 - 1e-6;
const BOUNDARY_SCAN: usize = 4000;

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn boundary_with(v: f64, pair: fn(&ContaminatedSource) -> f64) -> Result<EntanglementBoundary> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::invalid(format!("v must lie in (0, 1], got {v}")));
    }
    let diff = |alpha: f64| {
        let src = ContaminatedSource { alpha, v };
        pair(&src) - entropy_single(&src)
    };
    let step = (BOUNDARY_HI - BOUNDARY_LO) / BOUNDARY_SCAN as f64;
    let grid: Vec<f64> = (0..=BOUNDARY_SCAN)
        .map(|i| BOUNDARY_LO + step * i as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&a| diff(a)).collect();
    let mut roots = Vec::new();
    for i in 0..BOUNDARY_SCAN {
        let (a, b) = (values[i], values[i + 1]);
        if a == 0.0 {
            roots.push(grid[i]);
        } else if (a > 0.0) != (b > 0.0) && b != 0.0 {
            roots.push(bisect(&diff, grid[i], grid[i + 1], tolerance::BISECTION));
        }
    }
    if values[BOUNDARY_SCAN] == 0.0 {
        roots.push(grid[BOUNDARY_SCAN]);
    }
    let max_difference = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(EntanglementBoundary {
        v,
        alpha_star: roots.last().copied(),
        roots,
        max_difference,
        printed_criterion: FRAC_1_SQRT_2 / v,
        printed_alpha_reading: PRINTED_ALPHA_READING,
    })
}

/// Solves `S_pair(α, v) = S_single(α)` for `α` using the printed formulas:
/// a sign-change scan over `[1e−6, 1−1e−6]`, then bisection to `1e−10` on
/// each bracket.
pub fn entanglement_boundary(v: f64) -> Result<EntanglementBoundary> {
    boundary_with(v, entropy_pair)
}

/// Same as [`entanglement_boundary`] with [`entropy_pair_diagonal_reading`].
pub fn entanglement_boundary_diagonal_reading(v: f64) -> Result<EntanglementBoundary> {
    boundary_with(v, entropy_pair_diagonal_reading)
}

/// Slot states of the source space: each of two slots holds an `S` kaon, an
/// `L` kaon, or nothing.
pub const SLOT_LABELS: [&str; 3] = ["S", "L", "0"];
const S: usize = 0;
const L: usize = 1;
const VAC: usize = 2;

fn slot_ket(a: usize, b: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; 9];
    v[3 * a + b] = ONE;
    v
}

fn dyad(a: (usize, usize), b: (usize, usize)) -> ComplexMatrix {
    ComplexMatrix::outer(&slot_ket(a.0, a.1), &slot_ket(b.0, b.1))
}

/// Spectral diagnostics of an operator offered as a density matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorDiagnostics {
    pub trace: f64,
    pub hermiticity_residual: f64,
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub physical: bool,
    /// Von Neumann entropy in nats, only when `physical`.
    pub entropy: Option<f64>,
    pub problem: Option<String>,
}

fn diagnose(m: &ComplexMatrix) -> Result<OperatorDiagnostics> {
    let trace = m.trace()?.re;
    let hermiticity_residual = m.hermiticity_residual()?;
    let eigenvalues = hermitian_eigen(m)?.values;
    let min_eigenvalue = eigenvalues[0];
    let problem = if hermiticity_residual > tolerance::EXACT {
        Some(format!("not Hermitian (residual {hermiticity_residual:e})"))
    } else if (trace - 1.0).abs() > tolerance::EXACT {
        Some(format!("trace {trace} differs from 1"))
    } else if min_eigenvalue < -tolerance::CLAMP_NEGATIVE {
        Some(format!("negative eigenvalue {min_eigenvalue:e}"))
    } else {
        None
    };
    let physical = problem.is_none();
    let entropy = physical.then(|| {
        eigenvalues
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| -x * x.ln())
            .sum::<f64>()
            .max(0.0)
    });
    Ok(OperatorDiagnostics {
        trace,
        hermiticity_residual,
        eigenvalues,
        min_eigenvalue,
        physical,
        entropy,
        problem,
    })
}

/// One assembly of `ρ(LS) = α[vρ_E + (1−v)ρ_R] + (1−α)·ρ_single`.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceReading {
    pub rho_e: ComplexMatrix,
    pub rho_r: ComplexMatrix,
    pub rho_single: ComplexMatrix,
    pub assembled: ComplexMatrix,
    pub diagnostics: OperatorDiagnostics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContaminatedSourceReport {
    pub source: ContaminatedSource,
    /// Description of the space the operators act on.
    pub layout: &'static str,
    /// Printed dyads, with `ρ_R` made Hermitian as `(X+X†)/2` and
    /// trace-normalized, and the single-kaon block taken with its minus sign.
    pub verbatim: SourceReading,
    /// `ρ_R = I/4` on the pair subspace and the single-kaon block
    /// `¼(ρ_{L,S}⊗ρ_V + ρ_V⊗ρ_{L,S})`. Its entropy reproduces the printed
    /// pair formula except for the last coefficient.
    pub diagonal: SourceReading,
    pub entropy_pair_formula: f64,
    pub entropy_pair_diagonal_formula: f64,
}

pub const SOURCE_LAYOUT: &str = "two slots, each spanned by |S>, |L>, |0> (9 dimensions); \
pair states occupy both slots, single kaons occupy one slot with vacuum in the other; \
the barred label marks the second slot";

/// Builds the contaminated-source operator under two readings and reports
/// the spectrum and direct entropy of each. Invalid operators are reported
/// through [`OperatorDiagnostics::problem`], never repaired.
pub fn contaminated_source(src: &ContaminatedSource) -> Result<ContaminatedSourceReport> {
    let (alpha, v) = (src.alpha, src.v);
    let h = FRAC_1_SQRT_2;
    let mut e = vec![ZERO; 9];
    e[3 * S + S] = c(h, 0.0);
    e[3 * L + L] = c(-h, 0.0);
    let rho_e = ComplexMatrix::outer(&e, &e);

    let printed_r = (&(&(&dyad((S, S), (S, S)) + &dyad((S, L), (L, S))) + &dyad((L, S), (S, L)))
        + &dyad((L, L), (L, L)))
        .scale_real(0.25);
    let sym = (&printed_r + &printed_r.dagger()).scale_real(0.5);
    let rho_r_verbatim = sym.scale_real(1.0 / sym.trace()?.re);

    let single_vac = &dyad((S, VAC), (S, VAC)) + &dyad((L, VAC), (L, VAC));
    let vac_single = &dyad((VAC, S), (VAC, S)) + &dyad((VAC, L), (VAC, L));
    let single_verbatim = (&single_vac - &vac_single).scale_real(0.5);

    let pair_identity = &(&(&dyad((S, S), (S, S)) + &dyad((S, L), (S, L))) + &dyad((L, S), (L, S)))
        + &dyad((L, L), (L, L));
    let rho_r_diag = pair_identity.scale_real(0.25);
    let single_diag = (&single_vac + &vac_single).scale_real(0.25);

    let assemble = |rho_r: ComplexMatrix, single: ComplexMatrix| -> Result<SourceReading> {
        let pair = &rho_e.scale_real(v) + &rho_r.scale_real(1.0 - v);
        let assembled = &pair.scale_real(alpha) + &single.scale_real(1.0 - alpha);
        let diagnostics = diagnose(&assembled)?;
        Ok(SourceReading {
            rho_e: rho_e.clone(),
            rho_r,
            rho_single: single,
            assembled,
            diagnostics,
        })
    };

    Ok(ContaminatedSourceReport {
        source: *src,
        layout: SOURCE_LAYOUT,
        verbatim: assemble(rho_r_verbatim, single_verbatim)?,
        diagonal: assemble(rho_r_diag, single_diag)?,
        entropy_pair_formula: entropy_pair(src),
        entropy_pair_diagonal_formula: entropy_pair_diagonal_reading(src),
    })
}
