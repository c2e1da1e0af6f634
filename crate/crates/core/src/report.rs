//! Discrepancy report: printed formulas evaluated as written, set beside a
//! corrected or independently recomputed value, plus the pass/fail checks
//! that the corrected forms must meet.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{
    bgr_eight_vertex, check_braid_relation, eigenvalue_product, hamiltonian_from_braid,
    printed_hamiltonian, qybe_grid_max, r_trig, scale_against, yang_baxterize,
    yang_baxterize_printed, Convention, Sign,
};
use crate::entanglement::{
    bell_states, entanglement_entropy, is_decomposable, random_product_state,
    random_two_qubit_state,
};
use crate::gates::{
    cnot, cnot_decomposition, cnot_decomposition_corrected, dirac_matrices, not_gate, sqrt_not,
};
use crate::kaon::{
    contaminated_source, entanglement_boundary, entanglement_boundary_diagonal_reading,
    entropy_pair, entropy_single, horodecki_M, lambda_from_eta, rho_mixture, violation_threshold,
    ContaminatedSource, KaonMixture, PRINTED_ALPHA_READING,
};
use crate::linalg::{c, hermitian_eigen, ComplexMatrix, SymmetricTridiagonal};
use crate::qlattice::{
    continuum_limit_study, q_derivative, q_left_derivative, q_number, PotentialFamily,
};
use crate::susy::{
    build_susy_pair, check_intertwining, check_superalgebra, h0_ground_state,
    spectrum_degeneracy_report, SuperpotentialProblem,
};
use crate::tolerance::Tolerances;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The printed statement holds numerically.
    Matches,
    /// Fails as printed; a small edit (sign, entry, prefactor) repairs it.
    TypoSuspected,
    /// Fails as printed and contradicts other printed statements or facts.
    Inconsistent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Matches => "matches",
            Verdict::TypoSuspected => "typo-suspected",
            Verdict::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub id: String,
    /// Position in source order; findings are sorted by it.
    pub rank: u32,
    /// Where the printed statement appears, as a topical citation.
    pub section: String,
    /// Value of the printed form, when it has one.
    pub verbatim: Option<f64>,
    /// Value of the corrected or independently recomputed form.
    pub corrected: Option<f64>,
    pub residual: f64,
    pub verdict: Verdict,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `value` is finite and strictly below `tolerance`.
    fn below(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            value: Some(value),
            tolerance,
            passed: value.is_finite() && value < tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub seed: u64,
    pub findings: Vec<Finding>,
    pub checks: Vec<Check>,
}

impl DiscrepancyReport {
    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn finding(&self, id: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.id == id)
    }

    /// CSV rows under the fixed header [`REPORT_CSV_HEADER`].
    pub fn csv_rows(&self) -> Vec<Vec<crate::serialize::Cell>> {
        self.findings
            .iter()
            .map(|f| {
                vec![
                    f.section.clone().into(),
                    f.verbatim.into(),
                    f.corrected.into(),
                    f.residual.into(),
                    f.verdict.as_str().into(),
                ]
            })
            .collect()
    }
}

pub const REPORT_CSV_HEADER: [&str; 5] =
    ["section", "verbatim", "corrected", "residual", "verdict"];

/// Findings every report must carry.
pub const MANDATORY_FINDINGS: [&str; 7] = [
    "braid-matrix-verbatim-unitarity",
    "yang-baxterization-form",
    "hamiltonian-scale",
    "cnot-decomposition-distance",
    "violation-threshold",
    "entropy-boundary-vs-criterion",
    "entropy-boundary-vs-reading",
];

/// Sorts findings into source order and verifies that every mandatory
/// finding is present and carries a finite residual.
pub fn emit_report(mut report: DiscrepancyReport) -> Result<DiscrepancyReport> {
    report
        .findings
        .sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.id.cmp(&b.id)));
    for id in MANDATORY_FINDINGS {
        match report.finding(id) {
            None => {
                return Err(Error::invalid(format!(
                    "mandatory finding `{id}` is missing"
                )))
            }
            Some(f) if !f.residual.is_finite() => {
                return Err(Error::invalid(format!(
                    "finding `{id}` has a non-finite residual"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(report)
}

struct Builder {
    findings: Vec<Finding>,
    checks: Vec<Check>,
}

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn finding(
        &mut self,
        id: &str,
        rank: u32,
        section: &str,
        verbatim: Option<f64>,
        corrected: Option<f64>,
        residual: f64,
        verdict: Verdict,
        note: String,
    ) {
        self.findings.push(Finding {
            id: id.to_string(),
            rank,
            section: section.to_string(),
            verbatim,
            corrected,
            residual,
            verdict,
            note,
        });
    }

    fn check(&mut self, check: Check) {
        self.checks.push(check);
    }
}

const QYBE_GRID: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 1.0];

fn phi_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| 2.0 * PI * k as f64 / n as f64)
}

fn unitarity(m: &ComplexMatrix) -> Result<f64> {
    Ok(m.is_unitary(f64::INFINITY)?.residual)
}

/// Evaluates every finding and check. Deterministic for a given `seed`.
pub fn build_report(seed: u64, tol: &Tolerances) -> Result<DiscrepancyReport> {
    tol.validate()?;
    let mut b = Builder {
        findings: Vec::new(),
        checks: Vec::new(),
    };
    lattice_findings(&mut b)?;
    qubit_findings(&mut b, seed)?;
    susy_findings(&mut b)?;
    gate_findings(&mut b, tol)?;
    braid_findings(&mut b, tol)?;
    kaon_findings(&mut b)?;
    emit_report(DiscrepancyReport {
        seed,
        findings: b.findings,
        checks: b.checks,
    })
}

fn lattice_findings(b: &mut Builder) -> Result<()> {
    let y = 0.3;
    let q2 = 1.0 + 1e-8;
    let left = q_left_derivative(f64::sin, q2, y)?;
    let right = q_derivative(f64::sin, q2, y)?;
    b.finding(
        "left-q-derivative-sign",
        100,
        "q-deformed calculus: left derivative on the quantum hyperplane",
        Some(left),
        Some(right),
        (left - y.cos()).abs(),
        Verdict::TypoSuspected,
        "printed left derivative [f(y) - f(q^2 y)]/((1 - q^-2) y) equals -q^2 times the right derivative, \
         so its classical limit is -f'(y); values are for f = sin at y = 0.3, q^2 = 1 + 1e-8"
            .to_string(),
    );
    let mut worst = 0.0_f64;
    for k in [0.5, 0.9, 1.5] {
        for n in 1..=6 {
            let y = 0.7;
            let got = q_derivative(|t| t.powi(n as i32), k, y)?;
            let want = q_number(n, k) * y.powi(n as i32 - 1);
            worst = worst.max((got - want).abs());
        }
    }
    b.check(Check::below(
        "q-derivative of y^n equals [n]_{q^2} y^(n-1)",
        worst,
        1e-12,
    ));
    b.check(Check::below(
        "q-derivative classical limit of sin",
        (right - y.cos()).abs(),
        1e-6,
    ));

    let rows = continuum_limit_study(
        PotentialFamily::Harmonic { half_width: 8.0 },
        &[0.08, 0.04, 0.02],
    )?;
    let order = rows
        .last()
        .and_then(|r| r.observed_order)
        .unwrap_or(f64::NAN);
    b.finding(
        "continuum-limit-order",
        110,
        "discrete Schroedinger equation: continuum limit",
        Some(order),
        Some(2.0),
        (order - 2.0).abs(),
        Verdict::Matches,
        "harmonic ground energy over spacings 0.08, 0.04, 0.02 converges to 1/2 at second order"
            .to_string(),
    );
    b.check(Check::below(
        "lattice continuum limit observed order within 0.2 of 2",
        (order - 2.0).abs(),
        0.2,
    ));
    Ok(())
}

fn qubit_findings(b: &mut Builder, seed: u64) -> Result<()> {
    let root = sqrt_not();
    let square = (&(&root * &root) - &not_gate()).max_abs();
    let after_one = root.mul_vec(&[c(1.0, 0.0), c(0.0, 0.0)])?;
    // The printed intermediate state repeats |0>: ((1+i)/2 + (1-i)/2)|0> = |0>.
    let printed = [c(1.0, 0.0), c(0.0, 0.0)];
    let gap = after_one
        .iter()
        .zip(printed)
        .map(|(a, p)| (a - p).norm_sqr())
        .sum::<f64>()
        .sqrt();
    b.finding(
        "sqrt-not-intermediate-state",
        200,
        "qubit gates: square root of NOT acting on |0>",
        Some(1.0),
        Some(crate::linalg::norm(&after_one)),
        gap,
        Verdict::TypoSuspected,
        format!(
            "the intermediate state is printed as ((1+i)/2)|0> + ((1-i)/2)|0>; the second ket must be |1>. \
             The gate itself is correct: max |(sqrt M)^2 - M| = {square:e}"
        ),
    );
    b.check(Check::below("(sqrt NOT)^2 = NOT", square, 1e-15));
    let dirac = dirac_matrices();
    b.check(Check::below(
        "Clifford relations",
        dirac.clifford_residual() + dirac.gamma5_residual(),
        1e-15,
    ));
    b.check(Check::below(
        "CNOT^2 = I",
        (&(&cnot() * &cnot()) - &ComplexMatrix::identity(4)).max_abs(),
        1e-15,
    ));

    let mut worst = 0.0_f64;
    for sign in Sign::BOTH {
        for phi in phi_grid(16) {
            for s in bell_states(sign, phi) {
                worst = worst.max((entanglement_entropy(&s)? - 1.0).abs());
            }
        }
    }
    b.finding(
        "bell-states-phase-independent",
        600,
        "deformed Bell states: action of b(phi) on the basis",
        Some(1.0),
        Some(1.0 - worst),
        worst,
        Verdict::Matches,
        "every state generated by b(phi) is maximally entangled for all phi; the deformation is a local phase"
            .to_string(),
    );
    b.check(Check::below(
        "Bell states carry 1 bit of entanglement",
        worst,
        1e-10,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0usize;
    for k in 0..220 {
        let s = if k < 200 {
            random_two_qubit_state(&mut rng)
        } else {
            random_product_state(&mut rng)
        };
        let entropy = entanglement_entropy(&s)?;
        if is_decomposable(&s, 1e-8).decomposable != (entropy < 1e-8) {
            mismatches += 1;
        }
    }
    b.check(Check::below(
        "decomposability agrees with zero entropy (seeded)",
        mismatches as f64,
        0.5,
    ));
    Ok(())
}

fn susy_findings(b: &mut Builder) -> Result<()> {
    let dx = 1.0 / 64.0;
    let n = 1001;
    let pair = build_susy_pair(&SuperpotentialProblem::centered(|x| x, dx, n)?);
    let inter = check_intertwining(&pair, 1e-11);
    b.finding(
        "susy-intertwining-order",
        310,
        "supersymmetric QM: intertwining of the partner Hamiltonians",
        Some(inter.printed_minus),
        Some(inter.minus),
        inter.printed_minus,
        Verdict::TypoSuspected,
        "A- H1 = H0 A- fails (in the continuum, for v = x, the difference is 2A-); the identity that follows \
         from H0 = A+A-, H1 = A-A+ is A- H0 = H1 A-. Frobenius norms for v = x, dx = 1/64, 1001 points"
            .to_string(),
    );

    // Printed upper block -d^2 + v' drops v^2; the spectrum of A+A- does not.
    let inv2 = 1.0 / (dx * dx);
    let printed = SymmetricTridiagonal::new(vec![2.0 * inv2 + 1.0; n], vec![-inv2; n - 1])?;
    let printed_e0 = printed.eigenvalues()?[0];
    let (e0, _) = h0_ground_state(&pair)?;
    b.finding(
        "susy-hamiltonian-display",
        300,
        "supersymmetric QM: Hamiltonian display with 1/L prefactor",
        Some(printed_e0),
        Some(e0),
        (printed_e0 - e0).abs(),
        Verdict::Inconsistent,
        "the block display carries an undefined 1/L and the compact form -d^2/dx^2 + sigma_3 v' omits v^2; \
         values are the lowest level of -d^2 + v' versus that of A+A- for v = x on the same grid"
            .to_string(),
    );

    let alg = check_superalgebra(&pair);
    b.check(Check::below(
        "(Q+)^2 = (Q-)^2 = {Q, sigma_3 x I} = 0",
        alg.q_plus_squared + alg.q_minus_squared + alg.grading_anticommutator,
        f64::MIN_POSITIVE,
    ));
    b.check(Check::below(
        "intertwining residuals at n = 1001",
        inter.plus.max(inter.minus),
        1e-11,
    ));
    let rep = spectrum_degeneracy_report(&pair, 0.5, 1e-3)?;
    let gap = rep
        .rows
        .iter()
        .take(5)
        .map(|r| r.rel_gap)
        .fold(0.0, f64::max);
    let gap = if rep.rows.len() >= 5 {
        gap
    } else {
        f64::INFINITY
    };
    b.check(Check::below(
        "lowest 5 positive levels of H0, H1 degenerate",
        gap,
        1e-3,
    ));
    Ok(())
}

fn gate_findings(b: &mut Builder, tol: &Tolerances) -> Result<()> {
    let verbatim = cnot_decomposition()?;
    let corrected = cnot_decomposition_corrected()?;
    let r_verbatim = unitarity(&verbatim.r)?;
    let r_fixed = unitarity(&corrected.r)?;
    b.finding(
        "cnot-r-matrix-unitarity",
        400,
        "two-qubit gates: R matrix used for CNOT",
        Some(r_verbatim),
        Some(r_fixed),
        r_verbatim,
        Verdict::TypoSuspected,
        "the printed R has equal first and last rows (rank 3) although it is called unitary; \
         with entry (4,1) = -1 it is the braid matrix b-(0). Values are ||R^dagger R - I||_F"
            .to_string(),
    );
    let n_verbatim = unitarity(&verbatim.n())?;
    let n_fixed = unitarity(&corrected.n())?;
    b.finding(
        "cnot-n-factor-unitarity",
        401,
        "two-qubit gates: local factor N2",
        Some(n_verbatim),
        Some(n_fixed),
        n_verbatim,
        Verdict::TypoSuspected,
        "N2 is printed with prefactor -1/sqrt(2) on diag(1, i), making N1 x N2 non-unitary; \
         the corrected factor is -diag(1, i). Values are ||N^dagger N - I||_F"
            .to_string(),
    );
    b.finding(
        "cnot-decomposition-distance",
        402,
        "two-qubit gates: CNOT = M R N",
        Some(verbatim.report.frobenius_distance),
        Some(corrected.report.frobenius_distance),
        verbatim.report.frobenius_distance,
        Verdict::TypoSuspected,
        format!(
            "Frobenius distance to CNOT up to global phase; printed matrices miss by {:e}, \
             the two repairs above give an exact decomposition (best phase {:.6})",
            verbatim.report.frobenius_distance, corrected.report.best_global_phase
        ),
    );
    b.check(Check::below(
        "M1 x M2 unitary",
        unitarity(&verbatim.m())?,
        tol.exact,
    ));
    b.check(Check::below("printed R unitary", r_verbatim, tol.exact));
    b.check(Check::below(
        "printed N1 x N2 unitary",
        n_verbatim,
        tol.exact,
    ));
    b.check(Check::below(
        "corrected CNOT decomposition distance",
        corrected.report.frobenius_distance,
        tol.exact,
    ));
    Ok(())
}

fn braid_findings(b: &mut Builder, tol: &Tolerances) -> Result<()> {
    let phi = 0.7;
    let verbatim = bgr_eight_vertex(Sign::Plus, phi, Convention::Verbatim);
    let normalized = bgr_eight_vertex(Sign::Plus, phi, Convention::Normalized);
    let v_res = unitarity(&verbatim.matrix)?;
    let n_res = unitarity(&normalized.matrix)?;
    let v_braid = check_braid_relation(&verbatim.matrix, f64::INFINITY)?.residual;
    b.finding(
        "braid-matrix-verbatim-unitarity",
        500,
        "eight-vertex braid matrix b(phi)",
        Some(v_res),
        Some(n_res),
        v_res,
        Verdict::TypoSuspected,
        format!(
            "as printed, b+ has no 1/sqrt(2) and entry (3,4) = 1, so it is neither unitary nor a braid \
             matrix (braid residual {v_braid:e} at phi = 0.7); with (3,4) = 0 and 1/sqrt(2) it is unitary. \
             Values are ||b^dagger b - I||_F at phi = 0.7"
        ),
    );

    let unscaled = bgr_eight_vertex(Sign::Plus, phi, Convention::Unscaled);
    let product = eigenvalue_product(&unscaled.matrix)?;
    b.finding(
        "braid-matrix-eigenvalues",
        501,
        "eight-vertex braid matrix: eigenvalues 1 +- i",
        Some(2.0),
        Some(product.re),
        (product - c(2.0, 0.0)).norm(),
        Verdict::Matches,
        "the eigenvalue product 1 + i times 1 - i = 2 holds for the unscaled matrix with entry (3,4) = 0".to_string(),
    );

    let mut printed_worst = 0.0_f64;
    let mut fixed_worst = 0.0_f64;
    for sign in Sign::BOTH {
        for phi in [0.0, 0.9] {
            let bo = bgr_eight_vertex(sign, phi, Convention::Normalized);
            printed_worst = printed_worst.max(qybe_grid_max(
                |x| yang_baxterize_printed(&bo, x),
                &QYBE_GRID,
                &QYBE_GRID,
            )?);
            fixed_worst = fixed_worst.max(qybe_grid_max(
                |x| yang_baxterize(&bo, x),
                &QYBE_GRID,
                &QYBE_GRID,
            )?);
        }
    }
    b.finding(
        "yang-baxterization-form",
        502,
        "Yang-Baxterization R(x) of the eight-vertex matrix",
        Some(printed_worst),
        Some(fixed_worst),
        printed_worst,
        Verdict::TypoSuspected,
        "R(x) = b + x L1 L2 (identity term) fails the spectral Yang-Baxter equation; R(x) = b + x L1 L2 b^-1 \
         satisfies it and reproduces the printed matrix (1+x) I + (1-x) K. Values are the largest residual \
         over x, y in {0.2, ..., 1.0}, both signs, phi in {0, 0.9}"
            .to_string(),
    );
    b.check(Check::below(
        "QYBE of the Yang-Baxterized family",
        fixed_worst,
        1e-10,
    ));

    let theta: f64 = 0.7;
    let printed_trig = &normalized.matrix.scale_real(theta * theta.cos())
        + &normalized.matrix.dagger().scale_real(theta.sin());
    let printed_u = unitarity(&printed_trig)?;
    let fixed_u = unitarity(&r_trig(Sign::Plus, theta, phi))?;
    b.finding(
        "trigonometric-r-prefactor",
        503,
        "Yang-Baxterization in the angle variables theta, phi",
        Some(printed_u),
        Some(fixed_u),
        printed_u,
        Verdict::TypoSuspected,
        "the printed form carries a stray theta in theta cos(theta) b; without it cos(theta) b + sin(theta) b^-1 \
         is unitary. Values are ||R^dagger R - I||_F at theta = 0.7"
            .to_string(),
    );

    let (k, res) = scale_against(
        &hamiltonian_from_braid(Sign::Plus, phi),
        &printed_hamiltonian(Sign::Plus, phi),
    )?;
    b.finding(
        "hamiltonian-scale",
        504,
        "braiding Hamiltonian H = -(i/2) b^2",
        Some(1.0),
        Some(k),
        res,
        Verdict::Matches,
        "the printed matrix equals -(i/2) b^2 for the normalized b with scale factor 1; \
         residual is ||H - k H_printed||_F at phi = 0.7"
            .to_string(),
    );

    let mut braid = 0.0_f64;
    let mut unit = 0.0_f64;
    for sign in Sign::BOTH {
        for phi in phi_grid(32) {
            let m = bgr_eight_vertex(sign, phi, Convention::Normalized).matrix;
            braid = braid.max(check_braid_relation(&m, f64::INFINITY)?.residual);
            unit = unit
                .max(unitarity(&m)?)
                .max(unitarity(&r_trig(sign, theta, phi))?);
        }
    }
    b.check(Check::below(
        "braid relation of normalized b(phi), 32-point grid",
        braid,
        tol.exact,
    ));
    b.check(Check::below(
        "unitarity of normalized b(phi) and r_trig",
        unit,
        tol.exact,
    ));
    Ok(())
}

fn kaon_findings(b: &mut Builder) -> Result<()> {
    let mut min_eig = f64::INFINITY;
    let mut max_det = 0.0_f64;
    for eps in [0.0, 0.1, 0.5, 1.0, 2.0] {
        for lambda in [0.0, 0.25, 0.5, 0.75, 0.9, 1.0] {
            let rho = rho_mixture(&KaonMixture::new(c(eps, 0.0), lambda)?)?;
            min_eig = min_eig.min(hermitian_eigen(rho.matrix())?.values[0]);
            max_det = max_det.max(rho.matrix().determinant()?.norm());
        }
    }
    b.finding(
        "kaon-mixture-determinant",
        700,
        "kaon mixture rho(epsilon, lambda): negative determinant claim",
        Some(max_det),
        Some(min_eig),
        min_eig.min(0.0).abs(),
        Verdict::Inconsistent,
        "the spectrum is {(1-l)/2, (1-l)/2, l, 0} for every epsilon, so the determinant is 0 and no eigenvalue \
         is negative; the threshold marks Bell violation, not a negative eigenvalue. Verbatim column is the \
         largest |det|, corrected column the smallest eigenvalue over a grid"
            .to_string(),
    );

    let th = violation_threshold(c(1.0, 0.0));
    b.finding(
        "violation-threshold",
        701,
        "kaon mixture: Bell-violation threshold in lambda",
        Some(th.printed_lambda),
        Some(th.derived_lambda),
        (th.printed_lambda - th.derived_lambda).abs(),
        Verdict::Inconsistent,
        format!(
            "at |epsilon| = 1 the printed 1/(2(1-t)) gives {}, while M(rho) > 1 first holds at {} \
             (closed form min(1/(1+t^2), 1/(2 sqrt2 t)) = {})",
            th.printed_lambda, th.derived_lambda, th.analytic_lambda
        ),
    );
    b.check(Check::below(
        "derived threshold at |epsilon| = 1 equals 1/sqrt2",
        (th.derived_lambda - FRAC_1_SQRT_2).abs(),
        1e-9,
    ));
    b.check(Check::below(
        "Horodecki M at epsilon = 0, lambda = 1",
        (horodecki_M(&KaonMixture::new(c(0.0, 0.0), 1.0)?) - 1.0).abs(),
        1e-14,
    ));

    let lambda = lambda_from_eta(2.27e-3)?;
    b.finding(
        "lambda-from-eta",
        702,
        "kaon mixture: fraction lambda from eta",
        Some(0.99546),
        Some(lambda),
        (lambda - 0.99546).abs(),
        Verdict::Matches,
        "lambda = 1 - 2 eta at eta = 2.27e-3".to_string(),
    );
    b.check(Check::below(
        "lambda from eta = 0.99546",
        (lambda - 0.99546).abs(),
        5e-5,
    ));

    let src = contaminated_source(&ContaminatedSource::new(0.9, 0.8)?)?;
    b.finding(
        "contaminated-source-operator",
        703,
        "contaminated kaon source rho(LS)",
        Some(src.verbatim.diagnostics.min_eigenvalue),
        Some(src.diagonal.diagnostics.min_eigenvalue),
        src.verbatim.diagnostics.min_eigenvalue.min(0.0).abs(),
        Verdict::Inconsistent,
        format!(
            "the printed random-source dyads are off-diagonal and the single-kaon term carries a minus sign, \
             so the assembled operator is not a state ({}); the diagonal reading is a state whose entropy \
             matches the printed pair formula except for the last coefficient. Smallest eigenvalues at \
             alpha = 0.9, v = 0.8",
            src.verbatim.diagnostics.problem.as_deref().unwrap_or("no problem detected")
        ),
    );

    let one = |a: f64, v: f64| -> Result<ContaminatedSource> { ContaminatedSource::new(a, v) };
    let endpoint = (entropy_pair(&one(1.0, 1.0)?))
        .abs()
        .max((entropy_pair(&one(1.0, 0.0)?) - 4f64.ln()).abs())
        .max((entropy_single(&one(1.0, 0.0)?) - 2f64.ln()).abs());
    b.check(Check::below(
        "pair and single entropies at the endpoints",
        endpoint,
        1e-12,
    ));

    let printed = entanglement_boundary(1.0)?;
    let diagonal = entanglement_boundary_diagonal_reading(1.0)?;
    let root = diagonal.alpha_star;
    let note_root = match printed.alpha_star {
        Some(a) => format!("the printed entropies cross at alpha = {a}"),
        None => format!(
            "the printed entropies never cross on (0, 1) at v = 1 (largest S_pair - S_single is {:e})",
            printed.max_difference
        ),
    };
    let diag_root = root.unwrap_or(f64::NAN);
    b.finding(
        "entropy-boundary-vs-criterion",
        704,
        "kaon entropies: boundary S(LS) = S(L,S) against alpha v > 1/sqrt2",
        printed.alpha_star,
        root,
        (diag_root - FRAC_1_SQRT_2).abs(),
        Verdict::Inconsistent,
        format!(
            "{note_root}; with last coefficient (1 - alpha) the crossing is at alpha = {diag_root}, \
             not at 1/sqrt2 = {FRAC_1_SQRT_2}"
        ),
    );
    b.finding(
        "entropy-boundary-vs-reading",
        705,
        "kaon entropies: printed alpha > 0.71033",
        printed.alpha_star,
        root,
        (diag_root - PRINTED_ALPHA_READING).abs(),
        Verdict::Inconsistent,
        format!(
            "the printed value 071033 is read as 0.71033; it matches neither 1/sqrt2 nor the crossing of the \
             diagonal reading; {note_root}"
        ),
    );
    b.check(Check {
        name: "entanglement boundary at v = 1 from the printed entropies".to_string(),
        value: printed.alpha_star,
        tolerance: 1e-10,
        passed: printed.alpha_star.is_some(),
    });
    Ok(())
}
