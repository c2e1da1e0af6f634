use std::f64::consts::PI;
use std::fs;
use std::io::Write;

use serde::Serialize;

use braidlab::braid::{
    bgr_eight_vertex, check_braid_relation, check_far_commutativity, check_qybe, yang_baxterize,
    Convention, Sign,
};
use braidlab::entanglement::{bell_states, entanglement_entropy, is_decomposable};
use braidlab::gates::{
    cnot_decomposition, cnot_decomposition_corrected, dirac_matrices, projectors,
    CnotDecomposition, PureState, TwoQubitState,
};
use braidlab::kaon::{
    contaminated_source, deformed_kaon_states, entanglement_boundary,
    entanglement_boundary_diagonal_reading, horodecki_M, horodecki_m_from_state, kaon_bell_states,
    lambda_from_eta, rho_mixture, violation_threshold, ContaminatedSource, KaonEncoding,
    KaonMixture, OperatorDiagnostics,
};
use braidlab::linalg::{c, hermitian_eigen, ComplexMatrix};
use braidlab::qlattice::{
    continuum_limit_study, q_derivative, q_left_derivative, q_left_derivative_lattice_form,
    q_number, solve_lattice_schrodinger, ConvergenceRow, LatticeProblem, PotentialFamily,
};
use braidlab::report::{build_report, REPORT_CSV_HEADER};
use braidlab::serialize::{to_csv, to_json, Cell};
use braidlab::susy::{
    build_susy_pair, check_intertwining, check_superalgebra, spectrum_degeneracy_report,
    sqrt_not_correspondence, Superpotential, SuperpotentialProblem,
};
use braidlab::tolerance::Tolerances;
use braidlab::{Complex64, Error};

use crate::{
    Cli, Command, EntangleCmd, Format, GatesCmd, KaonCmd, LatticeCmd, LatticeDomain,
    LatticePotential, Reading, SusyCmd, SusyPotential, VerifyCmd,
};

/// Serialized result of one verb plus the names of any failed checks.
struct Output {
    json: String,
    csv: Option<String>,
    failures: Vec<String>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::NonFinite { .. }
            | Error::NotNormalized { .. }
            | Error::NegativeWeight { .. }
            | Error::BadShape { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type Outcome = Result<Output, Failure>;

/// Collects named pass/fail conditions.
#[derive(Default)]
struct Checks(Vec<String>);

impl Checks {
    fn require(&mut self, ok: bool, name: impl Into<String>) -> bool {
        if !ok {
            self.0.push(name.into());
        }
        ok
    }
}

fn json_only<T: Serialize>(value: &T, checks: Checks) -> Outcome {
    Ok(Output {
        json: to_json(value)?,
        csv: None,
        failures: checks.0,
    })
}

fn with_table<T: Serialize>(
    value: &T,
    header: &[&str],
    rows: &[Vec<Cell>],
    checks: Checks,
) -> Outcome {
    Ok(Output {
        json: to_json(value)?,
        csv: Some(to_csv(header, rows)?),
        failures: checks.0,
    })
}

/// Dispatches a parsed command line and returns the process exit status:
/// 0 success, 1 failed verification, 2 usage error.
pub fn run(cli: &Cli) -> u8 {
    let outcome = cli
        .global
        .tolerances()
        .map_err(Failure::Usage)
        .and_then(|tol| dispatch(cli, &tol));
    let out = match outcome {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    let text = match (cli.global.format, out.csv) {
        (Format::Json, _) => out.json,
        (Format::Csv, Some(csv)) => csv,
        (Format::Csv, None) => {
            eprintln!("error: --format csv is only available for tabular verbs");
            return 2;
        }
    };
    let written = match &cli.global.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(format!("cannot write to stdout: {e}"))
            }
            _ => Ok(()),
        },
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return 1;
    }
    for name in &out.failures {
        eprintln!("FAIL: {name}");
    }
    u8::from(!out.failures.is_empty())
}

fn dispatch(cli: &Cli, tol: &Tolerances) -> Outcome {
    match &cli.command {
        Command::Verify(VerifyCmd::Braid { phi, sign }) => verify_braid((*sign).into(), *phi, tol),
        Command::Verify(VerifyCmd::Qybe { phi, sign, grid }) => {
            verify_qybe((*sign).into(), *phi, *grid, tol)
        }
        Command::Verify(VerifyCmd::Clifford) => verify_clifford(tol),
        Command::Gates(GatesCmd::DecomposeCnot) => decompose_cnot(tol),
        Command::Gates(GatesCmd::SqrtNot) => sqrt_not_cmd(),
        Command::Bell { phi, sign } => bell((*sign).into(), *phi, tol),
        Command::Entangle(EntangleCmd::Check { amps }) => entangle_check(amps),
        Command::Kaon(k) => kaon(k, tol),
        Command::Lattice(LatticeCmd::Solve { domain, n, k }) => lattice_solve(domain, *n, *k),
        Command::Lattice(LatticeCmd::Converge { domain, dx }) => lattice_converge(domain, dx),
        Command::Qderiv { n, q2, y } => qderiv(*n, *q2, *y),
        Command::Susy(SusyCmd::Spectrum {
            potential,
            c,
            dx,
            n,
            floor,
            tol_rel,
            levels,
        }) => susy_spectrum(*potential, *c, *dx, *n, *floor, *tol_rel, *levels),
        Command::Report => report(cli.global.seed, tol),
    }
}

fn finite(name: &str, x: f64) -> Result<f64, Failure> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Failure::Usage(format!("--{name} must be finite, got {x}")))
    }
}

fn pairs(a: &[Complex64]) -> Vec<[f64; 2]> {
    a.iter().map(|z| [z.re, z.im]).collect()
}

fn unitarity(m: &ComplexMatrix) -> Result<f64, Failure> {
    Ok(m.is_unitary(f64::INFINITY)?.residual)
}

fn qybe_axis(grid: usize) -> Vec<f64> {
    (1..=grid).map(|k| k as f64 / grid as f64).collect()
}

#[derive(Serialize)]
struct BraidVerification {
    sign: Sign,
    phi: f64,
    braid_residual: f64,
    far_commutativity_residual: f64,
    unitarity: f64,
    qybe_residual_grid: f64,
    tolerance: f64,
    qybe_tolerance: f64,
    passed: bool,
}

fn verify_braid(sign: Sign, phi: f64, tol: &Tolerances) -> Outcome {
    let phi = finite("phi", phi)?;
    let b = bgr_eight_vertex(sign, phi, Convention::Normalized);
    let braid = check_braid_relation(&b.matrix, tol.exact)?.residual;
    let far = check_far_commutativity(&b.matrix, tol.exact)?.residual;
    let unit = unitarity(&b.matrix)?;
    let axis = qybe_axis(5);
    let mut qybe = 0.0_f64;
    for &x in &axis {
        for &y in &axis {
            qybe = qybe.max(check_qybe(|t| yang_baxterize(&b, t), x, y, tol.eigen)?.residual);
        }
    }
    let mut checks = Checks::default();
    checks.require(braid < tol.exact, "braid relation");
    checks.require(far < tol.exact, "far commutativity");
    checks.require(unit < tol.exact, "unitarity");
    checks.require(qybe < tol.eigen, "QYBE on the 5x5 grid");
    let v = BraidVerification {
        sign,
        phi,
        braid_residual: braid,
        far_commutativity_residual: far,
        unitarity: unit,
        qybe_residual_grid: qybe,
        tolerance: tol.exact,
        qybe_tolerance: tol.eigen,
        passed: checks.0.is_empty(),
    };
    json_only(&v, checks)
}

#[derive(Serialize)]
struct QybeRow {
    x: f64,
    y: f64,
    residual: f64,
}

#[derive(Serialize)]
struct QybeVerification {
    sign: Sign,
    phi: f64,
    tolerance: f64,
    max_residual: f64,
    rows: Vec<QybeRow>,
    passed: bool,
}

fn verify_qybe(sign: Sign, phi: f64, grid: usize, tol: &Tolerances) -> Outcome {
    let phi = finite("phi", phi)?;
    if grid == 0 {
        return Err(Failure::Usage("--grid must be at least 1".into()));
    }
    let b = bgr_eight_vertex(sign, phi, Convention::Normalized);
    let axis = qybe_axis(grid);
    let mut rows = Vec::new();
    for &x in &axis {
        for &y in &axis {
            let residual = check_qybe(|t| yang_baxterize(&b, t), x, y, tol.eigen)?.residual;
            rows.push(QybeRow { x, y, residual });
        }
    }
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let mut checks = Checks::default();
    let passed = checks.require(max_residual < tol.eigen, "QYBE grid");
    let table: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| vec![r.x.into(), r.y.into(), r.residual.into()])
        .collect();
    let v = QybeVerification {
        sign,
        phi,
        tolerance: tol.eigen,
        max_residual,
        rows,
        passed,
    };
    with_table(&v, &["x", "y", "residual"], &table, checks)
}

#[derive(Serialize)]
struct CliffordVerification {
    clifford_residual: f64,
    gamma5_anticommutator: f64,
    projector_completeness: f64,
    projector_idempotence: f64,
    passed: bool,
}

fn verify_clifford(tol: &Tolerances) -> Outcome {
    let d = dirac_matrices();
    let (p0, p1) = projectors();
    let completeness = (&(&p0 + &p1) - &ComplexMatrix::identity(2)).max_abs();
    let idempotence = (&(&p0 * &p0) - &p0)
        .max_abs()
        .max((&(&p1 * &p1) - &p1).max_abs());
    let mut checks = Checks::default();
    checks.require(d.clifford_residual() < tol.exact, "Clifford relations");
    checks.require(d.gamma5_residual() < tol.exact, "gamma5 anticommutes");
    checks.require(completeness.max(idempotence) < tol.exact, "projectors");
    let v = CliffordVerification {
        clifford_residual: d.clifford_residual(),
        gamma5_anticommutator: d.gamma5_residual(),
        projector_completeness: completeness,
        projector_idempotence: idempotence,
        passed: checks.0.is_empty(),
    };
    json_only(&v, checks)
}

#[derive(Serialize)]
struct DecompositionSummary {
    distance_up_to_phase: f64,
    best_global_phase: f64,
    max_entry_deviation: f64,
    failing_entries: usize,
    m_unitarity: f64,
    r_unitarity: f64,
    n_unitarity: f64,
    assembled: Vec<Vec<[f64; 2]>>,
}

fn summarize(d: &CnotDecomposition, tol: f64) -> Result<DecompositionSummary, Failure> {
    Ok(DecompositionSummary {
        distance_up_to_phase: d.report.frobenius_distance,
        best_global_phase: d.report.best_global_phase,
        max_entry_deviation: d.report.max_entry_deviation,
        failing_entries: d.failing_entries(tol).len(),
        m_unitarity: unitarity(&d.m())?,
        r_unitarity: unitarity(&d.r)?,
        n_unitarity: unitarity(&d.n())?,
        assembled: (0..4).map(|i| pairs(d.assembled.row(i))).collect(),
    })
}

#[derive(Serialize)]
struct CnotReport {
    tolerance: f64,
    verbatim: DecompositionSummary,
    corrected: DecompositionSummary,
    verbatim_composes_to_cnot: bool,
    passed: bool,
}

fn decompose_cnot(tol: &Tolerances) -> Outcome {
    let verbatim = cnot_decomposition()?;
    let corrected = cnot_decomposition_corrected()?;
    let mut checks = Checks::default();
    // The printed factors are reported, not required to pass.
    let passed = checks.require(
        corrected.report.frobenius_distance < tol.exact,
        "corrected decomposition composes to CNOT",
    );
    let v = CnotReport {
        tolerance: tol.exact,
        verbatim_composes_to_cnot: verbatim.report.frobenius_distance < tol.exact,
        verbatim: summarize(&verbatim, tol.exact)?,
        corrected: summarize(&corrected, tol.exact)?,
        passed,
    };
    json_only(&v, checks)
}

#[derive(Serialize)]
struct SqrtNotReport {
    grading_anticommutator: f64,
    square_residual: f64,
    double_action_on_0: Vec<[f64; 2]>,
    double_action_on_1: Vec<[f64; 2]>,
    correspondence: Vec<[&'static str; 2]>,
    passed: bool,
}

fn sqrt_not_cmd() -> Outcome {
    let s = sqrt_not_correspondence();
    let mut checks = Checks::default();
    checks.require(s.square_residual < 1e-15, "(sqrt NOT)^2 = NOT");
    checks.require(s.grading_anticommutator < 1e-15, "{NOT, sigma_3} = 0");
    let v = SqrtNotReport {
        grading_anticommutator: s.grading_anticommutator,
        square_residual: s.square_residual,
        double_action_on_0: pairs(&s.double_action[0]),
        double_action_on_1: pairs(&s.double_action[1]),
        correspondence: s.table.iter().map(|&(a, b)| [a, b]).collect(),
        passed: checks.0.is_empty(),
    };
    json_only(&v, checks)
}

const BASIS_LABELS: [&str; 4] = ["|00>", "|01>", "|10>", "|11>"];
const AMP_HEADER: [&str; 11] = [
    "index", "label", "a00_re", "a00_im", "a01_re", "a01_im", "a10_re", "a10_im", "a11_re",
    "a11_im", "entropy",
];

#[derive(Serialize)]
struct StateRow {
    index: usize,
    label: String,
    amplitudes: Vec<[f64; 2]>,
    entanglement_entropy: f64,
}

fn state_rows(
    states: &[TwoQubitState],
    labels: impl Fn(usize) -> String,
) -> Result<Vec<StateRow>, Failure> {
    states
        .iter()
        .enumerate()
        .map(|(index, s)| {
            Ok(StateRow {
                index,
                label: labels(index),
                amplitudes: pairs(s.amplitudes()),
                entanglement_entropy: entanglement_entropy(s)?,
            })
        })
        .collect()
}

fn state_table(rows: &[StateRow]) -> Vec<Vec<Cell>> {
    rows.iter()
        .map(|r| {
            let mut cells: Vec<Cell> = vec![r.index.into(), r.label.clone().into()];
            for [re, im] in &r.amplitudes {
                cells.push((*re).into());
                cells.push((*im).into());
            }
            cells.push(r.entanglement_entropy.into());
            cells
        })
        .collect()
}

#[derive(Serialize)]
struct BellReport {
    sign: Sign,
    phi: f64,
    states: Vec<StateRow>,
    passed: bool,
}

fn bell(sign: Sign, phi: f64, tol: &Tolerances) -> Outcome {
    let phi = finite("phi", phi)?;
    let states = state_rows(&bell_states(sign, phi), |k| {
        format!("image of {}", BASIS_LABELS[k])
    })?;
    let mut checks = Checks::default();
    for s in &states {
        checks.require(
            (s.entanglement_entropy - 1.0).abs() < tol.eigen,
            format!("state {} carries 1 bit", s.index),
        );
    }
    let table = state_table(&states);
    let v = BellReport {
        sign,
        phi,
        passed: checks.0.is_empty(),
        states,
    };
    with_table(&v, &AMP_HEADER, &table, checks)
}

#[derive(Serialize)]
struct EntangleReport {
    input_norm: f64,
    amplitudes: Vec<[f64; 2]>,
    decomposable: bool,
    witness: f64,
    entanglement_entropy: f64,
    consistent: bool,
}

fn entangle_check(amps: &[f64]) -> Outcome {
    if amps.len() != 8 {
        return Err(Failure::Usage(format!(
            "--amps needs 8 numbers, got {}",
            amps.len()
        )));
    }
    let z: Vec<Complex64> = amps.chunks(2).map(|p| c(p[0], p[1])).collect();
    let input_norm = braidlab::linalg::norm(&z);
    let s = TwoQubitState::normalized(&z)?;
    let d = is_decomposable(&s, 1e-8);
    let entropy = entanglement_entropy(&s)?;
    let mut checks = Checks::default();
    let consistent = checks.require(
        d.decomposable == (entropy < 1e-8),
        "decomposability agrees with entropy",
    );
    let v = EntangleReport {
        input_norm,
        amplitudes: pairs(s.amplitudes()),
        decomposable: d.decomposable,
        witness: d.witness,
        entanglement_entropy: entropy,
        consistent,
    };
    json_only(&v, checks)
}

fn kaon(cmd: &KaonCmd, tol: &Tolerances) -> Outcome {
    match *cmd {
        KaonCmd::States { phi, sign } => kaon_states(sign.into(), phi),
        KaonCmd::Mixture {
            epsilon,
            epsilon_im,
            lambda,
        } => kaon_mixture(
            c(
                finite("epsilon", epsilon)?,
                finite("epsilon-im", epsilon_im)?,
            ),
            lambda,
            tol,
        ),
        KaonCmd::Threshold {
            epsilon,
            epsilon_im,
        } => kaon_threshold(c(
            finite("epsilon", epsilon)?,
            finite("epsilon-im", epsilon_im)?,
        )),
        KaonCmd::LambdaFromEta { eta } => {
            #[derive(Serialize)]
            struct L {
                eta: f64,
                lambda: f64,
            }
            let lambda = lambda_from_eta(eta)?;
            json_only(&L { eta, lambda }, Checks::default())
        }
        KaonCmd::Boundary { v, reading } => kaon_boundary(v, reading),
        KaonCmd::Source { alpha, v } => kaon_source(alpha, v),
    }
}

#[derive(Serialize)]
struct KaonStates {
    sign: Sign,
    phi: f64,
    bell: Vec<StateRow>,
    deformed: Vec<StateRow>,
}

fn kaon_states(sign: Sign, phi: f64) -> Outcome {
    let phi = finite("phi", phi)?;
    let labels = KaonEncoding.pair_labels();
    let basis = |k: usize| format!("Phi{} over {}", k + 1, labels.join(","));
    let bell = state_rows(&kaon_bell_states(), basis)?;
    let deformed = state_rows(&deformed_kaon_states(sign, phi), |k| {
        format!("deformed Phi{}", k + 1)
    })?;
    let mut table = state_table(&bell);
    table.extend(state_table(&deformed));
    let v = KaonStates {
        sign,
        phi,
        bell,
        deformed,
    };
    with_table(&v, &AMP_HEADER, &table, Checks::default())
}

#[derive(Serialize)]
struct MixtureReport {
    epsilon: [f64; 2],
    lambda: f64,
    t: f64,
    eigenvalues: Vec<f64>,
    determinant: f64,
    horodecki_m: f64,
    horodecki_m_from_state: f64,
    bell_violation: bool,
}

fn kaon_mixture(epsilon: Complex64, lambda: f64, tol: &Tolerances) -> Outcome {
    let m = KaonMixture::new(epsilon, lambda)?;
    let rho = rho_mixture(&m)?;
    let closed = horodecki_M(&m);
    let from_state = horodecki_m_from_state(&rho)?;
    let mut checks = Checks::default();
    checks.require(
        (closed - from_state).abs() < tol.eigen,
        "closed-form M agrees with the correlation-tensor value",
    );
    let v = MixtureReport {
        epsilon: [epsilon.re, epsilon.im],
        lambda,
        t: m.t(),
        eigenvalues: hermitian_eigen(rho.matrix())?.values,
        determinant: rho.matrix().determinant()?.re,
        horodecki_m: closed,
        horodecki_m_from_state: from_state,
        bell_violation: closed > 1.0,
    };
    json_only(&v, checks)
}

#[derive(Serialize)]
struct ThresholdReport {
    epsilon: [f64; 2],
    printed_lambda: f64,
    derived_lambda: f64,
    analytic_lambda: f64,
    disagreement: f64,
}

fn kaon_threshold(epsilon: Complex64) -> Outcome {
    let th = violation_threshold(epsilon);
    let mut checks = Checks::default();
    checks.require(
        (th.derived_lambda - th.analytic_lambda).abs() < 1e-9,
        "bisected threshold agrees with the closed form",
    );
    let v = ThresholdReport {
        epsilon: [epsilon.re, epsilon.im],
        printed_lambda: th.printed_lambda,
        derived_lambda: th.derived_lambda,
        analytic_lambda: th.analytic_lambda,
        disagreement: (th.printed_lambda - th.derived_lambda).abs(),
    };
    json_only(&v, checks)
}

fn kaon_boundary(v: f64, reading: Reading) -> Outcome {
    let b = match reading {
        Reading::Printed => entanglement_boundary(v)?,
        Reading::Diagonal => entanglement_boundary_diagonal_reading(v)?,
    };
    let mut checks = Checks::default();
    checks.require(
        b.alpha_star.is_some(),
        "entropy boundary has a root in (0, 1)",
    );
    json_only(&b, checks)
}

#[derive(Serialize)]
struct SourceSummary<'a> {
    alpha: f64,
    v: f64,
    layout: &'a str,
    verbatim: &'a OperatorDiagnostics,
    diagonal: &'a OperatorDiagnostics,
    entropy_pair_formula: f64,
    entropy_pair_diagonal_formula: f64,
}

fn kaon_source(alpha: f64, v: f64) -> Outcome {
    let src = ContaminatedSource::new(alpha, v)?;
    let r = contaminated_source(&src)?;
    let s = SourceSummary {
        alpha,
        v,
        layout: r.layout,
        verbatim: &r.verbatim.diagnostics,
        diagonal: &r.diagonal.diagnostics,
        entropy_pair_formula: r.entropy_pair_formula,
        entropy_pair_diagonal_formula: r.entropy_pair_diagonal_formula,
    };
    json_only(&s, Checks::default())
}

fn family(domain: &LatticeDomain) -> Result<PotentialFamily, Failure> {
    Ok(match domain.potential {
        LatticePotential::Harmonic => PotentialFamily::Harmonic {
            half_width: positive("half-width", domain.half_width)?,
        },
        LatticePotential::Box => PotentialFamily::Box {
            length: positive("length", domain.length.unwrap_or(PI))?,
        },
    })
}

fn positive(name: &str, x: f64) -> Result<f64, Failure> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Failure::Usage(format!(
            "--{name} must be positive, got {x}"
        )))
    }
}

#[derive(Serialize)]
struct LevelRow {
    k: usize,
    energy: f64,
    exact: f64,
    abs_error: f64,
}

#[derive(Serialize)]
struct SolveReport {
    potential: PotentialFamily,
    n_points: usize,
    dx0: f64,
    levels: Vec<LevelRow>,
}

fn lattice_solve(domain: &LatticeDomain, n: usize, k: usize) -> Outcome {
    let fam = family(domain)?;
    let (p, exact): (LatticeProblem, Box<dyn Fn(usize) -> f64>) = match fam {
        PotentialFamily::Harmonic { half_width } => (
            LatticeProblem::on_interval(-half_width, half_width, n, |x| 0.5 * x * x)?,
            Box::new(|k| k as f64 + 0.5),
        ),
        PotentialFamily::Box { length } => (
            LatticeProblem::on_interval(0.0, length, n, |_| 0.0)?,
            Box::new(move |k| ((k + 1) as f64 * PI / length).powi(2) / 2.0),
        ),
    };
    let spec = solve_lattice_schrodinger(&p, k)?;
    let levels: Vec<LevelRow> = spec
        .energies
        .iter()
        .enumerate()
        .map(|(k, &energy)| LevelRow {
            k,
            energy,
            exact: exact(k),
            abs_error: (energy - exact(k)).abs(),
        })
        .collect();
    let table: Vec<Vec<Cell>> = levels
        .iter()
        .map(|r| {
            vec![
                r.k.into(),
                r.energy.into(),
                r.exact.into(),
                r.abs_error.into(),
            ]
        })
        .collect();
    let v = SolveReport {
        potential: fam,
        n_points: n,
        dx0: p.dx0(),
        levels,
    };
    with_table(
        &v,
        &["k", "energy", "exact", "abs_error"],
        &table,
        Checks::default(),
    )
}

#[derive(Serialize)]
struct ConvergeReport {
    potential: PotentialFamily,
    exact: f64,
    rows: Vec<ConvergenceRow>,
    passed: bool,
}

fn lattice_converge(domain: &LatticeDomain, dx: &[f64]) -> Outcome {
    let fam = family(domain)?;
    let rows = continuum_limit_study(fam, dx)?;
    let mut checks = Checks::default();
    checks.require(
        rows.windows(2).all(|w| w[1].abs_error < w[0].abs_error),
        "error decreases with the spacing",
    );
    let order = rows
        .last()
        .and_then(|r| r.observed_order)
        .unwrap_or(f64::NAN);
    checks.require((order - 2.0).abs() <= 0.2, "observed order within 0.2 of 2");
    let table: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| {
            vec![
                r.dx0.into(),
                r.energy.into(),
                r.abs_error.into(),
                r.observed_order.into(),
            ]
        })
        .collect();
    let v = ConvergeReport {
        potential: fam,
        exact: fam.exact_ground_energy(),
        passed: checks.0.is_empty(),
        rows,
    };
    with_table(
        &v,
        &["dx0", "energy", "abs_error", "observed_order"],
        &table,
        checks,
    )
}

#[derive(Serialize)]
struct QDerivReport {
    n: u32,
    q2: f64,
    y: f64,
    q_derivative: f64,
    expected: f64,
    residual: f64,
    left_derivative: f64,
    left_derivative_lattice_form: f64,
    left_over_right: f64,
}

fn qderiv(n: u32, q2: f64, y: f64) -> Outcome {
    let f = |t: f64| t.powi(n as i32);
    let right = q_derivative(f, q2, y)?;
    let expected = q_number(n, q2) * y.powi(n as i32 - 1);
    let left = q_left_derivative(f, q2, y)?;
    let residual = (right - expected).abs();
    let mut checks = Checks::default();
    checks.require(
        residual < 1e-12 * expected.abs().max(1.0),
        "q-derivative of y^n",
    );
    let v = QDerivReport {
        n,
        q2,
        y,
        q_derivative: right,
        expected,
        residual,
        left_derivative: left,
        left_derivative_lattice_form: q_left_derivative_lattice_form(f, q2, y)?,
        left_over_right: left / right,
    };
    json_only(&v, checks)
}

#[derive(Serialize)]
struct SusyReport {
    superpotential: String,
    dx: f64,
    n_points: usize,
    q_plus_squared: f64,
    q_minus_squared: f64,
    anticommutator: f64,
    grading_anticommutator: f64,
    intertwining_plus: f64,
    intertwining_minus: f64,
    printed_intertwining_minus: f64,
    min_eigenvalue: f64,
    energy_floor: f64,
    h0_zero_modes: Vec<f64>,
    h1_zero_modes: Vec<f64>,
    rows: Vec<braidlab::susy::DegeneracyRow>,
    unmatched: Vec<usize>,
    passed: bool,
}

#[allow(clippy::too_many_arguments)]
fn susy_spectrum(
    potential: SusyPotential,
    c_value: f64,
    dx: f64,
    n: usize,
    floor: f64,
    tol_rel: f64,
    levels: usize,
) -> Outcome {
    let w = match potential {
        SusyPotential::Oscillator => Superpotential::Oscillator,
        SusyPotential::Constant => Superpotential::Constant(finite("c", c_value)?),
    };
    let pair = build_susy_pair(&SuperpotentialProblem::centered(|x| w.eval(x), dx, n)?);
    let alg = check_superalgebra(&pair);
    let inter = check_intertwining(&pair, 1e-11);
    let rep = spectrum_degeneracy_report(&pair, floor, positive("tol-rel", tol_rel)?)?;
    let mut checks = Checks::default();
    checks.require(
        alg.q_plus_squared == 0.0 && alg.q_minus_squared == 0.0,
        "(Q+)^2 = (Q-)^2 = 0",
    );
    checks.require(alg.grading_anticommutator == 0.0, "{Q, sigma_3 x I} = 0");
    checks.require(inter.passed, "intertwining H0 A+ = A+ H1, A- H0 = H1 A-");
    checks.require(rep.min_eigenvalue >= -1e-9, "H0, H1 positive semidefinite");
    checks.require(
        rep.rows.len() >= levels && rep.rows.iter().take(levels).all(|r| r.rel_gap <= tol_rel),
        format!("lowest {levels} positive levels degenerate"),
    );
    let table: Vec<Vec<Cell>> = rep
        .rows
        .iter()
        .map(|r| vec![r.k.into(), r.e0.into(), r.e1.into(), r.rel_gap.into()])
        .collect();
    let v = SusyReport {
        superpotential: format!("{w:?}"),
        dx,
        n_points: n,
        q_plus_squared: alg.q_plus_squared,
        q_minus_squared: alg.q_minus_squared,
        anticommutator: alg.anticommutator,
        grading_anticommutator: alg.grading_anticommutator,
        intertwining_plus: inter.plus,
        intertwining_minus: inter.minus,
        printed_intertwining_minus: inter.printed_minus,
        min_eigenvalue: rep.min_eigenvalue,
        energy_floor: rep.energy_floor,
        h0_zero_modes: rep.h0_below_floor.clone(),
        h1_zero_modes: rep.h1_below_floor.clone(),
        unmatched: rep.unmatched.clone(),
        passed: checks.0.is_empty(),
        rows: rep.rows,
    };
    with_table(&v, &["k", "E0", "E1", "rel_gap"], &table, checks)
}

fn report(seed: u64, tol: &Tolerances) -> Outcome {
    let rep = build_report(seed, tol)?;
    let mut checks = Checks::default();
    for c in rep.failed_checks() {
        checks.require(false, c.name.clone());
    }
    with_table(&rep, &REPORT_CSV_HEADER, &rep.csv_rows(), checks)
}
