mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use braidlab::braid::Sign;
use braidlab::tolerance::Tolerances;

#[derive(Parser, Debug)]
#[command(
    name = "braidlab",
    version,
    about = "Braid-group and quantum-information verification suite"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format; CSV is available for tabular verbs only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Tolerance for identities that hold to rounding.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol_exact: Option<f64>,
    /// Tolerance for eigenvalue-based checks.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol_eigen: Option<f64>,
    /// Smallest pivot accepted by matrix inversion.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol_pivot: Option<f64>,
    /// Negative eigenvalues above minus this are clamped to zero.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol_clamp: Option<f64>,
    /// Bisection interval width.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol_bisection: Option<f64>,
}

impl GlobalArgs {
    /// Tolerances with overrides applied; a non-positive override is reported
    /// by its flag name.
    pub fn tolerances(&self) -> Result<Tolerances, String> {
        let mut t = Tolerances::default();
        let overrides = [
            ("--tol-exact", self.tol_exact, &mut t.exact),
            ("--tol-eigen", self.tol_eigen, &mut t.eigen),
            ("--tol-pivot", self.tol_pivot, &mut t.singular_pivot),
            ("--tol-clamp", self.tol_clamp, &mut t.clamp_negative),
            ("--tol-bisection", self.tol_bisection, &mut t.bisection),
        ];
        for (flag, value, slot) in overrides {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(format!("{flag} must be a positive finite number, got {v}"));
                }
                *slot = v;
            }
        }
        Ok(t)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Braid, Yang-Baxter and Clifford identities.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// NOT, square-root-of-NOT and CNOT decomposition.
    #[command(subcommand)]
    Gates(GatesCmd),
    /// States generated by b(phi) from the computational basis.
    Bell {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
    },
    /// Two-qubit entanglement checks.
    #[command(subcommand)]
    Entangle(EntangleCmd),
    /// Two-kaon states, mixtures, thresholds and entropies.
    #[command(subcommand)]
    Kaon(KaonCmd),
    /// Lattice Schroedinger equation.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// q-derivative of y^n against [n]_{q^2} y^(n-1).
    Qderiv {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q2: f64,
        #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
        y: f64,
    },
    /// Discretized supersymmetric quantum mechanics.
    #[command(subcommand)]
    Susy(SusyCmd),
    /// Runs every check and emits the discrepancy report.
    Report,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Braid relation, far commutativity, unitarity and QYBE of b(phi).
    Braid {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
    },
    /// QYBE residual of the Yang-Baxterized family on a grid in (0, 1]^2.
    Qybe {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        /// Points per axis.
        #[arg(long, default_value_t = 5)]
        grid: usize,
    },
    /// Clifford relations of the two-dimensional Dirac matrices.
    Clifford,
}

#[derive(Subcommand, Debug)]
pub enum GatesCmd {
    /// CNOT = M R N with the printed and the corrected factors.
    DecomposeCnot,
    /// Square root of NOT and its two-level supersymmetric reading.
    SqrtNot,
}

#[derive(Subcommand, Debug)]
pub enum EntangleCmd {
    /// Decomposability and entanglement entropy of a two-qubit state.
    Check {
        /// Eight reals: re,im of the amplitudes of |00>,|01>,|10>,|11>.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        amps: Vec<f64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum KaonCmd {
    /// Kaon Bell states and their phase-deformed versions.
    States {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
    },
    /// Density matrix rho(epsilon, lambda) and its Horodecki quantity.
    Mixture {
        #[arg(long, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        epsilon_im: f64,
        #[arg(long)]
        lambda: f64,
    },
    /// Printed and derived Bell-violation thresholds in lambda.
    Threshold {
        #[arg(long, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        epsilon_im: f64,
    },
    /// lambda = 1 - 2 eta.
    LambdaFromEta {
        #[arg(long)]
        eta: f64,
    },
    /// Root of S(LS) = S(L,S) in alpha for fixed v.
    Boundary {
        #[arg(long)]
        v: f64,
        #[arg(long, value_enum, default_value_t = Reading::Printed)]
        reading: Reading,
    },
    /// Contaminated source operator under both readings.
    Source {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        v: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// Entropy formulas exactly as printed.
    Printed,
    /// Last pair-entropy coefficient (1 - alpha).
    Diagonal,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticePotential {
    /// U = x^2/2 on [-half_width, half_width].
    Harmonic,
    /// U = 0 on [0, length].
    Box,
}

#[derive(Args, Debug, Clone)]
pub struct LatticeDomain {
    #[arg(long, value_enum, default_value_t = LatticePotential::Harmonic)]
    pub potential: LatticePotential,
    /// Half-width of the harmonic domain.
    #[arg(long, default_value_t = 8.0)]
    pub half_width: f64,
    /// Length of the box; defaults to pi.
    #[arg(long)]
    pub length: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Lowest levels on a grid of n interior points.
    Solve {
        #[command(flatten)]
        domain: LatticeDomain,
        /// Interior grid points.
        #[arg(long, default_value_t = 1601)]
        n: usize,
        /// Number of levels.
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Ground-energy convergence over decreasing spacings.
    Converge {
        #[command(flatten)]
        domain: LatticeDomain,
        #[arg(long, value_delimiter = ',', default_values_t = [0.08, 0.04, 0.02])]
        dx: Vec<f64>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SusyPotential {
    /// v(x) = x.
    Oscillator,
    /// v(x) = c.
    Constant,
}

#[derive(Subcommand, Debug)]
pub enum SusyCmd {
    /// Level pairing of H0 and H1 plus the superalgebra residuals.
    Spectrum {
        #[arg(long, value_enum, default_value_t = SusyPotential::Oscillator)]
        potential: SusyPotential,
        /// Value of a constant superpotential.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 1.0 / 64.0)]
        dx: f64,
        #[arg(long, default_value_t = 1001)]
        n: usize,
        /// Levels at or below this energy are listed as zero modes.
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        floor: f64,
        /// Relative gap accepted as degenerate.
        #[arg(long, default_value_t = 1e-3)]
        tol_rel: f64,
        /// Number of paired levels that must be degenerate.
        #[arg(long, default_value_t = 5)]
        levels: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    ExitCode::from(commands::run(&cli))
}
