//! Lattice calculus with spacing `Δx₀`, q-derivatives on the multiplicative
//! lattice `y ↦ q²y`, and the discrete Schrödinger eigenproblem
//! `½ψ'' + (E − U)ψ = 0` with Dirichlet ends.

use serde::Serialize;

use crate::linalg::{ComplexMatrix, SymmetricTridiagonal};
use crate::{Error, Result};

/// Samples `f(x_min + i·Δx₀)`, `i = 0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub x_min: f64,
    pub dx0: f64,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(x_min: f64, dx0: f64, values: Vec<f64>) -> Result<Self> {
        if !(dx0 > 0.0 && dx0.is_finite() && x_min.is_finite()) {
            return Err(Error::invalid(format!(
                "grid needs finite x_min and dx0 > 0, got dx0 = {dx0}"
            )));
        }
        Ok(Self { x_min, dx0, values })
    }

    pub fn from_fn(f: impl Fn(f64) -> f64, x_min: f64, dx0: f64, n: usize) -> Result<Self> {
        let values = (0..n).map(|i| f(x_min + dx0 * i as f64)).collect();
        Self::new(x_min, dx0, values)
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + self.dx0 * i as f64
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn require_samples(f: &SampledFunction, min: usize) -> Result<()> {
    if f.len() < min {
        return Err(Error::invalid(format!(
            "need at least {min} samples, got {}",
            f.len()
        )));
    }
    Ok(())
}

/// `[f(x+Δx₀) − f(x)]/Δx₀` at the first `n − 1` grid points.
pub fn forward_derivative(f: &SampledFunction) -> Result<SampledFunction> {
    require_samples(f, 2)?;
    let values = f.values.windows(2).map(|w| (w[1] - w[0]) / f.dx0).collect();
    SampledFunction::new(f.x_min, f.dx0, values)
}

/// `[f(x) − f(x−Δx₀)]/Δx₀` at the last `n − 1` grid points.
pub fn backward_derivative(f: &SampledFunction) -> Result<SampledFunction> {
    require_samples(f, 2)?;
    let values = f.values.windows(2).map(|w| (w[1] - w[0]) / f.dx0).collect();
    SampledFunction::new(f.x_min + f.dx0, f.dx0, values)
}

/// Checks `ψ(x)·dx = dx·ψ(x+Δx₀)` as the operator identity
/// `M_ψ·S = S·M_{ψ(·+Δx₀)}`, where `M` multiplies pointwise and `S` shifts
/// one step with zero fill. The shifted factor is evaluated from `f` at
/// `x + Δx₀`, not re-indexed, so rounding in the grid shows up here.
pub fn check_shift_commutation(
    f: impl Fn(f64) -> f64,
    x_min: f64,
    dx0: f64,
    n: usize,
) -> Result<f64> {
    if n < 3 {
        return Err(Error::invalid(format!(
            "need at least 3 grid points, got {n}"
        )));
    }
    let grid = SampledFunction::from_fn(&f, x_min, dx0, n)?;
    let shifted: Vec<f64> = (0..n).map(|i| f(grid.x(i) + dx0)).collect();
    let m = ComplexMatrix::real_diagonal(&grid.values);
    let m_shift = ComplexMatrix::real_diagonal(&shifted);
    let s = ComplexMatrix::from_fn(
        n,
        n,
        |i, j| if i == j + 1 { 1.0.into() } else { 0.0.into() },
    );
    let lhs = m.matmul(&s)?;
    let rhs = s.matmul(&m_shift)?;
    Ok((&lhs - &rhs).frobenius_norm())
}

fn check_q(q_squared: f64, y: f64) -> Result<()> {
    if !(q_squared > 0.0 && q_squared.is_finite()) || q_squared == 1.0 {
        return Err(Error::invalid(format!(
            "q^2 must be positive and different from 1, got {q_squared}"
        )));
    }
    if y == 0.0 || !y.is_finite() {
        return Err(Error::invalid("q-derivative needs a finite nonzero y"));
    }
    Ok(())
}

/// `[f(q²y) − f(y)]/((q²−1)y)`
pub fn q_derivative(f: impl Fn(f64) -> f64, q_squared: f64, y: f64) -> Result<f64> {
    check_q(q_squared, y)?;
    Ok((f(q_squared * y) - f(y)) / ((q_squared - 1.0) * y))
}

/// `[f(y) − f(q²y)]/((1−q⁻²)y)`, the printed left derivative. It equals
/// `−q²` times [`q_derivative`], so its classical limit is `−f'(y)`.
pub fn q_left_derivative(f: impl Fn(f64) -> f64, q_squared: f64, y: f64) -> Result<f64> {
    check_q(q_squared, y)?;
    Ok((f(y) - f(q_squared * y)) / ((1.0 - 1.0 / q_squared) * y))
}

/// The same left derivative written with `Δx₀ = q² − 1`:
/// `(Δx₀+1)·[f(y) − f((Δx₀+1)y)]/(Δx₀·y)`.
pub fn q_left_derivative_lattice_form(
    f: impl Fn(f64) -> f64,
    q_squared: f64,
    y: f64,
) -> Result<f64> {
    check_q(q_squared, y)?;
    let dx0 = q_squared - 1.0;
    Ok((dx0 + 1.0) * (f(y) - f((dx0 + 1.0) * y)) / (dx0 * y))
}

/// `[n]_k = (kⁿ − 1)/(k − 1)`, with `[n]_1 = n`.
pub fn q_number(n: u32, k: f64) -> f64 {
    if k == 1.0 {
        n as f64
    } else {
        (0..n).map(|j| k.powi(j as i32)).sum()
    }
}

/// `|∂_y f(y) − y⁻¹·∂_x f(eˣ)|` at `y = eˣ`, with `∂_y` the q-derivative at
/// `q² = 1 + Δx₀` and `∂_x` the forward lattice derivative with step `Δx₀`.
/// The two agree to `O(Δx₀)`.
pub fn change_of_variables_residual(f: impl Fn(f64) -> f64, x: f64, dx0: f64) -> Result<f64> {
    let y = x.exp();
    let dy = q_derivative(&f, 1.0 + dx0, y)?;
    let dx = (f((x + dx0).exp()) - f(y)) / dx0;
    Ok((dy - dx / y).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Dirichlet,
}

/// Discrete Schrödinger problem on `x_n = x_min + nΔx₀`, `n = 0..N`, with
/// `ψ = 0` one step outside each end.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeProblem {
    dx0: f64,
    x_min: f64,
    potential: Vec<f64>,
    boundary: Boundary,
}

impl LatticeProblem {
    pub fn new(dx0: f64, x_min: f64, potential: Vec<f64>) -> Result<Self> {
        if !(dx0 > 0.0 && dx0.is_finite() && x_min.is_finite()) {
            return Err(Error::invalid(format!(
                "dx0 must be positive and finite, got {dx0}"
            )));
        }
        if potential.len() < 3 {
            return Err(Error::invalid(format!(
                "need at least 3 lattice points, got {}",
                potential.len()
            )));
        }
        if let Some(index) = potential.iter().position(|u| !u.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            dx0,
            x_min,
            potential,
            boundary: Boundary::Dirichlet,
        })
    }

    pub fn from_fn(dx0: f64, x_min: f64, n_points: usize, u: impl Fn(f64) -> f64) -> Result<Self> {
        let potential = (0..n_points).map(|i| u(x_min + dx0 * i as f64)).collect();
        Self::new(dx0, x_min, potential)
    }

    /// `n_points` interior points of `[a, b]` with `ψ(a) = ψ(b) = 0`, so
    /// `Δx₀ = (b − a)/(n_points + 1)`.
    pub fn on_interval(a: f64, b: f64, n_points: usize, u: impl Fn(f64) -> f64) -> Result<Self> {
        if !(b > a) {
            return Err(Error::invalid(format!("empty interval [{a}, {b}]")));
        }
        let dx0 = (b - a) / (n_points as f64 + 1.0);
        Self::from_fn(dx0, a + dx0, n_points, u)
    }

    pub fn dx0(&self) -> f64 {
        self.dx0
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn n_points(&self) -> usize {
        self.potential.len()
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// `−(1/(2Δx₀²))·[ψ_{n+1} − 2ψ_n + ψ_{n−1}] + U_n ψ_n`
    pub fn hamiltonian(&self) -> SymmetricTridiagonal {
        let k = 1.0 / (2.0 * self.dx0 * self.dx0);
        let diag = self.potential.iter().map(|u| 2.0 * k + u).collect();
        let off = vec![-k; self.n_points() - 1];
        SymmetricTridiagonal::new(diag, off).expect("validated lattice")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpectrum {
    pub energies: Vec<f64>,
    /// Normalized so that `Σ ψ_n² Δx₀ = 1`.
    pub eigenfunctions: Vec<Vec<f64>>,
}

pub fn solve_lattice_schrodinger(p: &LatticeProblem, k_lowest: usize) -> Result<LatticeSpectrum> {
    if k_lowest > p.n_points() {
        return Err(Error::invalid(format!(
            "asked for {k_lowest} levels of a {}-point lattice",
            p.n_points()
        )));
    }
    let (energies, vectors) = p.hamiltonian().lowest_eigenpairs(k_lowest)?;
    let w = 1.0 / p.dx0.sqrt();
    let eigenfunctions = vectors
        .into_iter()
        .map(|v| v.into_iter().map(|x| x * w).collect())
        .collect();
    Ok(LatticeSpectrum {
        energies,
        eigenfunctions,
    })
}

/// Potentials with a known continuum ground-state energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum PotentialFamily {
    /// `U = x²/2` on `[−half_width, half_width]`; `E₀ = ½`.
    Harmonic { half_width: f64 },
    /// `U = 0` on `[0, length]`; `E₀ = π²/(2·length²)`.
    Box { length: f64 },
}

impl PotentialFamily {
    pub fn exact_ground_energy(&self) -> f64 {
        match *self {
            PotentialFamily::Harmonic { .. } => 0.5,
            PotentialFamily::Box { length } => {
                std::f64::consts::PI.powi(2) / (2.0 * length * length)
            }
        }
    }

    /// Lattice whose spacing is the closest to `dx0` that divides the domain
    /// exactly, so that Dirichlet points land on the domain ends.
    pub fn problem(&self, dx0: f64) -> Result<LatticeProblem> {
        let (a, b, u): (f64, f64, fn(f64) -> f64) = match *self {
            PotentialFamily::Harmonic { half_width } => (-half_width, half_width, |x| 0.5 * x * x),
            PotentialFamily::Box { length } => (0.0, length, |_| 0.0),
        };
        if !(dx0 > 0.0) {
            return Err(Error::invalid(format!("dx0 must be positive, got {dx0}")));
        }
        let intervals = ((b - a) / dx0).round() as usize;
        if intervals < 4 {
            return Err(Error::invalid(format!(
                "dx0 = {dx0} is too coarse for the domain"
            )));
        }
        LatticeProblem::on_interval(a, b, intervals - 1, u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub dx0: f64,
    pub energy: f64,
    pub abs_error: f64,
    /// `ln(e_{i−1}/e_i)/ln(h_{i−1}/h_i)`; absent on the first row.
    pub observed_order: Option<f64>,
}

/// Ground-state energy against its continuum value over decreasing spacings.
pub fn continuum_limit_study(family: PotentialFamily, dx0s: &[f64]) -> Result<Vec<ConvergenceRow>> {
    if dx0s.len() < 3 {
        return Err(Error::invalid("continuum study needs at least 3 spacings"));
    }
    if dx0s.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::invalid("spacings must be strictly decreasing"));
    }
    let exact = family.exact_ground_energy();
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(dx0s.len());
    for &h in dx0s {
        let p = family.problem(h)?;
        let energy = solve_lattice_schrodinger(&p, 1)?.energies[0];
        let abs_error = (energy - exact).abs();
        let observed_order = rows
            .last()
            .map(|prev| (prev.abs_error / abs_error).ln() / (prev.dx0 / p.dx0()).ln());
        rows.push(ConvergenceRow {
            dx0: p.dx0(),
            energy,
            abs_error,
            observed_order,
        });
    }
    Ok(rows)
}
