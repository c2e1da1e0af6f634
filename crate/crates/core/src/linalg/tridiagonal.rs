use super::ComplexMatrix;
use crate::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;
const INVERSE_ITERATIONS: usize = 3;

/// Real symmetric tridiagonal matrix: `diag[i]` on the diagonal, `off[i]`
/// coupling rows `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymmetricTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::BadShape {
                len: off.len(),
                expected: diag.len().saturating_sub(1),
            });
        }
        if let Some(index) = diag.iter().chain(&off).position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { diag, off })
    }

    /// Extracts the tridiagonal band of a real symmetric matrix. Fails if the
    /// matrix has complex entries, asymmetry, or entries outside the band.
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                op: "SymmetricTridiagonal::from_matrix",
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if !m.is_real() || !m.is_tridiagonal() {
            return Err(Error::invalid("matrix is not real tridiagonal"));
        }
        let n = m.rows();
        for i in 0..n.saturating_sub(1) {
            if m[(i, i + 1)] != m[(i + 1, i)] {
                return Err(Error::NotHermitian {
                    residual: (m[(i, i + 1)] - m[(i + 1, i)]).norm(),
                });
            }
        }
        let diag = (0..n).map(|i| m[(i, i)].re).collect();
        let off = (0..n.saturating_sub(1)).map(|i| m[(i, i + 1)].re).collect();
        Self::new(diag, off)
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Max-row-sum norm, used to scale convergence and clustering thresholds.
    pub fn norm_inf(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i].into();
            if i + 1 < n {
                m[(i, i + 1)] = self.off[i].into();
                m[(i + 1, i)] = self.off[i].into();
            }
        }
        m
    }

    /// All eigenvalues, ascending, by implicit-shift QL.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.len();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);

        for l in 0..n {
            let mut iterations = 0;
            loop {
                let mut m = l;
                while m + 1 < n {
                    let dd = d[m].abs() + d[m + 1].abs();
                    if e[m].abs() <= f64::EPSILON * dd {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                iterations += 1;
                if iterations > MAX_QL_ITERATIONS {
                    return Err(Error::NoConvergence { iterations });
                }
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[m] - d[l] + e[l] / (g + r.copysign(g));
                let (mut s, mut cs, mut p) = (1.0, 1.0, 0.0);
                let mut deflated = false;
                let mut i = m;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
                    let b = cs * e[i];
                    r = f.hypot(g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    cs = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * cs * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = cs * r - b;
                }
                if deflated {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
        d.sort_by(f64::total_cmp);
        Ok(d)
    }

    /// Lowest `k` eigenpairs. Eigenvalues come from QL; eigenvectors from
    /// shifted inverse iteration, re-orthogonalized inside clusters of nearly
    /// equal eigenvalues. Vectors are unit-norm in the plain Euclidean sense.
    pub fn lowest_eigenpairs(&self, k: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        let n = self.len();
        if k > n {
            return Err(Error::invalid(format!(
                "requested {k} eigenpairs of a {n}x{n} matrix"
            )));
        }
        let values: Vec<f64> = self.eigenvalues()?.into_iter().take(k).collect();
        let scale = self.norm_inf().max(f64::MIN_POSITIVE);
        let cluster_tol = 1e-8 * scale;

        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
        for (idx, &lambda) in values.iter().enumerate() {
            let shift = lambda + 4.0 * f64::EPSILON * scale;
            let mut x: Vec<f64> = (0..n)
                .map(|i| 1.0 + 0.25 * ((i as f64 + 1.0) * (idx as f64 + 1.3)).sin())
                .collect();
            for _ in 0..INVERSE_ITERATIONS {
                x = self.shifted_solve(shift, &x, scale);
                for (j, prev) in vectors.iter().enumerate() {
                    if (values[j] - lambda).abs() < cluster_tol {
                        let proj: f64 = prev.iter().zip(&x).map(|(a, b)| a * b).sum();
                        for (xi, pi) in x.iter_mut().zip(prev) {
                            *xi -= proj * pi;
                        }
                    }
                }
                let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                for xi in &mut x {
                    *xi /= nx;
                }
            }
            vectors.push(x);
        }
        Ok((values, vectors))
    }

    /// Solves `(T − σI) x = b` by Gaussian elimination with partial pivoting;
    /// exactly zero pivots are replaced by `ε·scale` so the solve always
    /// completes near an eigenvalue.
    fn shifted_solve(&self, sigma: f64, b: &[f64], scale: f64) -> Vec<f64> {
        let n = self.len();
        let tiny = f64::EPSILON * scale;
        // Row i holds (lower, diag, upper, upper2) after elimination.
        let mut dl: Vec<f64> = (0..n)
            .map(|i| if i > 0 { self.off[i - 1] } else { 0.0 })
            .collect();
        let mut dd: Vec<f64> = self.diag.iter().map(|d| d - sigma).collect();
        let mut du: Vec<f64> = (0..n)
            .map(|i| if i + 1 < n { self.off[i] } else { 0.0 })
            .collect();
        let mut du2 = vec![0.0; n];
        let mut rhs = b.to_vec();

        for i in 0..n.saturating_sub(1) {
            let below = dl[i + 1];
            if below.abs() > dd[i].abs() {
                // Swap rows i and i + 1.
                let (a0, a1, a2) = (dd[i], du[i], du2[i]);
                dd[i] = below;
                du[i] = dd[i + 1];
                du2[i] = du[i + 1];
                let factor = a0 / dd[i];
                dd[i + 1] = a1 - factor * du[i];
                du[i + 1] = a2 - factor * du2[i];
                rhs.swap(i, i + 1);
                rhs[i + 1] -= factor * rhs[i];
            } else {
                if dd[i] == 0.0 {
                    dd[i] = tiny;
                }
                let factor = below / dd[i];
                dd[i + 1] -= factor * du[i];
                rhs[i + 1] -= factor * rhs[i];
            }
            dl[i + 1] = 0.0;
        }
        if dd[n - 1] == 0.0 {
            dd[n - 1] = tiny;
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = rhs[i];
            if i + 1 < n {
                s -= du[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= du2[i] * x[i + 2];
            }
            x[i] = s / dd[i];
        }
        x
    }
}
