use num_complex::Complex64;

use super::{cis, ComplexMatrix, ZERO};
use crate::tolerance;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigen-decomposition of a Hermitian matrix: ascending real eigenvalues and
/// the matching orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.col(k)
    }

    /// `V·diag(λ)·V†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::real_diagonal(&self.values);
        &(&self.vectors * &lambda) * &self.vectors.dagger()
    }
}

/// `e^{−iHt}` for Hermitian `h`, via its eigen-decomposition.
pub fn unitary_exp(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let e = hermitian_eigen(h)?;
    let phases: Vec<Complex64> = e.values.iter().map(|&l| cis(-l * t)).collect();
    let d = ComplexMatrix::diagonal(&phases);
    Ok(&(&e.vectors * &d) * &e.vectors.dagger())
}

pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eigen_with(h, tolerance::EIGEN)
}

/// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
/// `h_pq` and then applies the real symmetric 2×2 rotation that zeroes it.
///
/// Precondition: `‖h − h†‖_F ≤ hermitian_tol · ‖h‖_F`.
pub fn hermitian_eigen_with(h: &ComplexMatrix, hermitian_tol: f64) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            op: "hermitian_eigen",
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let scale = h.frobenius_norm();
    let residual = h.hermiticity_residual()?;
    if residual > hermitian_tol * scale {
        return Err(Error::NotHermitian {
            residual: if scale > 0.0 {
                residual / scale
            } else {
                residual
            },
        });
    }

    let n = h.rows();
    // Work on the Hermitian part so tiny asymmetries cannot leak into rotations.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj()));
    let mut v = ComplexMatrix::identity(n);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        let off = off_norm(&a);
        if off == 0.0 || off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                let phase = cis(-apq.arg());
                // J = diag(1, e^{-iα}) · [[c, s], [-s, c]] on the (p, q) plane.
                let j_pp = Complex64::new(cs, 0.0);
                let j_pq = Complex64::new(sn, 0.0);
                let j_qp = -sn * phase;
                let j_qq = cs * phase;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * j_pp + akq * j_qp;
                    a[(k, q)] = akp * j_pq + akq * j_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
                    a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * j_pp + vkq * j_qp;
                    v[(k, q)] = vkp * j_pq + vkq * j_qq;
                }
            }
        }
    }
    if !converged && off_norm(&a) > 1e-12 * scale {
        return Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |row, k| v[(row, order[k])]);
    Ok(HermitianEigen { values, vectors })
}
