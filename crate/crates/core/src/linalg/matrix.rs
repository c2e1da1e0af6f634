use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::linalg::{c, ONE, ZERO};
use crate::tolerance;
use crate::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Outcome of [`ComplexMatrix::is_unitary`]; the residual is always reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitarityCheck {
    pub unitary: bool,
    /// `‖a†a − I‖_F`
    pub residual: f64,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadShape {
                len: data.len(),
                expected: rows * cols,
            });
        }
        if let Some(index) = data
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn real_diagonal(entries: &[f64]) -> Self {
        Self::diagonal(&entries.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>())
    }

    /// Builds a matrix from literal rows. Panics on non-finite entries, so it
    /// is meant for constants known at the call site.
    pub fn from_rows<const N: usize>(rows: &[[Complex64; N]]) -> Self {
        let data: Vec<Complex64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(rows.len(), N, data).expect("literal matrix must be finite")
    }

    pub fn from_real_rows<const N: usize>(rows: &[[f64; N]]) -> Self {
        let data: Vec<Complex64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| c(x, 0.0)))
            .collect();
        Self::new(rows.len(), N, data).expect("literal matrix must be finite")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Column vector `n×1`.
    pub fn column(entries: &[Complex64]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    /// Outer product `|u⟩⟨w|`.
    pub fn outer(u: &[Complex64], w: &[Complex64]) -> Self {
        Self::from_fn(u.len(), w.len(), |i, j| u[i] * w[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    fn require_square(&self, op: &'static str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        self.map(|z| z * k)
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.map(|z| z * k)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Matrix product. Structural zeros of `self` are skipped, which keeps
    /// products of banded operators at `O(n²)` instead of `O(n³)`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Kronecker product, shape `(r_a·r_b, c_a·c_b)`.
    pub fn kron(&self, other: &Self) -> Self {
        let (ra, ca) = self.shape();
        let (rb, cb) = other.shape();
        Self::from_fn(ra * rb, ca * cb, |i, j| {
            self[(i / rb, j / cb)] * other[(i % rb, j % cb)]
        })
    }

    pub fn trace(&self) -> Result<Complex64> {
        self.require_square("trace")?;
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.try_sub(&other.matmul(self)?)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.try_add(&other.matmul(self)?)
    }

    /// `‖a − a†‖_F`.
    pub fn hermiticity_residual(&self) -> Result<f64> {
        self.require_square("hermiticity_residual")?;
        Ok(self.try_sub(&self.dagger())?.frobenius_norm())
    }

    pub fn is_unitary(&self, tol: f64) -> Result<UnitarityCheck> {
        self.require_square("is_unitary")?;
        let residual = self
            .dagger()
            .matmul(self)?
            .try_sub(&Self::identity(self.rows))?
            .frobenius_norm();
        Ok(UnitarityCheck {
            unitary: residual < tol,
            residual,
        })
    }

    /// Whether every entry off the three central diagonals is exactly zero.
    pub fn is_tridiagonal(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i.abs_diff(j) > 1 && self[(i, j)] != ZERO {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Partial-pivot LU in place; returns (lu, permutation sign, pivots).
    fn lu(&self) -> (Self, f64, Vec<usize>) {
        let n = self.rows;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let (p, _) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold(
                    (k, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            if pivot == ZERO {
                continue;
            }
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        (lu, sign, perm)
    }

    pub fn determinant(&self) -> Result<Complex64> {
        self.require_square("determinant")?;
        let (lu, sign, _) = self.lu();
        Ok((0..self.rows).map(|i| lu[(i, i)]).product::<Complex64>() * sign)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with(tolerance::SINGULAR_PIVOT)
    }

    /// Inverse with an explicit singularity threshold: fails when the smallest
    /// pivot magnitude is below `pivot_tol · max pivot`.
    pub fn inverse_with(&self, pivot_tol: f64) -> Result<Self> {
        self.require_square("inverse")?;
        let n = self.rows;
        let (lu, _, perm) = self.lu();
        let pivots: Vec<f64> = (0..n).map(|i| lu[(i, i)].norm()).collect();
        let max_pivot = pivots.iter().copied().fold(0.0, f64::max);
        let min_pivot = pivots.iter().copied().fold(f64::INFINITY, f64::min);
        if n > 0 && (max_pivot == 0.0 || min_pivot < pivot_tol * max_pivot) {
            return Err(Error::Singular {
                pivot: min_pivot,
                max_pivot,
            });
        }
        let mut inv = Self::zeros(n, n);
        for col in 0..n {
            // Solve L U x = P e_col.
            let mut x: Vec<Complex64> = (0..n)
                .map(|i| if perm[i] == col { ONE } else { ZERO })
                .collect();
            for i in 0..n {
                let mut s = x[i];
                for j in 0..i {
                    s -= lu[(i, j)] * x[j];
                }
                x[i] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[i];
                for j in i + 1..n {
                    s -= lu[(i, j)] * x[j];
                }
                x[i] = s / lu[(i, i)];
            }
            for i in 0..n {
                inv[(i, col)] = x[i];
            }
        }
        Ok(inv)
    }

    /// `|det(a − λI)|`; a small value certifies `λ` as an eigenvalue.
    pub fn eigenvalue_residual(&self, lambda: Complex64) -> Result<f64> {
        self.require_square("eigenvalue_residual")?;
        let shifted = self.try_sub(&Self::identity(self.rows).scale(lambda))?;
        Ok(shifted.determinant()?.norm())
    }

    /// Entrywise bit-identity.
    pub fn bit_identical(&self, other: &Self) -> bool {
        self.shape() == other.shape()
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

// Operator sugar for call sites where shapes are fixed by construction.
// These panic on mismatch; use `matmul`/`try_add`/`try_sub` for checked paths.

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
