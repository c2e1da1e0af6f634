//! Dense complex linear algebra for small matrices.

mod compare;
mod eigen;
mod matrix;
mod tridiagonal;

pub use compare::{distance_up_to_phase, ComparisonReport};
pub use eigen::{hermitian_eigen, hermitian_eigen_with, unitary_exp, HermitianEigen};
pub use matrix::{ComplexMatrix, UnitarityCheck};
pub use tridiagonal::SymmetricTridiagonal;

pub use num_complex::Complex64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{iθ}`
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]])
}

/// `⟨u|w⟩`
pub fn inner(u: &[Complex64], w: &[Complex64]) -> Complex64 {
    u.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(u: &[Complex64]) -> f64 {
    u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn kron_vec(u: &[Complex64], w: &[Complex64]) -> Vec<Complex64> {
    u.iter()
        .flat_map(|&a| w.iter().map(move |&b| a * b))
        .collect()
}
