//! Braid-group representations, Yang-Baxter solutions and the quantum
//! information checks built on them: gate decompositions, entanglement
//! measures, the two-kaon density-matrix model, lattice and q-deformed
//! Schrödinger calculus, and discretized supersymmetric quantum mechanics.
//!
//! Every module is a set of pure functions over immutable values.

pub mod braid;
pub mod entanglement;
pub mod error;
pub mod gates;
pub mod kaon;
pub mod linalg;
pub mod qlattice;
pub mod report;
pub mod serialize;
pub mod susy;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix};
