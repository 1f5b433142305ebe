//! Discrete bilinear operators induced by infinite tensors on `Z^d`.
//!
//! The crate covers weighted sequence spaces, tensor families and their
//! finite-difference calculus, the almost-diagonal norms and symbol-class
//! seminorms, the induced bilinear operators and commutators, a verification
//! harness for boundedness and compactness, and a torus-grid Fourier bridge.

pub mod error;
pub mod fourier;
pub mod lattice;
pub mod norms;
pub mod operator;
pub mod report;
pub mod tensor;
pub mod verification;

pub use error::{DboError, Result};
