//! Bernstein-Vandermonde systems on the interval and the simplex: basis
//! conversions, Bezout-matrix inverses, FFT-based structured solvers,
//! conditioning in the L2 mass-matrix norm, and a block LU solver for
//! equispaced simplex lattices.

pub mod bases;
pub mod bezout;
pub mod conditioning;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod scalar;
pub mod simplex;
pub mod vandermonde;

pub use bases::NodeSet;
pub use error::{Error, Result};
pub use vandermonde::{BernsteinVandermonde, SolveMethod};
