//! Exact symbolic algebra for the contact quantum 3-sphere `S³_μ`, its
//! `U(1)` Hopf-Galois extension over the quantum 2-sphere, the strong
//! connection and the monopole projectors of every charge, together with
//! their numerical evaluation in finite-dimensional representations and in
//! the classical limit `μ = 0`.

pub mod algebra;
pub mod error;
pub mod galois;
pub mod hopf;
pub mod mu;
pub mod projectors;
pub mod report;
pub mod reps;
pub mod sample;
pub mod scalar;
pub mod suite;
pub mod syntax;

pub use algebra::{Generator, Monomial, NCPoly};
pub use error::Error;
pub use mu::MuScalar;
pub use scalar::ExactScalar;
