//! Numerical toolkit for the order structure of projections in
//! finite-dimensional matrix C*-algebras.
//!
//! The crate is organized bottom-up:
//!
//! - [`spectra`]: Hermitian decomposition, spectral families `E_S(t)`,
//!   functional calculus and norms under one [`ToleranceConfig`].
//! - [`projorder`]: the order on projections, meets and joins, the
//!   `sup σ(T*T) \ {1} < 1` criterion, spectrum identities, separativity.
//! - [`sequences`]: decreasing and increasing equalizers, the `EE`
//!   inequality, and the self-adjoint gap element.
//! - [`algebra`]: direct sums of matrix blocks, block-selection quotient maps
//!   and projection pullbacks.
//! - [`calkin`]: block-diagonal operator sequences as a model of the Calkin
//!   quotient, with the standard counterexample families.
//! - [`verify`]: seeded property suites producing deterministic reports.

pub mod algebra;
pub mod calkin;
pub mod error;
pub mod io;
pub mod linalg;
pub mod projection;
pub mod projorder;
pub mod random;
pub mod sequences;
pub mod spectra;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use projection::Projection;
pub use tolerance::ToleranceConfig;
