//! Exact deformation theory for finite-dimensional Lie algebras over the rationals.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: rationals, coordinate vectors, alternating cochains, Lie
//!   algebras given by structure constants, and polynomials in `t`
//!   truncated at a fixed order.
//! * [`cohomology`]: the Chevalley-Eilenberg differential in degrees 1-3,
//!   cocycle/coboundary spaces and a coboundary solver, all by exact
//!   fraction-free elimination ([`linalg`]).
//! * [`deformation`]: the unshuffle composition of 2-cochains, the order `n`
//!   deformation equations, obstruction cochains and greedy extension.
//! * [`linfty`]: the two-term L-infinity algebra on `A[[t]] ⊕ A[1][[t]]t²`
//!   whose ternary map carries the first deformation obstruction, with
//!   mechanical checks of every structure relation.

pub mod algebra;
pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod linalg;
pub mod linfty;

pub use algebra::{
    Cochain, Grading, LieAlgebra, Rational, TruncatedSeries, ValidationReport, Vector,
    DEFAULT_TRUNCATION, MIN_TRUNCATION,
};
pub use error::{Error, Result};
