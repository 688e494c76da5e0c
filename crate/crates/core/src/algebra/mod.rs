//! Exact building blocks: rationals, vectors of `A`, alternating cochains,
//! Lie algebras and truncated series in `t`.

mod cochain;
mod lie;
mod rational;
mod series;
mod vector;

pub use cochain::{increasing_tuples, permutation_sign, Cochain};
pub use lie::{validate_jacobi, JacobiViolation, LieAlgebra, ValidationReport};
pub use rational::{format_rational, parse_rational, Rational};
pub use series::{Grading, TruncatedSeries, DEFAULT_TRUNCATION, MIN_TRUNCATION};
pub use vector::Vector;
