//! Exact-arithmetic construction, verification and classification of
//! multiloop Lie tori built from (simple Lie algebra, commuting
//! finite-order automorphism tuple, Cartan subalgebra) triples.
//!
//! All values are immutable after construction and safe to share across
//! threads; every operation is a pure function with deterministic output.

pub mod autos;
pub mod classify;
pub mod error;
pub mod exactfield;
pub mod intmat;
pub mod liealg;
pub mod linalg;
pub mod rootsys;
pub mod scenario;
pub mod torus;

pub use error::{LtError, Result};
pub use exactfield::{CyclotomicNumber, ExactPolynomial, FieldContext};
pub use liealg::{LieAlgebra, Subspace};
pub use rootsys::{RootSystem, RootSystemType};
pub use torus::MultiloopTorus;
