//! Exact computer algebra for metrised Jordan algebras and the graph
//! hypersurfaces they define.
//!
//! A commutative algebra with a compatible non-degenerate bilinear form
//! determines a hypersurface `x_{n+1} = F(x)` whose cubic form is parallel;
//! nilpotent algebras give improper affine hyperspheres (`det F'' = +-1`)
//! with polynomial `F`. This crate validates the algebraic axioms exactly,
//! computes semi-canonical forms, generates the defining polynomials under
//! three parallelism regimes, verifies the governing PDEs as exact rational
//! identities, and ships the known low-dimensional classification as a
//! built-in catalog.
//!
//! Everything runs over arbitrary-precision rationals; the only
//! nondeterminism is seeded point sampling in the verification paths.

pub mod algebra;
pub mod canonical;
pub mod catalog;
pub mod error;
pub mod exactnum;
pub mod io;
pub mod metrised;
pub mod poly;
pub mod sample;
pub mod surface;

pub use error::{Error, Result};
pub use exactnum::{Matrix, Rat};
