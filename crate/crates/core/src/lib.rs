//! Exact symbolic verification toolkit for determinantal ideals of maximal minors.
//!
//! The crate builds, over the rationals, the chain-map lift from Koszul complexes on powers
//! of signed maximal minors of an `n x (n-1)` generic matrix into the linear strands of the
//! Rees-algebra Koszul complex, realizes the resulting `Ext` generators as classes in top
//! local cohomology through constant-coefficient differential operators, and checks the
//! annihilator and Hilbert-function identities for the GL-invariant ideals generated by
//! generalized permanents.

pub mod algebra;
pub mod combinatorics;
pub mod determinantal;
pub mod weyl;
pub mod complexes;
pub mod cohomology;
pub mod report;
pub mod error;

pub use algebra::{Monomial, Poly, Rational, RationalMatrix, Shape, VarId};
pub use error::{Error, Result};
