//! Exact arithmetic kernel: sparse polynomials over the rationals in the variables
//! `x[i,j]` of a generic matrix and the Rees variables `T[k]`, plus exact linear algebra.

mod graded;
mod matrix;
mod poly;
mod shape;
mod text;

pub use graded::{
    graded_component_dim, ring_component_dim, x_monomials, MAX_GRADED_DEGREE, MAX_GRADED_VARS,
};
pub use matrix::RationalMatrix;
pub use poly::{Monomial, Poly};
pub use shape::{Shape, VarId};

pub(crate) use poly::write_coefficient;
pub(crate) use text::parse_terms;

/// Arbitrary-precision rational coefficients.
pub type Rational = num_rational::BigRational;

/// Converts a machine integer into a [`Rational`].
pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}
