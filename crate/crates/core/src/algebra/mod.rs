//! Exact scalars and monomial arithmetic.

mod field;
mod monomial;
mod rational;

pub use field::{Field, Scalar};
pub use monomial::{Monomial, MonomialDisplay, Variables};
pub use rational::Rational;
