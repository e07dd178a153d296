//! Exact and approximate scalar/polynomial arithmetic.

pub mod complex;
pub mod int_poly;
pub mod rational;
pub mod real;

pub use complex::ComplexApprox;
pub use int_poly::{IntPolynomial, Var};
pub use rational::BigRational;
pub use real::{cos_ladder, normalize_precision, Real};
