//! Exact reliability polynomials of linear consecutive-k-out-of-n:F
//! systems, their complex roots, and the structural facts about them.

pub mod bkw;
pub mod closedform2;
pub mod consec;
pub mod error;
pub mod fibjac;
pub mod polycore;
pub mod rootfind;
pub mod verify;

pub use error::{Error, Result};
pub use polycore::{BigRational, ComplexApprox, IntPolynomial, Real, Var};

/// Default working precision (bits) for numeric root computations.
pub const DEFAULT_PRECISION: u32 = 256;
