//! Dense univariate polynomials with exact integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::complex::ComplexApprox;
use super::real::Real;
use crate::error::{Error, Result};

/// Which indeterminate a polynomial is written in. The reliability
/// polynomials live in `p`; the transformed families live in `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    P,
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::P => "p",
            Var::Z => "z",
        })
    }
}

/// Polynomial stored lowest degree first, always normalized: no trailing
/// zero coefficients, the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
    var: Var,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>, var: Var) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs, var }
    }

    pub fn from_i64(coeffs: &[i64], var: Var) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), var)
    }

    pub fn zero(var: Var) -> Self {
        IntPolynomial {
            coeffs: Vec::new(),
            var,
        }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(BigInt::one(), var)
    }

    pub fn constant(c: BigInt, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    pub fn monomial(c: BigInt, degree: usize, var: Var) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs, var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    fn check_var(&self, rhs: &Self) -> Result<()> {
        if self.var == rhs.var {
            Ok(())
        } else {
            Err(Error::VarMismatch {
                left: self.var,
                right: rhs.var,
            })
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_var(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Ok(Self::new(coeffs, self.var))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_var(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Ok(Self::new(coeffs, self.var))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_var(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self::new(coeffs, self.var))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    /// Multiplies by `var^m`.
    pub fn shift_up(&self, m: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); m];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs, self.var)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::new(coeffs, self.var)
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_real(&self, x: &Real) -> Real {
        let prec = x.prec();
        let mut acc = Real::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Real::from_bigint(c, prec));
        }
        acc
    }

    pub fn eval_complex(&self, x: &ComplexApprox) -> ComplexApprox {
        let prec = x.prec();
        let mut acc = ComplexApprox::zero(prec);
        for c in self.coeffs.iter().rev() {
            let term = ComplexApprox::from_real(Real::from_bigint(c, prec));
            acc = acc.mul(x).add(&term);
        }
        acc
    }

    /// Factors out the largest power of the indeterminate dividing `self`,
    /// returning the cofactor and that power (the multiplicity of the root
    /// at the origin). The zero polynomial comes back unchanged.
    pub fn strip_zero_roots(&self) -> (Self, usize) {
        if self.is_zero() {
            return (self.clone(), 0);
        }
        let m = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("normalized nonzero polynomial");
        (Self::new(self.coeffs[m..].to_vec(), self.var), m)
    }

    /// Exact synthetic division by `(var - r)`. Returns the quotient when
    /// the remainder vanishes, i.e. when `r` is a root, otherwise `None`.
    pub fn deflate_linear_root(&self, r: &BigInt) -> Option<Self> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let mut quot = vec![BigInt::zero(); d];
        let mut carry = self.coeffs[d].clone();
        for i in (1..=d).rev() {
            quot[i - 1] = carry.clone();
            carry = &self.coeffs[i - 1] + r * carry;
        }
        if carry.is_zero() {
            Some(Self::new(quot, self.var))
        } else {
            None
        }
    }

    /// Largest coefficient magnitude; zero for the zero polynomial.
    pub fn max_coeff_abs(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}", mag)?;
                    }
                    write!(f, "{}", self.var)?;
                    if i > 1 {
                        write!(f, "^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}
