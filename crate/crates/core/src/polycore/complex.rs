//! Rectangular complex arithmetic over [`Real`].

use std::cmp::Ordering;
use std::fmt;

use super::real::Real;

/// Complex number in rectangular form at a fixed working precision.
#[derive(Clone, Debug)]
pub struct ComplexApprox {
    pub re: Real,
    pub im: Real,
}

impl ComplexApprox {
    pub fn new(re: Real, im: Real) -> Self {
        ComplexApprox { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        ComplexApprox {
            re: Real::zero(prec),
            im: Real::zero(prec),
        }
    }

    pub fn one(prec: usize) -> Self {
        ComplexApprox {
            re: Real::one(prec),
            im: Real::zero(prec),
        }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        ComplexApprox {
            re,
            im: Real::zero(prec),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        ComplexApprox {
            re: Real::from_f64(re, prec),
            im: Real::from_f64(im, prec),
        }
    }

    /// e^(i*theta) on the unit circle.
    pub fn unit(theta: &Real) -> Self {
        ComplexApprox {
            re: theta.cos(),
            im: theta.sin(),
        }
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        ComplexApprox {
            re: self.re.with_prec(prec),
            im: self.im.with_prec(prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ComplexApprox {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        ComplexApprox {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        ComplexApprox { re, im }
    }

    pub fn mul_real(&self, rhs: &Real) -> Self {
        ComplexApprox {
            re: self.re.mul(rhs),
            im: self.im.mul(rhs),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.re.square().add(&rhs.im.square());
        let re = self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im)).div(&d);
        let im = self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im)).div(&d);
        ComplexApprox { re, im }
    }

    pub fn neg(&self) -> Self {
        ComplexApprox {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexApprox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn recip(&self) -> Self {
        ComplexApprox::one(self.prec()).div(self)
    }

    pub fn abs(&self) -> Real {
        self.re.square().add(&self.im.square()).sqrt()
    }

    /// Argument in (-pi, pi].
    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    /// Argument normalized to [0, 2*pi).
    pub fn arg_two_pi(&self) -> Real {
        let a = self.arg();
        if a.is_negative() {
            let two_pi = Real::pi(self.prec()).mul(&Real::from_i64(2, self.prec()));
            a.add(&two_pi)
        } else {
            a
        }
    }

    /// Principal square root (nonnegative real part; the branch cut maps
    /// onto the positive imaginary axis).
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return ComplexApprox::zero(prec);
        }
        let r = self.abs();
        let half = Real::pow2(-1, prec);
        let u = r.add(&self.re.abs()).mul(&half).sqrt();
        if !self.re.is_negative() {
            let im = self.im.div(&u).mul(&half);
            ComplexApprox { re: u, im }
        } else {
            let re = self.im.abs().div(&u).mul(&half);
            let im = if self.im.is_negative() { u.neg() } else { u };
            ComplexApprox { re, im }
        }
    }

    pub fn powu(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexApprox::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn dist(&self, rhs: &Self) -> Real {
        self.sub(rhs).abs()
    }

    /// Lexicographic order by real part, then imaginary part. Total on
    /// finite values; used for canonical root ordering.
    pub fn cmp_re_im(&self, rhs: &Self) -> Ordering {
        self.re
            .cmp(&rhs.re)
            .then_with(|| self.im.cmp(&rhs.im))
    }
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, self.im.abs())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Real, b: f64) -> bool {
        (a.to_f64() - b).abs() <= 1e-14
    }

    #[test]
    fn field_ops() {
        let p = 128;
        let a = ComplexApprox::from_f64(3.0, 4.0, p);
        let b = ComplexApprox::from_f64(1.0, -2.0, p);
        let prod = a.mul(&b);
        assert!(close(&prod.re, 11.0) && close(&prod.im, -2.0));
        let q = prod.div(&b);
        assert!(close(&q.re, 3.0) && close(&q.im, 4.0));
        assert!(close(&a.abs(), 5.0));
    }

    #[test]
    fn sqrt_branches() {
        let p = 128;
        let neg = ComplexApprox::from_f64(-4.0, 0.0, p);
        let s = neg.sqrt();
        assert!(close(&s.re, 0.0) && close(&s.im, 2.0));

        let w = ComplexApprox::from_f64(-3.0, -4.0, p);
        let s = w.sqrt();
        assert!(close(&s.re, 1.0) && close(&s.im, -2.0));
        let back = s.mul(&s);
        assert!(close(&back.re, -3.0) && close(&back.im, -4.0));
    }

    #[test]
    fn powers_and_arg() {
        let p = 128;
        let i = ComplexApprox::from_f64(0.0, 1.0, p);
        let i4 = i.powu(4);
        assert!(close(&i4.re, 1.0) && close(&i4.im, 0.0));
        let pi = Real::pi(p).to_f64();
        assert!((i.arg().to_f64() - pi / 2.0).abs() < 1e-14);
        let m1 = ComplexApprox::from_f64(-1.0, -1e-30, p);
        let a = m1.arg_two_pi();
        assert!((a.to_f64() - pi).abs() < 1e-14);
        // just above pi: the tiny negative imaginary part wraps around
        assert!(!a.sub(&Real::pi(p)).is_negative() && !a.sub(&Real::pi(p)).is_zero());
    }
}
