//! Arbitrary-precision real scalar used throughout the crate.
//!
//! Thin wrapper over [`astro_float::BigFloat`] that pins the rounding mode to
//! round-to-nearest-even, tracks the working precision alongside the value,
//! and adds the exact conversions (big integers in, decimal strings out) that
//! the rest of the crate needs. Binary operations round to the wider of the
//! two operand precisions.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Exponent, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Rounds a requested precision up to what the backend actually uses
/// (a whole number of machine words, at least one).
pub fn normalize_precision(bits: u32) -> usize {
    let bits = bits.max(1) as usize;
    bits.div_ceil(WORD_BIT_SIZE) * WORD_BIT_SIZE
}

/// A real number carrying its working precision in bits.
#[derive(Clone, Debug)]
pub struct Real {
    f: BigFloat,
    prec: usize,
}

impl Real {
    pub fn zero(prec: usize) -> Self {
        Real {
            f: BigFloat::from_i8(0, prec),
            prec,
        }
    }

    pub fn one(prec: usize) -> Self {
        Real {
            f: BigFloat::from_i8(1, prec),
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        Real {
            f: BigFloat::from_i64(v, prec),
            prec,
        }
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        Real {
            f: BigFloat::from_f64(v, prec),
            prec,
        }
    }

    /// Exact conversion while the integer fits in `prec` bits; otherwise
    /// rounds the mantissa half-to-even.
    pub fn from_bigint(v: &BigInt, prec: usize) -> Self {
        let sign = match v.sign() {
            IntSign::NoSign => return Real::zero(prec),
            IntSign::Plus => Sign::Pos,
            IntSign::Minus => Sign::Neg,
        };
        let mag = v.magnitude().clone();
        let nbits = mag.bits();
        let (mant, exp) = if nbits as usize <= prec {
            (mag << (prec as u64 - nbits), nbits as i64)
        } else {
            let shift = nbits as usize - prec;
            let mut head: BigUint = &mag >> shift;
            let rem = mag & ((BigUint::one() << shift) - BigUint::one());
            let half = BigUint::one() << (shift - 1);
            let round_up = match rem.cmp(&half) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => head.is_odd(),
            };
            if round_up {
                head += BigUint::one();
            }
            if head.bits() as usize > prec {
                // carry rippled past the top bit: 2^prec, renormalize
                head >>= 1;
                (head, nbits as i64 + 1)
            } else {
                (head, nbits as i64)
            }
        };
        let mut words: Vec<u64> = mant.iter_u64_digits().collect();
        words.resize(prec / WORD_BIT_SIZE, 0);
        Real {
            f: BigFloat::from_words(&words, sign, exp as Exponent),
            prec,
        }
    }

    pub fn from_ratio(v: &BigRational, prec: usize) -> Self {
        let wp = prec + WORD_BIT_SIZE;
        let num = Real::from_bigint(v.numer(), wp);
        let den = Real::from_bigint(v.denom(), wp);
        Real {
            f: num.f.div(&den.f, prec, RM),
            prec,
        }
    }

    /// Exactly 2^k.
    pub fn pow2(k: i64, prec: usize) -> Self {
        let words_len = prec / WORD_BIT_SIZE;
        let mut words = vec![0u64; words_len];
        words[words_len - 1] = 1u64 << (WORD_BIT_SIZE - 1);
        Real {
            f: BigFloat::from_words(&words, Sign::Pos, (k + 1) as Exponent),
            prec,
        }
    }

    pub fn pi(prec: usize) -> Self {
        let f = CONSTS.with(|cc| cc.borrow_mut().pi(prec, RM));
        Real { f, prec }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn raw(&self) -> &BigFloat {
        &self.f
    }

    /// Re-rounds to `prec` bits (exact when widening).
    pub fn with_prec(&self, prec: usize) -> Self {
        let zero = BigFloat::from_i8(0, WORD_BIT_SIZE);
        Real {
            f: self.f.add(&zero, prec, RM),
            prec,
        }
    }

    fn bin(&self, rhs: &Real, op: impl Fn(&BigFloat, &BigFloat, usize, RoundingMode) -> BigFloat) -> Real {
        let prec = self.prec.max(rhs.prec);
        Real {
            f: op(&self.f, &rhs.f, prec, RM),
            prec,
        }
    }

    pub fn add(&self, rhs: &Real) -> Real {
        self.bin(rhs, BigFloat::add)
    }

    pub fn sub(&self, rhs: &Real) -> Real {
        self.bin(rhs, BigFloat::sub)
    }

    pub fn mul(&self, rhs: &Real) -> Real {
        self.bin(rhs, BigFloat::mul)
    }

    pub fn div(&self, rhs: &Real) -> Real {
        self.bin(rhs, BigFloat::div)
    }

    pub fn neg(&self) -> Real {
        Real {
            f: self.f.neg(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Real {
        Real {
            f: self.f.abs(),
            prec: self.prec,
        }
    }

    pub fn sqrt(&self) -> Real {
        Real {
            f: self.f.sqrt(self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn recip(&self) -> Real {
        Real::one(self.prec).div(self)
    }

    pub fn square(&self) -> Real {
        self.mul(self)
    }

    pub fn powi(&self, n: usize) -> Real {
        Real {
            f: self.f.powi(n, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn cos(&self) -> Real {
        let f = CONSTS.with(|cc| self.f.cos(self.prec, RM, &mut cc.borrow_mut()));
        Real { f, prec: self.prec }
    }

    pub fn sin(&self) -> Real {
        let f = CONSTS.with(|cc| self.f.sin(self.prec, RM, &mut cc.borrow_mut()));
        Real { f, prec: self.prec }
    }

    pub fn atan(&self) -> Real {
        let f = CONSTS.with(|cc| self.f.atan(self.prec, RM, &mut cc.borrow_mut()));
        Real { f, prec: self.prec }
    }

    /// Signed angle of the point (x, y) in (-pi, pi].
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let prec = x.prec.max(y.prec);
        let pi = Real::pi(prec);
        if x.is_zero() && y.is_zero() {
            return Real::zero(prec);
        }
        if x.is_zero() {
            let half = pi.div(&Real::from_i64(2, prec));
            return if y.is_negative() { half.neg() } else { half };
        }
        let t = y.div(x).atan().with_prec(prec);
        if !x.is_negative() {
            t
        } else if y.is_negative() {
            t.sub(&pi)
        } else {
            t.add(&pi)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.f.is_negative() && !self.f.is_zero()
    }

    pub fn is_nan(&self) -> bool {
        self.f.is_nan()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn cmp(&self, rhs: &Real) -> Ordering {
        let s = self.f.cmp(&rhs.f).expect("NaN in comparison");
        match s {
            _ if s < 0 => Ordering::Less,
            _ if s > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn max(&self, rhs: &Real) -> Real {
        if self.cmp(rhs) == Ordering::Less {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    pub fn min(&self, rhs: &Real) -> Real {
        if self.cmp(rhs) == Ordering::Greater {
            rhs.clone()
        } else {
            self.clone()
        }
    }

    /// Nearest f64 (uses the top mantissa word only; ample for display
    /// and diagnostics).
    pub fn to_f64(&self) -> f64 {
        if self.f.is_nan() {
            return f64::NAN;
        }
        if self.f.is_inf() {
            return if self.f.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        if self.f.is_zero() {
            return 0.0;
        }
        let (words, _, sign, exp, _) = self.f.as_raw_parts().expect("finite value");
        let top = words[words.len() - 1];
        let mag = top as f64 * 2f64.powi(exp - WORD_BIT_SIZE as i32);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// log2 of the magnitude as an f64 estimate, safe far outside the
    /// exponent range of f64 itself. Zero maps to -inf.
    pub fn log2_magnitude(&self) -> f64 {
        if self.f.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (words, _, _, exp, _) = self.f.as_raw_parts().expect("finite value");
        let top = words[words.len() - 1];
        (top as f64).log2() + (exp - WORD_BIT_SIZE as i32) as f64
    }

    /// Decimal rendering with exactly `sig` significant digits, rounded
    /// half-to-even by exact integer arithmetic, trailing zeros trimmed.
    /// Deterministic: equal values at equal precision format identically.
    pub fn to_decimal_sig(&self, sig: u32) -> String {
        assert!(sig >= 1);
        if self.f.is_nan() {
            return "nan".into();
        }
        if self.f.is_inf() {
            return if self.f.is_negative() { "-inf" } else { "inf" }.into();
        }
        if self.f.is_zero() {
            return "0.0".into();
        }
        let (words, nbits, sign, exp, _) = self.f.as_raw_parts().expect("finite value");
        let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
        let mant = BigUint::from_bytes_le(&bytes);
        // |v| = mant * 2^t
        let t = exp as i64 - nbits as i64;

        // decimal exponent: largest d with 10^d <= |v|
        let bitlen = mant.bits() as i64 + t;
        let mut dexp = ((bitlen as f64 - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
        while cmp_pow10(dexp + 1, &mant, t) != Ordering::Greater {
            dexp += 1;
        }
        while cmp_pow10(dexp, &mant, t) == Ordering::Greater {
            dexp -= 1;
        }

        // round |v| / 10^(dexp - sig + 1) half-to-even
        let q = dexp - sig as i64 + 1;
        let mut num = mant;
        let mut den = BigUint::one();
        if q > 0 {
            den *= pow10(q as u64);
        } else {
            num *= pow10((-q) as u64);
        }
        if t > 0 {
            num <<= t as u64;
        } else {
            den <<= (-t) as u64;
        }
        let (mut digits, rem) = num.div_rem(&den);
        let twice: BigUint = rem << 1;
        match twice.cmp(&den) {
            Ordering::Greater => digits += BigUint::one(),
            Ordering::Equal => {
                if digits.is_odd() {
                    digits += BigUint::one();
                }
            }
            Ordering::Less => {}
        }
        if digits >= pow10(sig as u64) {
            digits /= BigUint::from(10u32);
            dexp += 1;
        }

        let ds = digits.to_string();
        debug_assert_eq!(ds.len(), sig as usize);
        let trimmed = ds.trim_end_matches('0');
        let trimmed = if trimmed.is_empty() { "0" } else { trimmed };

        let body = if (-9..=14).contains(&dexp) {
            if dexp >= 0 {
                let int_len = dexp as usize + 1;
                if trimmed.len() <= int_len {
                    format!("{:0<width$}.0", trimmed, width = int_len)
                } else {
                    format!("{}.{}", &trimmed[..int_len], &trimmed[int_len..])
                }
            } else {
                format!("0.{}{}", "0".repeat((-dexp - 1) as usize), trimmed)
            }
        } else if trimmed.len() == 1 {
            format!("{}.0e{}", trimmed, dexp)
        } else {
            format!("{}.{}e{}", &trimmed[..1], &trimmed[1..], dexp)
        };
        if sign == Sign::Neg {
            format!("-{}", body)
        } else {
            body
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_sig(12))
    }
}

fn pow10(d: u64) -> BigUint {
    BigUint::from(10u32).pow(d as u32)
}

/// Compares 10^d against mant * 2^t exactly.
fn cmp_pow10(d: i64, mant: &BigUint, t: i64) -> Ordering {
    let mut lhs = if d >= 0 { pow10(d as u64) } else { BigUint::one() };
    let mut rhs = if d < 0 {
        mant * pow10((-d) as u64)
    } else {
        mant.clone()
    };
    if t >= 0 {
        rhs <<= t as u64;
    } else {
        lhs <<= (-t) as u64;
    }
    lhs.cmp(&rhs)
}

/// cos(pi * j / denom) for j = 1..=j_max via the three-term recurrence
/// cos((j+1)a) = 2 cos(a) cos(ja) - cos((j-1)a), computed with 64 guard
/// bits and rounded back to `prec`. Element `[j - 1]` holds cos(pi*j/denom).
pub fn cos_ladder(denom: u64, j_max: u64, prec: usize) -> Vec<Real> {
    let wp = prec + WORD_BIT_SIZE;
    let alpha = Real::pi(wp).div(&Real::from_i64(denom as i64, wp));
    let c1 = alpha.cos();
    let two_c1 = c1.add(&c1);
    let mut out = Vec::with_capacity(j_max as usize);
    let mut prev = Real::one(wp);
    let mut cur = c1.clone();
    for _ in 0..j_max {
        out.push(cur.with_prec(prec));
        let next = two_c1.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    out
}
