//! Exact rational scalars.
//!
//! Re-exports [`num_rational::BigRational`], which already maintains the
//! canonical form this crate relies on (reduced terms, positive
//! denominator), plus a couple of terse constructors.

use num_bigint::BigInt;
pub use num_rational::BigRational;

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn canonical_form() {
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert!(r.denom().is_positive());
        assert_eq!(ratio(0, 7).denom(), &BigInt::from(1));
    }

    #[test]
    fn arithmetic_stays_reduced() {
        let a = ratio(1, 6) + ratio(1, 3);
        assert_eq!(a, ratio(1, 2));
        let b = ratio(2, 3) * ratio(3, 2);
        assert_eq!(b, integer(1));
    }
}
