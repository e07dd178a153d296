//! Fibonacci and Jacobsthal polynomial families. The Jacobsthal family
//! is the k = 2 reliability family shifted by two (`J_(n+2) = P_n`); the
//! Fibonacci family shares its coefficients and carries the classical
//! root formula `2i cos(j pi / n)`, which transports back to the cosine
//! form of the `P_n` roots via `z = 1/w^2`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::consec::{build_p_of_z, SystemSpec};
use crate::polycore::{cos_ladder, normalize_precision, ComplexApprox, IntPolynomial, Real, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Fibonacci,
    Jacobsthal,
}

/// A prefix of one family, `members[i]` holding the (i+1)-th polynomial.
#[derive(Clone, Debug)]
pub struct FamilyTable {
    pub family: Family,
    pub members: Vec<IntPolynomial>,
}

impl FamilyTable {
    pub fn new(family: Family, count: u32) -> Self {
        let gen = match family {
            Family::Fibonacci => fibonacci,
            Family::Jacobsthal => jacobsthal,
        };
        FamilyTable {
            family,
            members: (1..=count).map(gen).collect(),
        }
    }

    /// 1-indexed access, matching the families' classical numbering.
    pub fn member(&self, n: u32) -> &IntPolynomial {
        &self.members[n as usize - 1]
    }
}

/// F_1 = 1, F_2 = z, F_(n+2) = z F_(n+1) + F_n. Degree n-1.
pub fn fibonacci(n: u32) -> IntPolynomial {
    assert!(n >= 1);
    let mut prev = IntPolynomial::one(Var::Z);
    if n == 1 {
        return prev;
    }
    let mut cur = IntPolynomial::from_i64(&[0, 1], Var::Z);
    for _ in 2..n {
        let next = cur
            .shift_up(1)
            .add(&prev)
            .expect("same variable");
        prev = cur;
        cur = next;
    }
    cur
}

/// J_1 = 1, J_n = P_(n-2) for n >= 2 (so J_2 = P_0 = 1).
pub fn jacobsthal(n: u32) -> IntPolynomial {
    assert!(n >= 1);
    if n == 1 {
        return IntPolynomial::one(Var::Z);
    }
    build_p_of_z(SystemSpec::new(2, n - 2).expect("k=2 valid"))
}

/// Which exponent makes `F_n(z) = z^e J_n(1/z^2)` an exact identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub n: u32,
    pub holds_with_n_minus_1: bool,
    pub holds_with_n: bool,
    /// The exponent that worked, if either did.
    pub exponent: Option<u32>,
}

/// `z^e J_n(1/z^2)` expanded exactly: coefficient `a_i` of J_n lands on
/// `z^(e-2i)`. Only well-formed when `e >= 2 deg(J_n)`; returns None
/// otherwise (negative powers would appear).
fn laurent_substitution(j: &IntPolynomial, e: u32) -> Option<IntPolynomial> {
    let deg = j.degree().unwrap_or(0);
    if (e as usize) < 2 * deg {
        return None;
    }
    let mut coeffs = vec![BigInt::zero(); e as usize + 1];
    for (i, a) in j.coeffs().iter().enumerate() {
        coeffs[e as usize - 2 * i] = a.clone();
    }
    Some(IntPolynomial::new(coeffs, Var::Z))
}

/// Tests the cross-family identity with exponents n-1 and n and reports
/// which holds. Desk expansion shows e = n-1 is the exact one for every
/// n; the printed exponent n fails degree accounting (deg F_n = n-1).
pub fn verify_relation(n: u32) -> RelationReport {
    let f = fibonacci(n);
    let j = jacobsthal(n);
    let check = |e: u32| laurent_substitution(&j, e).is_some_and(|g| g == f);
    let holds_with_n_minus_1 = n >= 1 && check(n - 1);
    let holds_with_n = check(n);
    let exponent = if holds_with_n_minus_1 {
        Some(n - 1)
    } else if holds_with_n {
        Some(n)
    } else {
        None
    };
    RelationReport {
        n,
        holds_with_n_minus_1,
        holds_with_n,
        exponent,
    }
}

/// The classical Fibonacci roots `w_(n,j) = 2i cos(j pi / n)`,
/// j = 1..n-1: purely imaginary, in index order.
pub fn fibonacci_roots(n: u32, precision_bits: u32) -> Vec<ComplexApprox> {
    assert!(n >= 2);
    let prec = normalize_precision(precision_bits);
    cos_ladder(n as u64, n as u64 - 1, prec)
        .into_iter()
        .map(|c| ComplexApprox::new(Real::zero(prec), c.add(&c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform2::z_roots_closed;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs, Var::Z)
    }

    #[test]
    fn table_rows_reproduce() {
        let fib: Vec<IntPolynomial> = (1..=7).map(fibonacci).collect();
        assert_eq!(fib[0], poly(&[1]));
        assert_eq!(fib[1], poly(&[0, 1]));
        assert_eq!(fib[2], poly(&[1, 0, 1]));
        assert_eq!(fib[3], poly(&[0, 2, 0, 1]));
        assert_eq!(fib[4], poly(&[1, 0, 3, 0, 1]));
        assert_eq!(fib[5], poly(&[0, 3, 0, 4, 0, 1]));
        assert_eq!(fib[6], poly(&[1, 0, 6, 0, 5, 0, 1]));

        let jac: Vec<IntPolynomial> = (1..=7).map(jacobsthal).collect();
        assert_eq!(jac[0], poly(&[1]));
        assert_eq!(jac[1], poly(&[1]));
        assert_eq!(jac[2], poly(&[1, 1]));
        assert_eq!(jac[3], poly(&[1, 2]));
        assert_eq!(jac[4], poly(&[1, 3, 1]));
        assert_eq!(jac[5], poly(&[1, 4, 3]));
        assert_eq!(jac[6], poly(&[1, 5, 6, 1]));
    }

    #[test]
    fn recurrences_close_exactly() {
        for n in 1..=60u32 {
            let lhs = fibonacci(n + 2);
            let rhs = fibonacci(n + 1).shift_up(1).add(&fibonacci(n)).unwrap();
            assert_eq!(lhs, rhs, "Fibonacci n={}", n);

            let jl = jacobsthal(n + 2);
            let jr = jacobsthal(n + 1)
                .add(&jacobsthal(n).shift_up(1))
                .unwrap();
            assert_eq!(jl, jr, "Jacobsthal n={}", n);
        }
    }

    #[test]
    fn family_table_indexing() {
        let t = FamilyTable::new(Family::Fibonacci, 7);
        assert_eq!(t.member(7), &poly(&[1, 0, 6, 0, 5, 0, 1]));
        let j = FamilyTable::new(Family::Jacobsthal, 7);
        assert_eq!(j.member(6), &poly(&[1, 4, 3]));
    }

    #[test]
    fn degrees_and_coefficient_multisets() {
        for n in 2..=40u32 {
            let f = fibonacci(n);
            assert_eq!(f.degree(), Some(n as usize - 1), "n={}", n);
            let mut fc: Vec<BigInt> = f
                .coeffs()
                .iter()
                .filter(|c| !c.is_zero())
                .cloned()
                .collect();
            let mut jc: Vec<BigInt> = jacobsthal(n)
                .coeffs()
                .iter()
                .filter(|c| !c.is_zero())
                .cloned()
                .collect();
            fc.sort();
            jc.sort();
            assert_eq!(fc, jc, "n={}", n);
        }
    }

    #[test]
    fn relation_holds_with_shifted_exponent() {
        for n in 1..=40u32 {
            let r = verify_relation(n);
            assert!(r.holds_with_n_minus_1, "n={}", n);
            assert_eq!(r.exponent, Some(n - 1), "n={}", n);
            // the printed exponent n cannot hold: degree n vs n-1
            assert!(!r.holds_with_n, "n={}", n);
        }
    }

    #[test]
    fn roots_satisfy_polynomial() {
        for n in [2u32, 3, 4, 17, 40, 64] {
            let f = fibonacci(n);
            let roots = fibonacci_roots(n, 256);
            assert_eq!(roots.len(), n as usize - 1);
            for (j, w) in roots.iter().enumerate() {
                assert!(w.re.is_zero());
                let residual = f.eval_complex(w).abs().to_f64();
                assert!(residual <= 1e-10, "n={} j={} res={:e}", n, j + 1, residual);
            }
        }
        // desk values for n=4: {i sqrt(2), 0, -i sqrt(2)}
        let r4 = fibonacci_roots(4, 256);
        let sqrt2 = 2f64.sqrt();
        assert!((r4[0].im.to_f64() - sqrt2).abs() < 1e-15);
        assert!(r4[1].is_zero());
        assert!((r4[2].im.to_f64() + sqrt2).abs() < 1e-15);
        // n=3: {i, -i}
        let r3 = fibonacci_roots(3, 256);
        assert!((r3[0].im.to_f64() - 1.0).abs() < 1e-70);
        assert!((r3[1].im.to_f64() + 1.0).abs() < 1e-70);
    }

    #[test]
    fn roots_transport_to_the_cosine_form() {
        // nonzero roots w of F_(n+2) give z = 1/w^2 among the roots of
        // P_n, recovering z_(n,j) = -1/(4 cos^2(j pi/(n+2)))
        for n in 1..=40u32 {
            let closed = z_roots_closed(n, 256);
            let ws = fibonacci_roots(n + 2, 256);
            for (j, root) in closed.iter().enumerate() {
                let w = &ws[j]; // same index: j = 1..floor((n+1)/2)
                let z = w.mul(w).recip();
                let d = z.dist(&root.z_value).to_f64();
                assert!(d < 1e-70, "n={} j={} d={:e}", n, j + 1, d);
            }
        }
    }
}
