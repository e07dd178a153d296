//! Reliability polynomials of linear consecutive-k-out-of-n:F systems.
//!
//! A system of `n` components in a line, each working independently with
//! probability `p`, fails exactly when some run of `k` consecutive
//! components all fail. `build_rel_recurrence` constructs the survival
//! probability as an exact polynomial in `p`; two independent oracles
//! (`build_rel_counting_dp`, `build_rel_bruteforce`) and a k=2 binomial
//! formula produce the same polynomial by unrelated routes.
//!
//! Substituting `p = 1/(1+z)` and clearing denominators yields an integer
//! polynomial family in `z`,
//!
//! `Rel(k, n; p) = p^n * P_n(z)` with `z = (1-p)/p`,
//!
//! built by `build_p_of_z`; its roots carry the root-location structure,
//! so most of the crate works on that side of the transform.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::{ComplexApprox, IntPolynomial, Real, Var};

/// Parameters of a linear consecutive-k-out-of-n:F system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemSpec {
    pub k: u32,
    pub n: u32,
}

impl SystemSpec {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::KTooSmall { k });
        }
        Ok(SystemSpec { k, n })
    }
}

/// Both forms of one system's reliability polynomial, tied together by
/// the `z = (1-p)/p` transform.
#[derive(Clone, Debug)]
pub struct ReliabilityPair {
    pub spec: SystemSpec,
    pub rel_p: IntPolynomial,
    pub p_of_z: IntPolynomial,
}

impl ReliabilityPair {
    pub fn build(spec: SystemSpec) -> Self {
        ReliabilityPair {
            spec,
            rel_p: build_rel_recurrence(spec),
            p_of_z: build_p_of_z(spec),
        }
    }

    /// Exact check that `rel_p(p) = p^n * p_of_z((1-p)/p)`.
    pub fn transform_consistent(&self) -> bool {
        transform_z_to_p(&self.p_of_z, self.spec.n)
            .map(|t| t == self.rel_p)
            .unwrap_or(false)
    }
}

/// Largest `n` accepted by [`build_rel_bruteforce`] (~4M states).
pub const BRUTE_FORCE_CAP: u32 = 22;

fn one_plus_var_pow(m: u32, var: Var) -> IntPolynomial {
    let coeffs = (0..=m)
        .map(|j| binomial(BigInt::from(m), BigInt::from(j)))
        .collect();
    IntPolynomial::new(coeffs, var)
}

/// `P_n(z)`: the reliability polynomial pushed through `p = 1/(1+z)`.
///
/// Uses the order-k recurrence
/// `P_n = P_{n-1} + z P_{n-2} + ... + z^{k-1} P_{n-k}`
/// with seeds `P_m = (1+z)^m` for `m < k`. Exact integer arithmetic
/// throughout; a sliding window keeps only the last k members.
pub fn build_p_of_z(spec: SystemSpec) -> IntPolynomial {
    let k = spec.k as usize;
    let mut window: Vec<IntPolynomial> = (0..k.min(spec.n as usize + 1))
        .map(|m| one_plus_var_pow(m as u32, Var::Z))
        .collect();
    if (spec.n as usize) < k {
        return window.pop().expect("nonempty seed window");
    }
    for _ in k..=spec.n as usize {
        let mut next = IntPolynomial::zero(Var::Z);
        for (j, prev) in window.iter().rev().enumerate() {
            next = next.add(&prev.shift_up(j)).expect("uniform variable tag");
        }
        window.remove(0);
        window.push(next);
    }
    window.pop().expect("nonempty window")
}

/// Same family through the rearranged recurrence, valid once `n >= k+1`:
/// `P_n = (1+z) P_{n-2} + (z+z^2) P_{n-3} + ... + (z^{k-2}+z^{k-1}) P_{n-k}
///        + z^{k-1} P_{n-k-1}`.
/// Seeds `P_0 ..= P_k` come from the primary recurrence, so agreement for
/// `n > k` is a genuine cross-check of the rearrangement, not a tautology.
pub fn build_p_of_z_alt(spec: SystemSpec) -> IntPolynomial {
    let k = spec.k as usize;
    if spec.n as usize <= k {
        return build_p_of_z(spec);
    }
    // window holds P_{m-k-1} ..= P_{m-1} ahead of computing P_m
    let mut window: Vec<IntPolynomial> = (0..=k as u32)
        .map(|m| build_p_of_z(SystemSpec { k: spec.k, n: m }))
        .collect();
    for _ in (k + 1)..=spec.n as usize {
        // window[k + 1 - i] is P_{m-i}
        let mut next = IntPolynomial::zero(Var::Z);
        for i in 2..=k {
            let term = window[k + 1 - i].shift_up(i - 2);
            next = next
                .add(&term)
                .and_then(|acc| acc.add(&term.shift_up(1)))
                .expect("uniform variable tag");
        }
        next = next
            .add(&window[0].shift_up(k - 1))
            .expect("uniform variable tag");
        window.remove(0);
        window.push(next);
    }
    window.pop().expect("nonempty window")
}

/// The survival probability as an exact polynomial in `p`, via the
/// order-k recurrence
/// `R_n = p R_{n-1} + pq R_{n-2} + ... + p q^{k-1} R_{n-k}` (`q = 1 - p`),
/// seeds `R_m = 1` for `m < k`.
pub fn build_rel_recurrence(spec: SystemSpec) -> IntPolynomial {
    let k = spec.k as usize;
    if (spec.n as usize) < k {
        return IntPolynomial::one(Var::P);
    }
    let q = IntPolynomial::from_i64(&[1, -1], Var::P);
    // p * q^j multipliers for j = 0 .. k-1
    let mut mults = Vec::with_capacity(k);
    let mut m = IntPolynomial::from_i64(&[0, 1], Var::P);
    for _ in 0..k {
        mults.push(m.clone());
        m = m.mul(&q).expect("uniform variable tag");
    }
    let mut window: Vec<IntPolynomial> = (0..k).map(|_| IntPolynomial::one(Var::P)).collect();
    for _ in k..=spec.n as usize {
        let mut next = IntPolynomial::zero(Var::P);
        for (j, mult) in mults.iter().enumerate() {
            let prev = &window[k - 1 - j];
            next = next
                .add(&prev.mul(mult).expect("uniform variable tag"))
                .expect("uniform variable tag");
        }
        window.remove(0);
        window.push(next);
    }
    window.pop().expect("nonempty window")
}

/// k = 2 only: the explicit binomial expansion
/// `Rel(2, n; p) = sum_j C(n-j+1, j) p^(n-j) (1-p)^j`.
pub fn build_rel_binomial(n: u32) -> IntPolynomial {
    let n = n as usize;
    let q = IntPolynomial::from_i64(&[1, -1], Var::P);
    let mut qj = IntPolynomial::one(Var::P);
    let mut acc = IntPolynomial::zero(Var::P);
    for j in 0..=n.div_ceil(2) {
        let c = binomial(BigInt::from(n + 1 - j), BigInt::from(j));
        let term = qj.scale(&c).shift_up(n - j);
        acc = acc.add(&term).expect("uniform variable tag");
        qj = qj.mul(&q).expect("uniform variable tag");
    }
    acc
}

/// Independent oracle: dynamic programming over positions and the length
/// of the trailing failure run, counting the working states with exactly
/// m failed components; assembles `sum_m N_m p^(n-m) (1-p)^m`.
pub fn build_rel_counting_dp(spec: SystemSpec) -> IntPolynomial {
    let n = spec.n as usize;
    let k = spec.k as usize;
    // dp[r][m]: states with trailing failure run r and m failures total
    let mut dp = vec![vec![BigInt::zero(); n + 1]; k];
    dp[0][0] = BigInt::one();
    for _ in 0..n {
        let mut next = vec![vec![BigInt::zero(); n + 1]; k];
        for r in 0..k {
            for m in 0..=n {
                if dp[r][m].is_zero() {
                    continue;
                }
                // component works: run resets
                next[0][m] += &dp[r][m];
                // component fails: run extends, k kills the state
                if r + 1 < k && m < n {
                    next[r + 1][m + 1] += &dp[r][m];
                }
            }
        }
        dp = next;
    }
    let q = IntPolynomial::from_i64(&[1, -1], Var::P);
    let mut qm = IntPolynomial::one(Var::P);
    let mut acc = IntPolynomial::zero(Var::P);
    #[allow(clippy::needless_range_loop)]
    for m in 0..=n {
        let total: BigInt = (0..k).map(|r| dp[r][m].clone()).sum();
        if !total.is_zero() {
            acc = acc
                .add(&qm.scale(&total).shift_up(n - m))
                .expect("uniform variable tag");
        }
        qm = qm.mul(&q).expect("uniform variable tag");
    }
    acc
}

/// Ground-truth oracle: enumerates all `2^n` component states, keeps
/// those without a failed run of length `k`, and assembles the survival
/// polynomial from the state counts grouped by failure count.
/// Exponential, hence the hard cap.
pub fn build_rel_bruteforce(spec: SystemSpec) -> Result<IntPolynomial> {
    if spec.n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap {
            n: spec.n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let n = spec.n as usize;
    let k = spec.k;
    let mut counts = vec![0u64; n + 1]; // good states by failure count
    for mask in 0u64..(1u64 << n) {
        let mut runs = mask;
        for _ in 1..k {
            runs &= runs >> 1;
        }
        if runs == 0 {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    let q = IntPolynomial::from_i64(&[1, -1], Var::P);
    let mut qj = IntPolynomial::one(Var::P);
    let mut acc = IntPolynomial::zero(Var::P);
    for (j, &c) in counts.iter().enumerate() {
        if c != 0 {
            let term = qj.scale(&BigInt::from(c)).shift_up(n - j);
            acc = acc.add(&term)?;
        }
        qj = qj.mul(&q)?;
    }
    Ok(acc)
}

/// Carries `f(z)` of degree at most `n` across the substitution
/// `z = (1-p)/p`, producing `p^n * f((1-p)/p)` exactly.
pub fn transform_z_to_p(f: &IntPolynomial, n: u32) -> Result<IntPolynomial> {
    if f.var() != Var::Z {
        return Err(Error::VarMismatch {
            left: f.var(),
            right: Var::Z,
        });
    }
    if let Some(d) = f.degree() {
        if d > n as usize {
            return Err(Error::DegreeExceedsN { degree: d, n });
        }
    }
    let q = IntPolynomial::from_i64(&[1, -1], Var::P); // 1 - p
    let mut qi = IntPolynomial::one(Var::P);
    let mut acc = IntPolynomial::zero(Var::P);
    for (i, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            // c * (1-p)^i * p^(n-i)
            let term = qi.scale(c).shift_up(n as usize - i);
            acc = acc.add(&term)?;
        }
        qi = qi.mul(&q)?;
    }
    Ok(acc)
}

/// Inverse transform: carries `g(p)` of degree at most `n` across
/// `p = 1/(1+z)`, producing `(1+z)^n * g(1/(1+z))` exactly.
pub fn transform_p_to_z(g: &IntPolynomial, n: u32) -> Result<IntPolynomial> {
    if g.var() != Var::P {
        return Err(Error::VarMismatch {
            left: g.var(),
            right: Var::P,
        });
    }
    if let Some(d) = g.degree() {
        if d > n as usize {
            return Err(Error::DegreeExceedsN { degree: d, n });
        }
    }
    let w = IntPolynomial::from_i64(&[1, 1], Var::Z); // 1 + z
    let mut powers = Vec::with_capacity(n as usize + 1);
    let mut acc_pow = IntPolynomial::one(Var::Z);
    for _ in 0..=n {
        powers.push(acc_pow.clone());
        acc_pow = acc_pow.mul(&w)?;
    }
    let mut acc = IntPolynomial::zero(Var::Z);
    for (j, a) in g.coeffs().iter().enumerate() {
        if !a.is_zero() {
            acc = acc.add(&powers[n as usize - j].scale(a))?;
        }
    }
    Ok(acc)
}

/// `P_n(-1)`, computed exactly by running the value recurrence at
/// `z = -1` (never by numeric root proximity). The sign of this integer
/// decides whether `z = -1` is a root of `P_n`, which is what the
/// deflation and scan machinery key off. Satisfies
/// `P_n(-1) = (-1)^(k-1) P_(n-k-1)(-1)` and vanishes exactly when
/// `n mod (k+1)` lies strictly between 0 and k.
pub fn p_at_minus_one(spec: SystemSpec) -> BigInt {
    let k = spec.k as usize;
    // seeds (1 + (-1))^m = 0^m
    let mut window: Vec<BigInt> = (0..k)
        .map(|m| if m == 0 { BigInt::one() } else { BigInt::zero() })
        .collect();
    if (spec.n as usize) < k {
        return window[spec.n as usize].clone();
    }
    for _ in k..=spec.n as usize {
        let mut next = BigInt::zero();
        let mut sign = BigInt::one();
        for prev in window.iter().rev() {
            next += &sign * prev;
            sign = -sign;
        }
        window.remove(0);
        window.push(next);
    }
    window.pop().expect("nonempty window")
}

/// k = 2 only: evaluates `P_n(z)` through the Binet form
/// `(lambda_1^(n+2) - lambda_2^(n+2)) / (lambda_1 - lambda_2)` with
/// `lambda_{1,2} = (1 ± sqrt(4z+1))/2`. At the double point `z = -1/4`
/// (detected exactly) the limit value `(n+2)/2^(n+1)` is returned.
pub fn p_binet_eval(n: u32, z: &ComplexApprox) -> ComplexApprox {
    let prec = z.prec();
    let quarter = Real::pow2(-2, prec).neg();
    if z.im.is_zero() && z.re.cmp(&quarter) == std::cmp::Ordering::Equal {
        let v = Real::from_i64(n as i64 + 2, prec).mul(&Real::pow2(-(n as i64) - 1, prec));
        return ComplexApprox::from_real(v);
    }
    let one = ComplexApprox::one(prec);
    let four_z_plus_one = z
        .mul_real(&Real::from_i64(4, prec))
        .add(&one);
    let w = four_z_plus_one.sqrt();
    let half = Real::pow2(-1, prec);
    let l1 = one.add(&w).mul_real(&half);
    let l2 = one.sub(&w).mul_real(&half);
    l1.powu(n as u64 + 2).sub(&l2.powu(n as u64 + 2)).div(&w)
}

/// k = 2 only: evaluates `Rel(2, n; p) = p^n P_n((1-p)/p)` through the
/// Binet form. The square-root branch does not matter (the expression is
/// symmetric in the two lambdas); the principal branch is used.
pub fn rel_closedform_eval(n: u32, p: &ComplexApprox) -> Result<ComplexApprox> {
    if p.is_zero() {
        return Err(Error::ZeroEvaluationPoint);
    }
    let z = ComplexApprox::one(p.prec()).sub(p).div(p);
    Ok(p.powu(n as u64).mul(&p_binet_eval(n, &z)))
}
