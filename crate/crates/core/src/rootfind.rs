//! Numeric root finding for integer polynomials at arbitrary precision.
//!
//! The solver is a simultaneous-correction (Aberth–Ehrlich) iteration with
//! deterministic initial guesses, followed by Newton polishing at twice the
//! working precision. Every returned root carries a scaled backward-error
//! residual `|f(r)| / (1 + sum_j |c_j| |r|^j)` certified against the
//! threshold `2^(-precision/3)`; the denominator keeps the certificate
//! meaningful for the large-magnitude roots these polynomial families
//! produce (for roots of modulus <= 1 it agrees with plain
//! `|f(r)| / (1 + max |c_j|)` up to the degree).
//!
//! Everything here is deterministic: equal inputs at equal precision give
//! bit-identical output.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::consec::{build_p_of_z, p_at_minus_one, SystemSpec};
use crate::error::{Error, Result};
use crate::polycore::{normalize_precision, ComplexApprox, IntPolynomial, Real};

/// Iteration cap for the simultaneous-correction sweep.
pub const ITERATION_CAP: u32 = 400;

/// All roots of one polynomial plus solver diagnostics. Roots are sorted
/// by real part, then imaginary part.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<ComplexApprox>,
    pub residuals: Vec<Real>,
    pub precision_bits: usize,
    pub iterations: u32,
    pub threshold: Real,
    /// Pairs of returned roots closer than 2^(-precision/4): the
    /// diagnostic for (near-)multiple roots. The `P_n` families do hit
    /// this for k >= 3 via their (z+1)^2 factors.
    pub near_duplicates: usize,
}

impl RootSet {
    fn sort(&mut self) {
        let mut idx: Vec<usize> = (0..self.roots.len()).collect();
        idx.sort_by(|&a, &b| self.roots[a].cmp_re_im(&self.roots[b]));
        self.roots = idx.iter().map(|&i| self.roots[i].clone()).collect();
        self.residuals = idx.iter().map(|&i| self.residuals[i].clone()).collect();
    }

    pub(crate) fn count_near_duplicates(&mut self) {
        let gap = Real::pow2(-(self.precision_bits as i64) / 4, self.precision_bits);
        let mut count = 0;
        for i in 0..self.roots.len() {
            for j in (i + 1)..self.roots.len() {
                if self.roots[i].dist(&self.roots[j]).cmp(&gap) == Ordering::Less {
                    count += 1;
                }
            }
        }
        self.near_duplicates = count;
    }
}

/// Roots of `P_n` in the z-domain: the numeric part plus the exactly
/// deflated multiplicity of `z = -1`.
#[derive(Clone, Debug)]
pub struct ZRoots {
    /// Numeric roots of the deflated polynomial together with the exact
    /// `-1` entries (zero residual), all in one sorted set.
    pub set: RootSet,
    pub minus_one_multiplicity: usize,
}

/// Result of pushing z-roots through `p = 1/(1+z)`.
#[derive(Clone, Debug)]
pub struct MappedRoots {
    /// Residuals are carried over from the z-domain set (the map has no
    /// access to the p-polynomial); recompute with [`scaled_residual`]
    /// against `Rel` where a p-domain certificate is needed.
    pub set: RootSet,
    pub dropped_at_minus_one: usize,
}

fn to_complex_coeffs(f: &IntPolynomial, prec: usize) -> Vec<ComplexApprox> {
    f.coeffs()
        .iter()
        .map(|c| ComplexApprox::from_real(Real::from_bigint(c, prec)))
        .collect()
}

/// f(x) and f'(x) in one Horner pass.
pub(crate) fn horner_pair(
    coeffs: &[ComplexApprox],
    x: &ComplexApprox,
) -> (ComplexApprox, ComplexApprox) {
    let prec = x.prec();
    let mut f = ComplexApprox::zero(prec);
    let mut fp = ComplexApprox::zero(prec);
    for c in coeffs.iter().rev() {
        fp = fp.mul(x).add(&f);
        f = f.mul(x).add(c);
    }
    (f, fp)
}

/// `|f(x)| / (1 + sum_j |c_j| |x|^j)` for a complex coefficient vector,
/// computed at the precision of `x` and rounded to `out_prec`.
pub(crate) fn scaled_residual_c(
    coeffs: &[ComplexApprox],
    x: &ComplexApprox,
    out_prec: usize,
) -> Real {
    let wp = x.prec();
    let num = horner_pair(coeffs, x).0.abs();
    let r = x.abs();
    let mut scale = Real::zero(wp);
    for c in coeffs.iter().rev() {
        scale = scale.mul(&r).add(&c.abs());
    }
    num.div(&Real::one(wp).add(&scale)).with_prec(out_prec)
}

/// `|f(x)| / (1 + sum_j |c_j| |x|^j)`, the scaled backward-error residual,
/// evaluated at twice the precision of `x`.
pub fn scaled_residual(f: &IntPolynomial, x: &ComplexApprox) -> Real {
    let prec = x.prec();
    let wp = prec * 2;
    let coeffs = to_complex_coeffs(f, wp);
    scaled_residual_c(&coeffs, &x.with_prec(wp), prec)
}

/// Initial guesses from the Newton polygon of the coefficient moduli:
/// each upper-hull segment of the points `(i, log2 |c_i|)` contributes
/// one shell of guesses at the segment's root-modulus estimate, phases
/// offset by 0.4 plus a per-shell shift. Starting every guess near the
/// right modulus keeps the sweep count low even when the root moduli
/// span many octaves, which a single circle at a coefficient bound does
/// not (it stalls the large reliability instances past any sane cap).
fn initial_guesses(coeffs: &[ComplexApprox], prec: usize) -> Vec<ComplexApprox> {
    let d = coeffs.len() - 1;
    let pts: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.abs().log2_magnitude()))
        .collect();

    // upper convex hull, left to right
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) as f64 * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) as f64;
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }

    let two_pi = Real::pi(prec).add(&Real::pi(prec));
    let mut out = Vec::with_capacity(d);
    // guesses below the lowest nonzero index (zero roots of a raw call)
    // start well inside the innermost shell
    let inner = hull[0].0;
    let first_log_r = if hull.len() >= 2 {
        (hull[0].1 - hull[1].1) / (hull[1].0 - hull[0].0) as f64
    } else {
        0.0
    };
    for t in 0..inner {
        let r = Real::from_f64((first_log_r - 4.0).exp2(), prec);
        let theta = two_pi
            .mul(&Real::from_i64(t as i64, prec))
            .div(&Real::from_i64(inner.max(1) as i64, prec))
            .add(&Real::from_f64(0.2, prec));
        out.push(ComplexApprox::unit(&theta).mul_real(&r));
    }
    for seg in 0..hull.len().saturating_sub(1) {
        let (a, ya) = hull[seg];
        let (b, yb) = hull[seg + 1];
        let m = b - a;
        let log_r = (ya - yb) / m as f64;
        let r = Real::from_f64(log_r.exp2().clamp(f64::MIN_POSITIVE, f64::MAX), prec);
        for t in 0..m {
            let theta = two_pi
                .mul(&Real::from_i64(t as i64, prec))
                .div(&Real::from_i64(m as i64, prec))
                .add(&Real::from_f64(0.4 + seg as f64, prec));
            out.push(ComplexApprox::unit(&theta).mul_real(&r));
        }
    }
    debug_assert_eq!(out.len(), d);
    out
}

/// Simultaneous-correction iteration on a complex coefficient vector
/// (leading coefficient nonzero). Returns the unsorted roots and the
/// number of sweeps used.
pub fn aberth(coeffs: &[ComplexApprox], precision_bits: usize) -> Result<(Vec<ComplexApprox>, u32)> {
    let prec = normalize_precision(precision_bits as u32);
    let d = coeffs.len() - 1;
    let coeffs: Vec<ComplexApprox> = coeffs.iter().map(|c| c.with_prec(prec)).collect();
    if d == 0 {
        return Err(Error::DegreeTooLow { degree: Some(0) });
    }
    if d == 1 {
        let root = coeffs[0].div(&coeffs[1]).neg();
        return Ok((vec![root], 1));
    }

    let mut xs = initial_guesses(&coeffs, prec);

    let conv = Real::pow2(-(prec as i64) / 2, prec);
    // Multiple roots (the families do produce (z+1)^2 factors) cap the
    // attainable accuracy near 2^(-prec/2) and turn convergence linear,
    // so corrections can plateau just above `conv`. Once inside the
    // asymptotic regime, accept after the corrections stop improving;
    // residual certification remains the arbiter of quality.
    let asym = Real::pow2(-(prec as i64) / 4, prec);
    let half = Real::pow2(-1, prec);
    let floor = Real::pow2(-(prec as i64), prec);
    let mut best = Real::one(prec);
    let mut stale = 0u32;
    let mut last_max = Real::one(prec);
    for sweep in 1..=ITERATION_CAP {
        let mut max_rel = Real::zero(prec);
        for i in 0..d {
            let (f, fp) = horner_pair(&coeffs, &xs[i]);
            if f.is_zero() {
                continue;
            }
            if fp.is_zero() {
                // deterministic nudge off a critical point
                let bump = xs[i].abs().max(&Real::one(prec)).mul(&Real::pow2(-11, prec));
                xs[i] = xs[i].add(&ComplexApprox::from_real(bump));
                max_rel = Real::one(prec);
                continue;
            }
            let newton = f.div(&fp);
            let mut repulse = ComplexApprox::zero(prec);
            for j in 0..d {
                if j == i {
                    continue;
                }
                let diff = xs[i].sub(&xs[j]);
                if diff.is_zero() {
                    continue;
                }
                repulse = repulse.add(&diff.recip());
            }
            let denom = ComplexApprox::one(prec).sub(&newton.mul(&repulse));
            let w = if denom.is_zero() {
                newton
            } else {
                newton.div(&denom)
            };
            xs[i] = xs[i].sub(&w);
            let rel = w.abs().div(&xs[i].abs().max(&floor));
            max_rel = max_rel.max(&rel);
        }
        if max_rel.cmp(&conv) == Ordering::Less {
            return Ok((xs, sweep));
        }
        if max_rel.cmp(&asym) == Ordering::Less {
            if max_rel.cmp(&best.mul(&half)) == Ordering::Greater {
                stale += 1;
            } else {
                stale = 0;
            }
            if max_rel.cmp(&best) == Ordering::Less {
                best = max_rel.clone();
            }
            if stale >= 10 {
                return Ok((xs, sweep));
            }
        }
        last_max = max_rel;
    }
    Err(Error::NonConvergence {
        iterations: ITERATION_CAP,
        max_correction: last_max.to_f64(),
    })
}

fn polish_and_certify(
    f: &IntPolynomial,
    raw_roots: Vec<ComplexApprox>,
    prec: usize,
) -> Result<(Vec<ComplexApprox>, Vec<Real>)> {
    let wp = prec * 2;
    let coeffs = to_complex_coeffs(f, wp);
    let threshold = Real::pow2(-(prec as i64) / 3, prec);
    let mut roots = Vec::with_capacity(raw_roots.len());
    let mut residuals = Vec::with_capacity(raw_roots.len());
    for (index, r) in raw_roots.into_iter().enumerate() {
        let mut x = r.with_prec(wp);
        for _ in 0..3 {
            let (fx, fpx) = horner_pair(&coeffs, &x);
            if fx.is_zero() || fpx.is_zero() {
                break;
            }
            x = x.sub(&fx.div(&fpx));
        }
        let rounded = x.with_prec(prec);
        let residual = scaled_residual(f, &rounded);
        if residual.cmp(&threshold) == Ordering::Greater {
            return Err(Error::ResidualCertification {
                index,
                residual: residual.to_f64(),
                threshold: threshold.to_f64(),
            });
        }
        roots.push(rounded);
        residuals.push(residual);
    }
    Ok((roots, residuals))
}

/// All complex roots of `f` at the requested precision, with exact
/// stripping of roots at the origin and residual certification of the
/// numeric ones. Deterministic.
pub fn find_roots(f: &IntPolynomial, precision_bits: u32) -> Result<RootSet> {
    if precision_bits < 53 {
        return Err(Error::PrecisionTooLow {
            bits: precision_bits,
        });
    }
    let prec = normalize_precision(precision_bits);
    let degree = f.degree();
    if degree.unwrap_or(0) < 1 {
        return Err(Error::DegreeTooLow { degree });
    }
    let (g, zero_mult) = f.strip_zero_roots();
    let threshold = Real::pow2(-(prec as i64) / 3, prec);

    let mut roots: Vec<ComplexApprox> = (0..zero_mult).map(|_| ComplexApprox::zero(prec)).collect();
    let mut residuals: Vec<Real> = (0..zero_mult).map(|_| Real::zero(prec)).collect();
    let mut iterations = 0;
    if g.degree().unwrap_or(0) >= 1 {
        let coeffs = to_complex_coeffs(&g, prec);
        let (raw, sweeps) = aberth(&coeffs, prec)?;
        iterations = sweeps;
        let (polished, res) = polish_and_certify(&g, raw, prec)?;
        roots.extend(polished);
        residuals.extend(res);
    }
    let mut set = RootSet {
        roots,
        residuals,
        precision_bits: prec,
        iterations,
        threshold,
        near_duplicates: 0,
    };
    set.sort();
    set.count_near_duplicates();
    Ok(set)
}

/// Roots of `P_n` for the given system, with `z = -1` handled exactly:
/// while the integer value `P_n(-1)` is zero the factor `(z+1)` is removed
/// by exact synthetic division, and the corresponding root enters the set
/// as an exact `-1` with zero residual. Numeric proximity to `-1` is never
/// used as a deflation criterion.
pub fn find_z_roots(spec: SystemSpec, precision_bits: u32) -> Result<ZRoots> {
    let prec = normalize_precision(precision_bits);
    let mut f = build_p_of_z(spec);
    let minus_one = BigInt::from(-1);
    let mut mult = 0usize;
    if p_at_minus_one(spec).is_zero() {
        while let Some(q) = f.deflate_linear_root(&minus_one) {
            mult += 1;
            f = q;
        }
    }
    let mut set = if f.degree().unwrap_or(0) >= 1 {
        find_roots(&f, precision_bits)?
    } else {
        RootSet {
            roots: Vec::new(),
            residuals: Vec::new(),
            precision_bits: prec,
            iterations: 0,
            threshold: Real::pow2(-(prec as i64) / 3, prec),
            near_duplicates: 0,
        }
    };
    for _ in 0..mult {
        set.roots
            .push(ComplexApprox::from_real(Real::from_i64(-1, prec)));
        set.residuals.push(Real::zero(prec));
    }
    set.sort();
    set.count_near_duplicates();
    Ok(ZRoots {
        set,
        minus_one_multiplicity: mult,
    })
}

/// Pushes z-domain roots through `p = 1/(1+z)`. Roots within
/// `2^(-precision/4)` of `-1` have no finite image and are only counted;
/// with exact upstream deflation (see [`find_z_roots`]) none should
/// remain at this stage.
pub fn map_z_roots_to_p(zroots: &RootSet) -> MappedRoots {
    let prec = zroots.precision_bits;
    let tol = Real::pow2(-(prec as i64) / 4, prec);
    let one = ComplexApprox::one(prec);
    let mut roots = Vec::new();
    let mut residuals = Vec::new();
    let mut dropped = 0usize;
    for (z, res) in zroots.roots.iter().zip(&zroots.residuals) {
        let w = one.add(z);
        if w.abs().cmp(&tol) != Ordering::Greater {
            dropped += 1;
            continue;
        }
        roots.push(w.recip());
        residuals.push(res.clone());
    }
    let mut set = RootSet {
        roots,
        residuals,
        precision_bits: prec,
        iterations: zroots.iterations,
        threshold: zroots.threshold.clone(),
        near_duplicates: 0,
    };
    set.sort();
    set.count_near_duplicates();
    MappedRoots {
        set,
        dropped_at_minus_one: dropped,
    }
}

fn try_assign(
    i: usize,
    adj: &[Vec<bool>],
    visited: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for j in 0..adj[i].len() {
        if adj[i][j] && !visited[j] {
            visited[j] = true;
            if owner[j].is_none() || try_assign(owner[j].unwrap(), adj, visited, owner) {
                owner[j] = Some(i);
                return true;
            }
        }
    }
    false
}

fn has_perfect_matching(n: usize, adj: &[Vec<bool>]) -> bool {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut visited = vec![false; n];
        if !try_assign(i, adj, &mut visited, &mut owner) {
            return false;
        }
    }
    true
}

/// Minimal bottleneck matching distance between two root multisets: the
/// smallest value D such that a perfect pairing exists with every pair
/// within D. Exact (binary search over the pairwise distances plus
/// augmenting-path matching), not greedy.
pub fn match_root_sets(a: &RootSet, b: &RootSet) -> Result<Real> {
    if a.roots.len() != b.roots.len() {
        return Err(Error::CardinalityMismatch {
            left: a.roots.len(),
            right: b.roots.len(),
        });
    }
    let n = a.roots.len();
    if n == 0 {
        return Ok(Real::zero(a.precision_bits.max(b.precision_bits)));
    }
    let dist: Vec<Vec<Real>> = a
        .roots
        .iter()
        .map(|x| b.roots.iter().map(|y| x.dist(y)).collect())
        .collect();
    let mut all: Vec<Real> = dist.iter().flatten().cloned().collect();
    all.sort_by(|p, q| p.cmp(q));
    all.dedup_by(|p, q| p.cmp(q) == Ordering::Equal);

    let feasible = |limit: &Real| -> bool {
        let adj: Vec<Vec<bool>> = dist
            .iter()
            .map(|row| {
                row.iter()
                    .map(|d| d.cmp(limit) != Ordering::Greater)
                    .collect()
            })
            .collect();
        has_perfect_matching(n, &adj)
    };

    let (mut lo, mut hi) = (0usize, all.len() - 1);
    if !feasible(&all[hi]) {
        // cannot happen: the full distance set always admits a matching
        return Ok(all[hi].clone());
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&all[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(all[lo].clone())
}
