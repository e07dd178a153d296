//! Closed-form roots for k = 2, the largest-root selector, and the
//! closure/density facts about the root set.
//!
//! For k = 2 every root of `P_n` is real and given by the cosine formula
//! `z_(n,j) = -1 / (4 cos^2(j pi / (n+2)))` for `j = 1..floor((n+1)/2)`;
//! the index with `3j = n+2` is exactly the root `z = -1`, which has no
//! finite image under `p = 1/(1+z)`. Everything is computed at working
//! precision: near `n = 3000` the roots cluster at spacing `O(1/n^2)` and
//! hardware floats would blur the density measurements.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::consec::{build_p_of_z, build_rel_recurrence, SystemSpec};
use crate::error::{Error, Result};
use crate::polycore::{cos_ladder, normalize_precision, ComplexApprox, Real};
use crate::rootfind::{scaled_residual, RootSet};

/// One closed-form root: the z-value always, the p-image unless the
/// index is the excluded `3j = n+2` (where z = -1).
#[derive(Clone, Debug)]
pub struct ClosedRoot {
    pub n: u32,
    pub j: u32,
    pub z_value: ComplexApprox,
    pub p_value: Option<ComplexApprox>,
}

/// The largest-root index the closing remark predicts, next to the index
/// an exhaustive evaluation actually selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RemarkAudit {
    pub n: u32,
    pub j_remark: u32,
    pub j_empirical: u32,
    pub agree: bool,
}

/// Closest approach of the closed-form root set to one target value.
#[derive(Clone, Debug)]
pub struct DensityHit {
    pub target: Real,
    pub min_distance: Real,
    pub witness_n: u32,
    pub witness_j: u32,
}

/// Density sweep outcome: per-target closest approaches plus the
/// confinement evidence that the open interval (0, 4/3) stays empty.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub hits: Vec<DensityHit>,
    pub n_max: u32,
    /// Roots found inside [1e-12, 4/3 - 1e-9]; must stay zero.
    pub gap_violations: usize,
    /// Largest root at or below the lower gap edge (approaches 0 from below).
    pub closest_below_gap: Option<Real>,
    /// Smallest root at or above the upper gap edge (approaches 4/3 from above).
    pub closest_above_gap: Option<Real>,
}

fn four_cos_sq(c: &Real) -> Real {
    let s = c.square();
    let s2 = s.add(&s);
    s2.add(&s2)
}

/// All roots of `P_n` (k = 2) by the cosine formula, in index order
/// (strictly decreasing values). `p_value` is present iff `3j != n+2`,
/// an exact integer test.
pub fn z_roots_closed(n: u32, precision_bits: u32) -> Vec<ClosedRoot> {
    assert!(n >= 1, "closed form needs n >= 1");
    let prec = normalize_precision(precision_bits);
    let j_max = (n as u64).div_ceil(2);
    let cosines = cos_ladder(n as u64 + 2, j_max, prec);
    let one = Real::one(prec);
    (1..=j_max as u32)
        .map(|j| {
            let fc = four_cos_sq(&cosines[j as usize - 1]);
            let z = fc.recip().neg();
            let p_value = if 3 * j as u64 != n as u64 + 2 {
                Some(ComplexApprox::from_real(one.add(&z).recip()))
            } else {
                None
            };
            ClosedRoot {
                n,
                j,
                z_value: ComplexApprox::from_real(z),
                p_value,
            }
        })
        .collect()
}

/// The nonzero roots of `Rel(2,n;p)`: the cosine-formula roots with the
/// excluded index filtered out.
pub fn p_roots_closed(n: u32, precision_bits: u32) -> Vec<ClosedRoot> {
    assert!(n >= 2, "p-domain closed form needs n >= 2");
    z_roots_closed(n, precision_bits)
        .into_iter()
        .filter(|r| r.p_value.is_some())
        .collect()
}

/// Cross-check derivation: the same roots obtained through the
/// roots-of-unity form, `z = (t^2 - 1)/4` with `t = (w - 1)/(w + 1)` and
/// `w` the j-th (n+2)-th root of unity. Algebraically `t = i tan(j pi/(n+2))`,
/// so this must coincide with the cosine formula; the two paths share no
/// code, and the verify suite asserts their equality.
pub fn z_root_via_unity(n: u32, j: u32, precision_bits: u32) -> ComplexApprox {
    let prec = normalize_precision(precision_bits);
    let theta = Real::pi(prec)
        .mul(&Real::from_i64(2 * j as i64, prec))
        .div(&Real::from_i64(n as i64 + 2, prec));
    let w = ComplexApprox::unit(&theta);
    let one = ComplexApprox::one(prec);
    let t = w.sub(&one).div(&w.add(&one));
    let quarter = Real::pow2(-2, prec);
    t.mul(&t).sub(&one).mul_real(&quarter)
}

fn closed_set(n: u32, precision_bits: u32, p_domain: bool) -> RootSet {
    let prec = normalize_precision(precision_bits);
    let spec = SystemSpec::new(2, n).expect("k=2 is valid");
    let poly = if p_domain {
        build_rel_recurrence(spec)
    } else {
        build_p_of_z(spec)
    };
    let mut roots: Vec<ComplexApprox> = z_roots_closed(n, precision_bits)
        .into_iter()
        .filter_map(|r| if p_domain { r.p_value } else { Some(r.z_value) })
        .collect();
    roots.sort_by(|a, b| a.cmp_re_im(b));
    let residuals = roots.iter().map(|r| scaled_residual(&poly, r)).collect();
    let mut set = RootSet {
        roots,
        residuals,
        precision_bits: prec,
        iterations: 0,
        threshold: Real::pow2(-(prec as i64) / 3, prec),
        near_duplicates: 0,
    };
    set.count_near_duplicates();
    set
}

/// The cosine-formula roots of `P_n` as a [`RootSet`] (sorted, with
/// residuals against the exact polynomial), ready for matching against
/// the numeric solver.
pub fn z_root_set(n: u32, precision_bits: u32) -> RootSet {
    closed_set(n, precision_bits, false)
}

/// The closed-form nonzero p-roots of `Rel(2,n;p)` as a [`RootSet`],
/// residuals taken against the exact reliability polynomial.
pub fn p_root_set(n: u32, precision_bits: u32) -> RootSet {
    closed_set(n, precision_bits, true)
}

/// The closing remark's largest-root index formula next to what direct
/// maximization of |p| over the closed-form roots gives. Reports, never
/// asserts: the two disagree for some n (the formula minimizes
/// |cos^2 - 1/4|, which maximizes |p - 1| rather than |p|).
pub fn largest_root_remark(n: u32, precision_bits: u32) -> RemarkAudit {
    assert!(n >= 2);
    let j_remark = if n % 3 == 1 {
        n.div_ceil(3) + 1
    } else {
        n / 3 + 1
    };
    let mut best: Option<(u32, Real)> = None;
    for r in p_roots_closed(n, precision_bits) {
        let a = r.p_value.expect("filtered to present").abs();
        let better = match &best {
            None => true,
            Some((_, cur)) => a.cmp(cur) == Ordering::Greater,
        };
        if better {
            best = Some((r.j, a));
        }
    }
    let j_empirical = best.expect("n >= 2 has at least one p-root").0;
    RemarkAudit {
        n,
        j_remark,
        j_empirical,
        agree: j_remark == j_empirical,
    }
}

const GAP_LOW: f64 = 1e-12;
const GAP_HIGH_FUZZ: f64 = 1e-9;

struct SweepSlice {
    best: Vec<Option<(Real, u32, u32)>>,
    violations: usize,
    below: Option<Real>,
    above: Option<Real>,
}

fn merge_best(
    a: Option<(Real, u32, u32)>,
    b: Option<(Real, u32, u32)>,
) -> Option<(Real, u32, u32)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            // strict ordering with (n, j) tie-break keeps the reduction
            // deterministic under any thread schedule
            let pick_x = match x.0.cmp(&y.0) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => (x.1, x.2) <= (y.1, y.2),
            };
            Some(if pick_x { x } else { y })
        }
    }
}

fn merge_slices(mut a: SweepSlice, b: SweepSlice) -> SweepSlice {
    for (slot, other) in a.best.iter_mut().zip(b.best) {
        *slot = merge_best(slot.take(), other);
    }
    a.violations += b.violations;
    a.below = match (a.below, b.below) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.max(&y)),
    };
    a.above = match (a.above, b.above) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(&y)),
    };
    a
}

/// Sweeps every closed-form p-root with `n <= n_max` and reports, for
/// each target, the closest approach with its witness. Targets must lie
/// in the closure `(-inf, 0] u [4/3, inf)`; anything inside the open gap
/// is rejected up front since no root ever approaches it. The same pass
/// counts gap violations and records the extremal approaches to the gap.
pub fn closure_density_check(
    targets: &[f64],
    n_max: u32,
    precision_bits: u32,
) -> Result<DensityReport> {
    assert!(n_max >= 2);
    let prec = normalize_precision(precision_bits);
    for &t in targets {
        if t > GAP_LOW && t < 4.0 / 3.0 - GAP_HIGH_FUZZ {
            return Err(Error::TargetInGap { target: t });
        }
    }
    let targets_r: Vec<Real> = targets.iter().map(|&t| Real::from_f64(t, prec)).collect();
    let gap_low = Real::from_f64(GAP_LOW, prec);
    let gap_high = Real::from_f64(4.0 / 3.0 - GAP_HIGH_FUZZ, prec);

    let identity = || SweepSlice {
        best: vec![None; targets_r.len()],
        violations: 0,
        below: None,
        above: None,
    };
    let slice = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut s = identity();
            for root in p_roots_closed(n, prec as u32) {
                let p = root.p_value.expect("filtered to present").re;
                if p.cmp(&gap_low) == Ordering::Greater {
                    if p.cmp(&gap_high) == Ordering::Less {
                        s.violations += 1;
                    } else {
                        s.above = Some(match s.above.take() {
                            None => p.clone(),
                            Some(cur) => cur.min(&p),
                        });
                    }
                } else {
                    s.below = Some(match s.below.take() {
                        None => p.clone(),
                        Some(cur) => cur.max(&p),
                    });
                }
                for (slot, t) in s.best.iter_mut().zip(&targets_r) {
                    let d = p.sub(t).abs();
                    *slot = merge_best(slot.take(), Some((d, n, root.j)));
                }
            }
            s
        })
        .reduce(identity, merge_slices);

    let hits = targets_r
        .into_iter()
        .zip(slice.best)
        .map(|(target, best)| {
            let (min_distance, witness_n, witness_j) = best.expect("n_max >= 2 yields roots");
            DensityHit {
                target,
                min_distance,
                witness_n,
                witness_j,
            }
        })
        .collect();
    Ok(DensityReport {
        hits,
        n_max,
        gap_violations: slice.violations,
        closest_below_gap: slice.below,
        closest_above_gap: slice.above,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consec::p_at_minus_one;
    use crate::rootfind::{find_roots, match_root_sets};
    use num_traits::Zero;

    #[test]
    fn small_z_roots_match_desk_values() {
        let r1 = z_roots_closed(1, 256);
        assert_eq!(r1.len(), 1);
        assert!((r1[0].z_value.re.to_f64() + 1.0).abs() < 1e-70);
        assert!(r1[0].p_value.is_none()); // 3*1 = 1+2

        let r2 = z_roots_closed(2, 256);
        assert_eq!(r2.len(), 1);
        assert_eq!(r2[0].z_value.re.to_f64(), -0.5);

        let r3 = z_roots_closed(3, 256);
        let got: Vec<f64> = r3.iter().map(|r| r.z_value.re.to_f64()).collect();
        assert!((got[0] + 0.3819660112501051).abs() < 1e-15);
        assert!((got[1] + 2.618033988749895).abs() < 1e-15);
        // strictly decreasing in j, all < -1/4
        assert!(got[0] > got[1] && got[0] < -0.25);
    }

    #[test]
    fn small_p_roots_match_desk_values() {
        let r2 = p_roots_closed(2, 256);
        assert_eq!(r2.len(), 1);
        assert!((r2[0].p_value.as_ref().unwrap().re.to_f64() - 2.0).abs() < 1e-70);

        let r3 = p_roots_closed(3, 256);
        let got: Vec<f64> = r3
            .iter()
            .map(|r| r.p_value.as_ref().unwrap().re.to_f64())
            .collect();
        assert!((got[0] - 1.618033988749895).abs() < 1e-15);
        assert!((got[1] + 0.6180339887498949).abs() < 1e-15);

        let r4 = p_roots_closed(4, 256);
        assert_eq!(r4.len(), 1); // j=2 excluded: (4+2)/3 = 2
        assert!((r4[0].p_value.as_ref().unwrap().re.to_f64() - 1.5).abs() < 1e-70);
    }

    #[test]
    fn root_counts_track_degree_accounting() {
        for n in 2..=40u32 {
            let spec = SystemSpec::new(2, n).unwrap();
            let rel = build_rel_recurrence(spec);
            let (_, zero_mult) = rel.strip_zero_roots();
            let nonzero = rel.degree().unwrap() - zero_mult;
            assert_eq!(p_roots_closed(n, 128).len(), nonzero, "n={}", n);
        }
    }

    #[test]
    fn closed_matches_numeric_z_roots() {
        for n in [2u32, 7, 13, 24, 48] {
            let closed = z_root_set(n, 256);
            let numeric = find_roots(&build_p_of_z(SystemSpec::new(2, n).unwrap()), 256).unwrap();
            let gap = match_root_sets(&closed, &numeric).unwrap();
            assert!(gap.to_f64() < 1e-60, "n={} gap={}", n, gap.to_f64());
        }
    }

    #[test]
    fn unity_path_agrees_with_cosine_path() {
        for n in 1..=40u32 {
            for (idx, root) in z_roots_closed(n, 256).iter().enumerate() {
                let alt = z_root_via_unity(n, idx as u32 + 1, 256);
                let d = root.z_value.dist(&alt);
                assert!(d.to_f64() < 1e-70, "n={} j={} d={:e}", n, idx + 1, d.to_f64());
            }
        }
    }

    #[test]
    fn exclusion_three_predicates_coincide() {
        for n in 1..=500u32 {
            let divisible = (n + 2) % 3 == 0;
            let residue = n % 3 == 1;
            let exact_zero = p_at_minus_one(SystemSpec::new(2, n).unwrap()).is_zero();
            assert_eq!(divisible, residue, "n={}", n);
            assert_eq!(divisible, exact_zero, "n={}", n);
            let excluded = z_roots_closed(n, 64)
                .iter()
                .filter(|r| r.p_value.is_none())
                .count();
            assert_eq!(excluded, usize::from(divisible), "n={}", n);
        }
    }

    #[test]
    fn remark_audit_desk_rows() {
        let a5 = largest_root_remark(5, 256);
        assert_eq!((a5.j_remark, a5.j_empirical, a5.agree), (2, 2, true));
        let a2 = largest_root_remark(2, 256);
        assert_eq!((a2.j_remark, a2.j_empirical, a2.agree), (1, 1, true));
        let a3 = largest_root_remark(3, 256);
        assert_eq!((a3.j_remark, a3.j_empirical, a3.agree), (2, 1, false));
        // n=4: formula selects ceil(4/3)+1 = 3, outside the index range
        let a4 = largest_root_remark(4, 256);
        assert_eq!((a4.j_remark, a4.j_empirical, a4.agree), (3, 1, false));
    }

    #[test]
    fn pairwise_gaps_stay_open() {
        for n in [17u32, 64, 128] {
            let set = p_root_set(n, 256);
            for i in 1..set.roots.len() {
                let gap = set.roots[i].re.sub(&set.roots[i - 1].re).abs();
                assert!(gap.to_f64() > 1e-5, "n={} i={} gap={:e}", n, i, gap.to_f64());
            }
        }
    }

    #[test]
    fn density_small_sweep() {
        let report = closure_density_check(&[2.0, 0.0, -1.0], 100, 256).unwrap();
        assert_eq!(report.gap_violations, 0);
        // exact hit at n=2
        let h2 = &report.hits[0];
        assert!(h2.min_distance.to_f64() < 1e-70);
        assert_eq!((h2.witness_n, h2.witness_j), (2, 1));
        // 0 approached from below by j near (n+1)/2
        assert!(report.hits[1].min_distance.to_f64() < 1e-3);
        // -1 is a limit of roots too, though slower: the critical angle
        // needs a good rational approximation j/(n+2), and below n=100
        // the best is 5/13
        let d = report.hits[2].min_distance.to_f64();
        assert!(d < 0.02, "d={}", d);
        assert_eq!(
            (report.hits[2].witness_n, report.hits[2].witness_j),
            (11, 5)
        );
        // confinement extremes bracket the forbidden interval
        assert!(report.closest_below_gap.unwrap().to_f64() <= 0.0);
        assert!(report.closest_above_gap.unwrap().to_f64() > 4.0 / 3.0 - 1e-9);
    }

    #[test]
    fn density_rejects_gap_targets() {
        assert!(matches!(
            closure_density_check(&[0.5], 50, 128),
            Err(Error::TargetInGap { .. })
        ));
        assert!(matches!(
            closure_density_check(&[1.0, -1.0], 50, 128),
            Err(Error::TargetInGap { .. })
        ));
        // boundary values are fine, including the f64 rounding of 4/3
        assert!(closure_density_check(&[0.0, 4.0 / 3.0], 50, 128).is_ok());
    }
}
