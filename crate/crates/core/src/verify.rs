//! Named verification suites over the other modules. Each check returns
//! a pass/fail with a human-readable detail line: the count of cases
//! covered on success, the first counterexample on failure. The CLI
//! surfaces these as text and JSON; the suites themselves are pure.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bkw::{
    classify_bkw, spectrum_at, unboundedness_scan, verify_z_minus_one_structure, BkwCase,
    DEFAULT_TIE_TOLERANCE,
};
use crate::closedform2::{
    closure_density_check, largest_root_remark, p_roots_closed, z_root_set, z_root_via_unity,
    z_roots_closed,
};
use crate::consec::{
    build_p_of_z, build_rel_binomial, build_rel_bruteforce, build_rel_counting_dp,
    build_rel_recurrence, p_at_minus_one, ReliabilityPair, SystemSpec, BRUTE_FORCE_CAP,
};
use crate::fibjac::{fibonacci, fibonacci_roots, jacobsthal, verify_relation};
use crate::polycore::{BigRational, ComplexApprox, IntPolynomial, Var};
use crate::rootfind::{find_roots, find_z_roots, map_z_roots_to_p, match_root_sets};

/// One verification outcome.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// First failure by `n` out of a parallel sweep, or the case count.
fn sweep<F>(range: std::ops::RangeInclusive<u32>, f: F) -> (usize, Option<String>)
where
    F: Fn(u32) -> Option<String> + Sync,
{
    let failures: Vec<(u32, String)> = range
        .clone()
        .into_par_iter()
        .filter_map(|n| f(n).map(|msg| (n, msg)))
        .collect();
    let count = range.count();
    let first = failures.into_iter().min_by_key(|(n, _)| *n).map(|(_, m)| m);
    (count, first)
}

const ORACLE_K_RANGE: std::ops::RangeInclusive<u32> = 2..=5;

pub fn suite_oracle(max_n: u32) -> Vec<Check> {
    let mut out = Vec::new();

    let cap = max_n.min(18);
    let mut comparisons = 0usize;
    let mut failure: Option<String> = None;
    'outer: for k in ORACLE_K_RANGE {
        for n in 0..=cap {
            let spec = SystemSpec::new(k, n).expect("k >= 2");
            let rec = build_rel_recurrence(spec);
            let dp = build_rel_counting_dp(spec);
            if rec != dp {
                failure = Some(format!("k={} n={}: recurrence != counting dp", k, n));
                break 'outer;
            }
            comparisons += 1;
            if n <= BRUTE_FORCE_CAP {
                let brute = build_rel_bruteforce(spec).expect("within cap");
                if rec != brute {
                    failure = Some(format!("k={} n={}: recurrence != brute force", k, n));
                    break 'outer;
                }
                comparisons += 1;
            }
            if k == 2 {
                let binom = build_rel_binomial(n);
                if rec != binom {
                    failure = Some(format!("n={}: recurrence != binomial formula", n));
                    break 'outer;
                }
                comparisons += 1;
            }
        }
    }
    out.push(check(
        "oracle/four-way-builder-equality",
        failure.is_none(),
        failure.unwrap_or(format!("k=2..5, n<=18: {} exact comparisons", comparisons)),
    ));

    let cap = max_n.min(60);
    let (count, first) = sweep(0..=cap, |n| {
        for k in ORACLE_K_RANGE {
            let spec = SystemSpec::new(k, n).expect("k >= 2");
            let pair = ReliabilityPair::build(spec);
            if !pair.transform_consistent() {
                return Some(format!("k={} n={}: z-to-p transform drifts", k, n));
            }
        }
        None
    });
    out.push(check(
        "oracle/transform-z-to-p",
        first.is_none(),
        first.unwrap_or(format!("k=2..5, {} values of n", count)),
    ));

    let cap = max_n.min(50);
    let (count, first) = sweep(0..=cap, |n| {
        for k in ORACLE_K_RANGE {
            let spec = SystemSpec::new(k, n).expect("k >= 2");
            if crate::consec::build_p_of_z_alt(spec) != build_p_of_z(spec) {
                return Some(format!("k={} n={}: alternative recurrence differs", k, n));
            }
        }
        None
    });
    out.push(check(
        "oracle/alternative-recurrence",
        first.is_none(),
        first.unwrap_or(format!("k=2..5, {} values of n", count)),
    ));

    let cap = max_n.min(64);
    let (count, first) = sweep(0..=cap, |n| {
        let p = build_p_of_z(SystemSpec::new(2, n).expect("k=2"));
        let quarter = BigRational::new(BigInt::from(-1), BigInt::from(4));
        let got = p.eval_rational(&quarter);
        let want = BigRational::new(BigInt::from(n as i64 + 2), BigInt::one() << (n as usize + 1));
        (got != want).then(|| format!("n={}: P_n(-1/4) = {} != {}", n, got, want))
    });
    out.push(check(
        "oracle/quarter-point-value",
        first.is_none(),
        first.unwrap_or(format!("k=2, {} exact rational identities", count)),
    ));

    let cap = max_n.min(60);
    let (_, first) = sweep(0..=cap, |n| {
        for k in ORACLE_K_RANGE {
            let spec = SystemSpec::new(k, n).expect("k >= 2");
            let v = p_at_minus_one(spec);
            if v.abs() > BigInt::one() {
                return Some(format!("k={} n={}: P_n(-1) = {} outside {{0, +-1}}", k, n, v));
            }
            let direct = build_p_of_z(spec).eval_bigint(&BigInt::from(-1));
            if v != direct {
                return Some(format!("k={} n={}: sign recurrence {} != direct {}", k, n, v, direct));
            }
            let vanishes = (1..k).contains(&(n % (k + 1)));
            if v.is_zero() != vanishes {
                return Some(format!(
                    "k={} n={}: P_n(-1) = {} but residue class says zero={}",
                    k, n, v, vanishes
                ));
            }
        }
        None
    });
    out.push(check(
        "oracle/minus-one-sign-pattern",
        first.is_none(),
        first.unwrap_or("k=2..5, n<=60: values in {0,+-1}, zeros exactly on the residue classes".into()),
    ));

    out
}

pub fn suite_closedform(max_n: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let prec = crate::DEFAULT_PRECISION;

    let cap = max_n.clamp(2, 96);
    let (count, first) = sweep(2..=cap, |n| {
        let closed = z_root_set(n, prec);
        let numeric = match find_roots(&build_p_of_z(SystemSpec::new(2, n).expect("k=2")), prec) {
            Ok(s) => s,
            Err(e) => return Some(format!("n={}: solver failed: {}", n, e)),
        };
        match match_root_sets(&closed, &numeric) {
            Ok(d) if d.to_f64() <= 1e-8 => None,
            Ok(d) => Some(format!("n={}: assignment distance {:e}", n, d.to_f64())),
            Err(e) => Some(format!("n={}: {}", n, e)),
        }
    });
    out.push(check(
        "closedform/matches-numeric-roots",
        first.is_none(),
        first.unwrap_or(format!("{} values of n, optimal assignment within 1e-8", count)),
    ));

    let cap = max_n.clamp(2, 128);
    let (count, first) = sweep(2..=cap, |n| {
        let spec = SystemSpec::new(2, n).expect("k=2");
        let zset = match find_z_roots(spec, prec) {
            Ok(s) => s,
            Err(e) => return Some(format!("n={}: solver failed: {}", n, e)),
        };
        let mapped = map_z_roots_to_p(&zset.set);
        for r in &mapped.set.roots {
            if r.im.to_f64().abs() > 1e-10 {
                return Some(format!("n={}: |Im| = {:e}", n, r.im.to_f64().abs()));
            }
        }
        for w in mapped.set.roots.windows(2) {
            let gap = w[1].dist(&w[0]).to_f64();
            if gap <= 1e-6 {
                return Some(format!("n={}: numeric pairwise gap {:e}", n, gap));
            }
        }
        None
    });
    out.push(check(
        "closedform/numeric-p-roots-real-distinct",
        first.is_none(),
        first.unwrap_or(format!("{} values of n: |Im| <= 1e-10, gaps > 1e-6", count)),
    ));

    let cap = max_n.clamp(2, 128);
    let (count, first) = sweep(2..=cap, |n| {
        let roots = p_roots_closed(n, prec);
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                let a = roots[i].p_value.as_ref().expect("present");
                let b = roots[j].p_value.as_ref().expect("present");
                let gap = a.dist(b).to_f64();
                if gap < 1e-5 {
                    return Some(format!("n={}: closed-form gap {:e}", n, gap));
                }
            }
        }
        None
    });
    out.push(check(
        "closedform/pairwise-gap",
        first.is_none(),
        first.unwrap_or(format!("{} values of n, all gaps >= 1e-5", count)),
    ));

    let cap = max_n.clamp(1, 40);
    let (count, first) = sweep(1..=cap, |n| {
        for (idx, root) in z_roots_closed(n, prec).iter().enumerate() {
            let alt = z_root_via_unity(n, idx as u32 + 1, prec);
            let d = root.z_value.dist(&alt).to_f64();
            if d > 1e-40 {
                return Some(format!("n={} j={}: derivations differ by {:e}", n, idx + 1, d));
            }
        }
        None
    });
    out.push(check(
        "closedform/unity-derivation-agrees",
        first.is_none(),
        first.unwrap_or(format!("{} values of n: cosine and roots-of-unity paths coincide", count)),
    ));

    let (_, first) = sweep(1..=500, |n| {
        let divisible = (n + 2) % 3 == 0;
        let residue = n % 3 == 1;
        let exact = p_at_minus_one(SystemSpec::new(2, n).expect("k=2")).is_zero();
        (divisible != residue || divisible != exact).then(|| {
            format!(
                "n={}: 3|(n+2)={} n==1 mod 3={} P_n(-1)=0:{}",
                n, divisible, residue, exact
            )
        })
    });
    out.push(check(
        "closedform/excluded-index-predicates",
        first.is_none(),
        first.unwrap_or("n<=500: divisibility, residue, and exact-value tests coincide".into()),
    ));

    let density_n = max_n.max(200);
    let targets = [-5.0, -1.0, -0.1, 4.0 / 3.0 + 1e-6, 2.0, 5.0, 10.0];
    match closure_density_check(&targets, density_n, prec) {
        Ok(report) => {
            let worst = report
                .hits
                .iter()
                .max_by(|a, b| a.min_distance.cmp(&b.min_distance))
                .expect("targets nonempty");
            let ok = worst.min_distance.to_f64() <= 0.01 && report.gap_violations == 0;
            out.push(check(
                "closedform/closure-density-and-gap",
                ok,
                format!(
                    "n<={}: worst approach {:e} (target {}), {} roots inside (0, 4/3)",
                    density_n,
                    worst.min_distance.to_f64(),
                    worst.target.to_f64(),
                    report.gap_violations
                ),
            ));
        }
        Err(e) => out.push(check(
            "closedform/closure-density-and-gap",
            false,
            format!("density sweep failed: {}", e),
        )),
    }

    let cap = max_n.clamp(2, 128);
    let (count, first) = sweep(2..=cap, |n| {
        let audit = largest_root_remark(n, prec);
        // independent maximization: sort by (|p| descending, j ascending)
        let mut pairs: Vec<(u32, crate::polycore::Real)> = p_roots_closed(n, prec)
            .into_iter()
            .map(|r| (r.j, r.p_value.expect("present").abs()))
            .collect();
        pairs.sort_by(|a, b| match b.1.cmp(&a.1) {
            Ordering::Equal => a.0.cmp(&b.0),
            other => other,
        });
        (pairs[0].0 != audit.j_empirical).then(|| {
            format!(
                "n={}: audit picked j={}, direct maximization j={}",
                n, audit.j_empirical, pairs[0].0
            )
        })
    });
    out.push(check(
        "closedform/remark-audit-self-consistency",
        first.is_none(),
        first.unwrap_or(format!("{} values of n", count)),
    ));

    out
}

/// Deterministic pseudo-random sample points in the square [-3,3]^2.
fn sample_points(count: usize, prec: u32) -> Vec<ComplexApprox> {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut unit = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| {
            ComplexApprox::from_f64(
                unit() * 6.0 - 3.0,
                unit() * 6.0 - 3.0,
                crate::polycore::normalize_precision(prec),
            )
        })
        .collect()
}

pub fn suite_bkw(max_n: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let prec = crate::DEFAULT_PRECISION;

    let mut failure = None;
    for k in 2..=8u32 {
        match verify_z_minus_one_structure(k, prec) {
            Ok(rep) if rep.holds => {}
            Ok(rep) => {
                failure = Some(format!(
                    "k={}: match {:e}, modulus {:e}, min gap {:e}",
                    k, rep.max_match_error, rep.max_modulus_error, rep.min_pairwise_gap
                ));
                break;
            }
            Err(e) => {
                failure = Some(format!("k={}: {}", k, e));
                break;
            }
        }
    }
    out.push(check(
        "bkw/unit-roots-at-minus-one",
        failure.is_none(),
        failure.unwrap_or("k=2..8: roots match the punctured (k+1)-th root set within 1e-12".into()),
    ));

    let mut failure = None;
    for k in 2..=8u32 {
        let minus_one = ComplexApprox::from_f64(-1.0, 0.0, prec as usize);
        match spectrum_at(k, &minus_one, prec) {
            Ok(s) => {
                let cls = classify_bkw(&s, DEFAULT_TIE_TOLERANCE);
                if cls.case != BkwCase::ModulusTie || cls.tie_count != k {
                    failure = Some(format!(
                        "k={}: case {:?}, tie_count {}",
                        k, cls.case, cls.tie_count
                    ));
                    break;
                }
            }
            Err(e) => {
                failure = Some(format!("k={}: {}", k, e));
                break;
            }
        }
    }
    out.push(check(
        "bkw/modulus-tie-at-minus-one",
        failure.is_none(),
        failure.unwrap_or("k=2..8: full modulus tie (tie_count = k)".into()),
    ));

    let n_cap = max_n.min(40);
    let points = sample_points(20, prec);
    let failures: Vec<String> = points
        .par_iter()
        .enumerate()
        .filter_map(|(i, z)| {
            for k in 2..=5u32 {
                let s = match spectrum_at(k, z, prec) {
                    Ok(s) => s,
                    Err(crate::Error::ConfluentSpectrum { .. }) => continue,
                    Err(e) => return Some(format!("point {}: k={}: {}", i, k, e)),
                };
                for n in [0, 1, n_cap / 2, n_cap] {
                    let via = crate::bkw::reconstruct_p(&s, n);
                    let direct = build_p_of_z(SystemSpec::new(k, n).expect("k >= 2"))
                        .eval_complex(&z.with_prec(prec as usize * 2));
                    let err = via.dist(&direct.with_prec(prec as usize)).to_f64();
                    let scale = direct.abs().to_f64().max(1.0);
                    if err / scale > 1e-30 {
                        return Some(format!(
                            "point {} k={} n={}: relative error {:e}",
                            i,
                            k,
                            n,
                            err / scale
                        ));
                    }
                }
            }
            None
        })
        .collect();
    out.push(check(
        "bkw/alpha-reconstruction",
        failures.is_empty(),
        failures
            .first()
            .cloned()
            .unwrap_or(format!("20 sample points, k=2..5, n up to {}", n_cap)),
    ));

    let mut failure = None;
    for z in sample_points(8, prec) {
        let s = match spectrum_at(2, &z, prec) {
            Ok(s) => s,
            Err(crate::Error::ConfluentSpectrum { .. }) => continue,
            Err(e) => {
                failure = Some(format!("{}", e));
                break;
            }
        };
        let denom = s.lambdas[0].sub(&s.lambdas[1]);
        let a1 = s.lambdas[0].mul(&s.lambdas[0]).div(&denom);
        let a2 = s.lambdas[1].mul(&s.lambdas[1]).div(&denom).neg();
        let e1 = s.alphas[0].dist(&a1).to_f64();
        let e2 = s.alphas[1].dist(&a2).to_f64();
        if e1.max(e2) > 1e-40 {
            failure = Some(format!(
                "z=({:.4},{:.4}): alpha deviation {:e}",
                z.re.to_f64(),
                z.im.to_f64(),
                e1.max(e2)
            ));
            break;
        }
    }
    out.push(check(
        "bkw/k2-explicit-alphas",
        failure.is_none(),
        failure.unwrap_or("8 sample points: solved alphas match the explicit k=2 formulas".into()),
    ));

    let scan_cap = max_n.clamp(4, 64);
    match unboundedness_scan(2, scan_cap, prec) {
        Ok(rows) => {
            let monotone = rows
                .windows(2)
                .all(|w| w[1].running_max.cmp(&w[0].running_max) != Ordering::Less);
            let grew = rows
                .last()
                .zip(rows.first())
                .map(|(l, f)| l.running_max.cmp(&f.running_max) == Ordering::Greater)
                .unwrap_or(false);
            out.push(check(
                "bkw/scan-monotone-growth",
                monotone && grew,
                format!(
                    "k=2, n<={}: running max {} -> {}",
                    scan_cap,
                    rows.first().map(|r| r.running_max.to_f64()).unwrap_or(0.0),
                    rows.last().map(|r| r.running_max.to_f64()).unwrap_or(0.0)
                ),
            ));
        }
        Err(e) => out.push(check(
            "bkw/scan-monotone-growth",
            false,
            format!("scan failed: {}", e),
        )),
    }

    out
}

pub fn suite_fibjac(max_n: u32) -> Vec<Check> {
    let mut out = Vec::new();
    let prec = crate::DEFAULT_PRECISION;

    let fib_rows: [&[i64]; 7] = [
        &[1],
        &[0, 1],
        &[1, 0, 1],
        &[0, 2, 0, 1],
        &[1, 0, 3, 0, 1],
        &[0, 3, 0, 4, 0, 1],
        &[1, 0, 6, 0, 5, 0, 1],
    ];
    let jac_rows: [&[i64]; 7] = [
        &[1],
        &[1],
        &[1, 1],
        &[1, 2],
        &[1, 3, 1],
        &[1, 4, 3],
        &[1, 5, 6, 1],
    ];
    let mut failure = None;
    for (i, (f, j)) in fib_rows.iter().zip(&jac_rows).enumerate() {
        let n = i as u32 + 1;
        if fibonacci(n) != IntPolynomial::from_i64(f, Var::Z) {
            failure = Some(format!("Fibonacci row n={} differs", n));
            break;
        }
        if jacobsthal(n) != IntPolynomial::from_i64(j, Var::Z) {
            failure = Some(format!("Jacobsthal row n={} differs", n));
            break;
        }
    }
    out.push(check(
        "fibjac/table-rows",
        failure.is_none(),
        failure.unwrap_or("rows n=1..7 of both families reproduced exactly".into()),
    ));

    let cap = max_n.min(60);
    let (count, first) = sweep(1..=cap, |n| {
        let f_ok = fibonacci(n + 2)
            == fibonacci(n + 1).shift_up(1).add(&fibonacci(n)).expect("same var");
        let j_ok = jacobsthal(n + 2)
            == jacobsthal(n + 1)
                .add(&jacobsthal(n).shift_up(1))
                .expect("same var");
        (!f_ok || !j_ok).then(|| format!("n={}: recurrence fails (F ok: {}, J ok: {})", n, f_ok, j_ok))
    });
    out.push(check(
        "fibjac/recurrence-closure",
        first.is_none(),
        first.unwrap_or(format!("{} steps of both recurrences", count)),
    ));

    let cap = max_n.min(40);
    let (count, first) = sweep(1..=cap, |n| {
        let mut fc: Vec<BigInt> = fibonacci(n)
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
        (fc != jc).then(|| format!("n={}: coefficient multisets differ", n))
    });
    out.push(check(
        "fibjac/coefficient-multisets",
        first.is_none(),
        first.unwrap_or(format!("{} values of n", count)),
    ));

    let cap = max_n.clamp(2, 64);
    let (count, first) = sweep(2..=cap, |n| {
        let f = fibonacci(n);
        for (j, w) in fibonacci_roots(n, prec).iter().enumerate() {
            let res = f.eval_complex(w).abs().to_f64();
            if res > 1e-10 {
                return Some(format!("n={} j={}: residual {:e}", n, j + 1, res));
            }
        }
        None
    });
    out.push(check(
        "fibjac/root-residuals",
        first.is_none(),
        first.unwrap_or(format!("{} values of n, all residuals <= 1e-10", count)),
    ));

    let cap = max_n.min(40);
    let (count, first) = sweep(1..=cap, |n| {
        let r = verify_relation(n);
        if !r.holds_with_n_minus_1 {
            return Some(format!("n={}: identity fails with exponent n-1", n));
        }
        if r.holds_with_n {
            return Some(format!("n={}: exponent n unexpectedly holds too", n));
        }
        None
    });
    out.push(check(
        "fibjac/cross-family-identity",
        first.is_none(),
        first.unwrap_or(format!(
            "{} values of n: F_n(z) = z^(n-1) J_n(1/z^2) exactly; exponent n never holds (degree n vs n-1)",
            count
        )),
    ));

    let cap = max_n.min(40);
    let (count, first) = sweep(1..=cap, |n| {
        let closed = crate::closedform2::z_roots_closed(n, prec);
        let ws = fibonacci_roots(n + 2, prec);
        for (idx, root) in closed.iter().enumerate() {
            let z = ws[idx].mul(&ws[idx]).recip();
            let d = z.dist(&root.z_value).to_f64();
            if d > 1e-40 {
                return Some(format!("n={} j={}: transport error {:e}", n, idx + 1, d));
            }
        }
        None
    });
    out.push(check(
        "fibjac/roots-transport-to-cosine-form",
        first.is_none(),
        first.unwrap_or(format!("{} values of n", count)),
    ));

    out
}

pub fn suite_all(max_n: u32) -> Vec<Check> {
    let mut out = suite_oracle(max_n);
    out.extend(suite_closedform(max_n));
    out.extend(suite_bkw(max_n));
    out.extend(suite_fibjac(max_n));
    out
}
