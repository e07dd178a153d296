//! Spectral machinery for general k: the characteristic equation, the
//! alpha-decomposition `P_n(z) = sum_j alpha_j(z) lambda_j(z)^n`, the
//! limit-of-zeros classification, and the unboundedness scan that tracks
//! roots approaching `z = -1` (equivalently, p-roots running off to
//! infinity).

use std::cmp::Ordering;

use num_traits::Zero;
use rayon::prelude::*;

use crate::consec::{p_at_minus_one, SystemSpec};
use crate::error::{Error, Result};
use crate::polycore::{normalize_precision, ComplexApprox, Real};
use crate::rootfind::{aberth, find_z_roots, horner_pair, scaled_residual_c};

/// Default modulus-tie tolerance for [`classify_bkw`] at 256 bits.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-9;

/// Characteristic roots and decomposition coefficients at one point z.
/// `lambdas` are ordered by nonincreasing modulus, ties broken by
/// argument in [0, 2pi); `alphas[j]` pairs with `lambdas[j]`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub z: ComplexApprox,
    pub lambdas: Vec<ComplexApprox>,
    pub alphas: Vec<ComplexApprox>,
    pub k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BkwCase {
    /// Strict dominant modulus but the leading coefficient vanishes.
    DominantWithAlphaZero,
    /// Two or more characteristic roots tie for the largest modulus.
    ModulusTie,
    NotLimit,
}

/// Limit-of-zeros classification of one spectrum.
#[derive(Clone, Copy, Debug)]
pub struct BkwClassification {
    pub case: BkwCase,
    /// Size of the leading modulus tie group (1 when strict).
    pub tie_count: u32,
    /// Modulus gap between the tie group and the next root; 0 when the
    /// group is the whole spectrum.
    pub gap: f64,
}

/// Outcome of checking the characteristic roots at z = -1 against the
/// (k+1)-th roots of (-1)^(k+1) with -1 removed.
#[derive(Clone, Copy, Debug)]
pub struct ZMinusOneReport {
    pub k: u32,
    pub holds: bool,
    pub max_match_error: f64,
    pub max_modulus_error: f64,
    pub min_pairwise_gap: f64,
}

/// One row of the unboundedness scan.
#[derive(Clone, Debug)]
pub struct ScanRecord {
    pub n: u32,
    /// Root of P_n nearest to z = -1.
    pub nearest_z: ComplexApprox,
    /// Its image p = 1/(1+z).
    pub mapped_p: ComplexApprox,
    pub p_abs: Real,
    /// Maximum of `p_abs` over this and all earlier records.
    pub running_max: Real,
}

/// Monic coefficient vector (lowest power first) of
/// `lambda^k - sum_{j=1..k} z^(j-1) lambda^(k-j)`.
pub fn characteristic_poly(k: u32, z: &ComplexApprox) -> Vec<ComplexApprox> {
    assert!(k >= 2, "characteristic equation needs k >= 2");
    let prec = z.prec();
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    // index i < k holds -z^(k-1-i)
    for i in 0..k {
        coeffs.push(z.powu((k - 1 - i) as u64).neg());
    }
    coeffs.push(ComplexApprox::one(prec));
    coeffs
}

/// Orders spectrum roots by nonincreasing modulus; runs whose moduli
/// agree to within 2^(-prec/2) relative are sorted by argument in
/// [0, 2pi) so that numerically tied groups come out deterministically.
fn sort_spectral(roots: &mut [ComplexApprox], prec: usize) {
    roots.sort_by(|a, b| match b.abs().cmp(&a.abs()) {
        Ordering::Equal => a.arg_two_pi().cmp(&b.arg_two_pi()),
        other => other,
    });
    let rel = Real::pow2(-(prec as i64) / 2, prec);
    let mut start = 0;
    while start < roots.len() {
        let mut end = start + 1;
        while end < roots.len() {
            let a = roots[end - 1].abs();
            let b = roots[end].abs();
            let near = a.sub(&b).abs().cmp(&rel.mul(&a.max(&Real::one(prec))))
                != Ordering::Greater;
            if near {
                end += 1;
            } else {
                break;
            }
        }
        roots[start..end].sort_by(|a, b| a.arg_two_pi().cmp(&b.arg_two_pi()));
        start = end;
    }
}

fn solve_dense(
    mut a: Vec<Vec<ComplexApprox>>,
    mut b: Vec<ComplexApprox>,
) -> Result<Vec<ComplexApprox>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()))
            .expect("nonempty range");
        if a[pivot][col].is_zero() {
            return Err(Error::SingularSystem);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let pivot_row = a[col].clone();
        for row in (col + 1)..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].div(&pivot_row[col]);
            for (c, slot) in a[row].iter_mut().enumerate().skip(col) {
                let sub = factor.mul(&pivot_row[c]);
                *slot = slot.sub(&sub);
            }
            let sub = factor.mul(&b[col]);
            b[row] = b[row].sub(&sub);
        }
    }
    let prec = b[0].prec();
    let mut x = vec![ComplexApprox::zero(prec); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for c in (row + 1)..n {
            let sub = a[row][c].mul(&x[c]);
            acc = acc.sub(&sub);
        }
        x[row] = acc.div(&a[row][row]);
    }
    Ok(x)
}

/// Characteristic roots at z, polished and certified, together with the
/// decomposition coefficients solved from the power-basis system against
/// the initial values `P_i(z) = (1+z)^i`, i = 0..k-1. Errors on confluent
/// spectra (coincident roots, e.g. k=2 at z = -1/4), where the power
/// basis degenerates and no alpha exists.
pub fn spectrum_at(k: u32, z: &ComplexApprox, precision_bits: u32) -> Result<Spectrum> {
    if k < 2 {
        return Err(Error::KTooSmall { k });
    }
    let prec = normalize_precision(precision_bits);
    let wp = prec * 2;
    let zp = z.with_prec(prec);
    let zw = zp.with_prec(wp);

    let (raw, _) = aberth(&characteristic_poly(k, &zp), prec)?;
    let coeffs_w = characteristic_poly(k, &zw);
    let threshold = Real::pow2(-(prec as i64) / 3, prec);
    let mut lambdas = Vec::with_capacity(k as usize);
    for (index, r) in raw.into_iter().enumerate() {
        let mut x = r.with_prec(wp);
        for _ in 0..3 {
            let (fx, fpx) = horner_pair(&coeffs_w, &x);
            if fx.is_zero() || fpx.is_zero() {
                break;
            }
            x = x.sub(&fx.div(&fpx));
        }
        let residual = scaled_residual_c(&coeffs_w, &x, prec);
        if residual.cmp(&threshold) == Ordering::Greater {
            return Err(Error::ResidualCertification {
                index,
                residual: residual.to_f64(),
                threshold: threshold.to_f64(),
            });
        }
        lambdas.push(x);
    }

    let confluent = Real::pow2(-(prec as i64) / 8, prec);
    for i in 0..lambdas.len() {
        for j in (i + 1)..lambdas.len() {
            if lambdas[i].dist(&lambdas[j]).cmp(&confluent) != Ordering::Greater {
                return Err(Error::ConfluentSpectrum {
                    z_re: zp.re.to_f64(),
                    z_im: zp.im.to_f64(),
                });
            }
        }
    }

    sort_spectral(&mut lambdas, wp);

    let one_plus_z = ComplexApprox::one(wp).add(&zw);
    let matrix: Vec<Vec<ComplexApprox>> = (0..k as u64)
        .map(|i| lambdas.iter().map(|l| l.powu(i)).collect())
        .collect();
    let rhs: Vec<ComplexApprox> = (0..k as u64).map(|i| one_plus_z.powu(i)).collect();
    let alphas = solve_dense(matrix, rhs)?
        .into_iter()
        .map(|a| a.with_prec(prec))
        .collect();

    Ok(Spectrum {
        z: zp,
        lambdas: lambdas.into_iter().map(|l| l.with_prec(prec)).collect(),
        alphas,
        k,
    })
}

/// `sum_j alpha_j lambda_j^n` — the decomposition's value for P_n(z).
pub fn reconstruct_p(s: &Spectrum, n: u32) -> ComplexApprox {
    let prec = s.z.prec();
    let wp = prec * 2;
    let mut acc = ComplexApprox::zero(wp);
    for (a, l) in s.alphas.iter().zip(&s.lambdas) {
        let term = a.with_prec(wp).mul(&l.with_prec(wp).powu(n as u64));
        acc = acc.add(&term);
    }
    acc.with_prec(prec)
}

/// Applies the limit-of-zeros case analysis: a modulus tie among the top
/// `l >= 2` roots, or a strict dominant root whose alpha vanishes, marks
/// z as a limit of roots; anything else does not.
pub fn classify_bkw(s: &Spectrum, tolerance: f64) -> BkwClassification {
    let prec = s.z.prec();
    let tol = Real::from_f64(tolerance, prec);
    let moduli: Vec<Real> = s.lambdas.iter().map(|l| l.abs()).collect();
    let scale = moduli[0].max(&Real::one(prec));
    let limit = tol.mul(&scale);
    let mut tie = 1usize;
    while tie < moduli.len()
        && moduli[0].sub(&moduli[tie]).cmp(&limit) != Ordering::Greater
    {
        tie += 1;
    }
    let gap = if tie < moduli.len() {
        moduli[tie - 1].sub(&moduli[tie]).to_f64()
    } else {
        0.0
    };
    let case = if tie >= 2 {
        BkwCase::ModulusTie
    } else if s.alphas[0].abs().cmp(&limit) != Ordering::Greater {
        BkwCase::DominantWithAlphaZero
    } else {
        BkwCase::NotLimit
    };
    BkwClassification {
        case,
        tie_count: tie as u32,
        gap,
    }
}

/// Checks that the characteristic roots at z = -1 are exactly the
/// (k+1)-th roots of (-1)^(k+1) with -1 removed: k distinct values, all
/// on the unit circle, matching the explicit root set within 1e-12.
pub fn verify_z_minus_one_structure(k: u32, precision_bits: u32) -> Result<ZMinusOneReport> {
    let prec = normalize_precision(precision_bits);
    let minus_one = ComplexApprox::from_f64(-1.0, 0.0, prec);
    let (mut roots, _) = aberth(&characteristic_poly(k, &minus_one), prec)?;
    sort_spectral(&mut roots, prec);

    // (k+1)-th roots of (-1)^(k+1): e^(2 pi i j/(k+1)) when k is odd,
    // e^(i pi (2j+1)/(k+1)) when k is even; -1 is always among them.
    let m = k as i64 + 1;
    let pi = Real::pi(prec);
    let mut targets = Vec::with_capacity(k as usize);
    for j in 0..=k as i64 {
        let theta = if k % 2 == 1 {
            pi.mul(&Real::from_i64(2 * j, prec))
                .div(&Real::from_i64(m, prec))
        } else {
            pi.mul(&Real::from_i64(2 * j + 1, prec))
                .div(&Real::from_i64(m, prec))
        };
        let w = ComplexApprox::unit(&theta);
        if w.dist(&minus_one).to_f64() > 1e-9 {
            targets.push(w);
        }
    }
    assert_eq!(targets.len(), k as usize);

    let mut max_match = 0.0f64;
    for r in &roots {
        let nearest = targets
            .iter()
            .map(|t| r.dist(t))
            .min_by(|a, b| a.cmp(b))
            .expect("k >= 2 targets")
            .to_f64();
        max_match = max_match.max(nearest);
    }
    let max_modulus_error = roots
        .iter()
        .map(|r| (r.abs().to_f64() - 1.0).abs())
        .fold(0.0f64, f64::max);
    let mut min_gap = f64::INFINITY;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            min_gap = min_gap.min(roots[i].dist(&roots[j]).to_f64());
        }
    }
    Ok(ZMinusOneReport {
        k,
        holds: max_match <= 1e-12 && max_modulus_error <= 1e-12 && min_gap > 1e-12,
        max_match_error: max_match,
        max_modulus_error,
        min_pairwise_gap: min_gap,
    })
}

/// For every n in [k, n_max] where the exact integer value P_n(-1) is
/// nonzero, locates the root of P_n nearest to z = -1 and its p-image.
/// Records come back ordered by n with the running maximum of |p|
/// attached; the growth of that column is the unboundedness evidence.
/// Ties in root distance (not expected) resolve toward larger |p|.
pub fn unboundedness_scan(k: u32, n_max: u32, precision_bits: u32) -> Result<Vec<ScanRecord>> {
    let prec = normalize_precision(precision_bits);
    let minus_one = ComplexApprox::from_f64(-1.0, 0.0, prec);
    let ns: Vec<u32> = (k.max(1)..=n_max)
        .filter(|&n| {
            let spec = SystemSpec::new(k, n).expect("scan k >= 2");
            !p_at_minus_one(spec).is_zero()
        })
        .collect();

    let mut rows = ns
        .into_par_iter()
        .map(|n| {
            let spec = SystemSpec::new(k, n).expect("scan k >= 2");
            let zset = find_z_roots(spec, precision_bits)
                .map_err(|e| Error::ScanFailure { n, source: e.into() })?;
            let one = ComplexApprox::one(prec);
            let best = zset
                .set
                .roots
                .iter()
                .map(|z| {
                    let p = one.add(z).recip();
                    (z.dist(&minus_one), p.abs(), z.clone(), p)
                })
                .min_by(|a, b| match a.0.cmp(&b.0) {
                    Ordering::Equal => b.1.cmp(&a.1),
                    other => other,
                })
                .expect("P_n with n >= k has roots");
            Ok(ScanRecord {
                n,
                nearest_z: best.2,
                mapped_p: best.3,
                p_abs: best.1,
                running_max: Real::zero(prec),
            })
        })
        .collect::<Result<Vec<ScanRecord>>>()?;

    rows.sort_by_key(|r| r.n);
    let mut running = Real::zero(prec);
    for row in &mut rows {
        running = running.max(&row.p_abs);
        row.running_max = running.clone();
    }
    Ok(rows)
}
