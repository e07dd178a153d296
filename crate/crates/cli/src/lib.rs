//! Output plumbing for the `consecrel` binary: exact-coefficient
//! serialization, root/scan CSV emission, and verify-report rendering.
//!
//! Every float column follows one rule: 12 significant digits, rounded
//! half-to-even, `.` decimal separator, trailing zeros trimmed. Exact
//! integers print as plain decimal strings.

pub mod figure;

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use consecrel::bkw;
use consecrel::closedform2;
use consecrel::consec::{build_p_of_z, build_rel_recurrence, SystemSpec};
use consecrel::rootfind::{self, scaled_residual};
use consecrel::verify::Check;
use consecrel::{ComplexApprox, IntPolynomial, Real, Var};

pub fn csv_float(x: &Real) -> String {
    x.to_decimal_sig(12)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Domain {
    P,
    Z,
}

/// JSON form of a polynomial: `{"k":..,"n":..,"var":"p","coeffs":["1",..]}`
/// with dense coefficients, constant term first, as decimal strings.
#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub k: u32,
    pub n: u32,
    pub var: String,
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn new(k: u32, n: u32, f: &IntPolynomial) -> Self {
        PolyJson {
            k,
            n,
            var: f.var().to_string(),
            coeffs: f.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    /// Rebuilds the polynomial; inverse of [`PolyJson::new`] up to
    /// normalization.
    pub fn to_polynomial(&self) -> Result<IntPolynomial> {
        let var = match self.var.as_str() {
            "p" => Var::P,
            "z" => Var::Z,
            other => bail!("unknown variable {other:?}"),
        };
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .with_context(|| format!("bad coefficient {s:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(coeffs, var))
    }
}

pub fn poly_text(f: &IntPolynomial) -> String {
    format!("{f}\n")
}

pub fn poly_json(k: u32, n: u32, f: &IntPolynomial) -> String {
    let mut s = serde_json::to_string(&PolyJson::new(k, n, f)).expect("plain data serializes");
    s.push('\n');
    s
}

/// One `power,coefficient` row per dense coefficient.
pub fn poly_csv(f: &IntPolynomial) -> String {
    let mut out = String::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{i},{c}");
    }
    out
}

/// Numeric roots as CSV rows `n,index,re,im,residual` sorted by real part
/// then imaginary part; indices are 1-based positions in that order.
///
/// p-domain roots come from the z-domain solve mapped through
/// p = 1/(1+z), with residuals recomputed against the p-polynomial. A
/// constant polynomial yields no rows.
pub fn roots_csv_numeric(k: u32, n: u32, domain: Domain, precision_bits: u32) -> Result<String> {
    let spec = SystemSpec::new(k, n)?;
    if build_p_of_z(spec).degree().unwrap_or(0) == 0 {
        return Ok(String::new());
    }
    let zroots = rootfind::find_z_roots(spec, precision_bits)?;
    let mut rows: Vec<(ComplexApprox, Real)> = match domain {
        Domain::Z => zroots
            .set
            .roots
            .iter()
            .cloned()
            .zip(zroots.set.residuals.iter().cloned())
            .collect(),
        Domain::P => {
            let rel = build_rel_recurrence(spec);
            let mapped = rootfind::map_z_roots_to_p(&zroots.set);
            mapped
                .set
                .roots
                .iter()
                .map(|r| (r.clone(), scaled_residual(&rel, r)))
                .collect()
        }
    };
    rows.sort_by(|a, b| a.0.cmp_re_im(&b.0));
    let indexed: Vec<(u32, ComplexApprox, Real)> = rows
        .into_iter()
        .enumerate()
        .map(|(i, (v, r))| (i as u32 + 1, v, r))
        .collect();
    Ok(render_root_rows(n, &indexed))
}

/// Closed-form roots of the k = 2 family as CSV rows `n,j,re,im,residual`
/// sorted by real part; rows keep the analytic index j rather than the
/// sort position. Residuals are scaled backward errors against the exact
/// polynomial for the requested domain.
pub fn roots_csv_closed(n: u32, domain: Domain, precision_bits: u32) -> Result<String> {
    let spec = SystemSpec::new(2, n)?;
    if n == 0 {
        return Ok(String::new());
    }
    let target = match domain {
        Domain::Z => build_p_of_z(spec),
        Domain::P => build_rel_recurrence(spec),
    };
    let mut rows = Vec::new();
    for cr in closedform2::z_roots_closed(n, precision_bits) {
        let value = match domain {
            Domain::Z => Some(cr.z_value),
            Domain::P => cr.p_value,
        };
        if let Some(v) = value {
            let residual = scaled_residual(&target, &v);
            rows.push((cr.j, v, residual));
        }
    }
    rows.sort_by(|a, b| a.1.cmp_re_im(&b.1));
    Ok(render_root_rows(n, &rows))
}

fn render_root_rows(n: u32, rows: &[(u32, ComplexApprox, Real)]) -> String {
    let mut out = String::new();
    for (j, value, residual) in rows {
        let _ = writeln!(
            out,
            "{n},{j},{},{},{}",
            csv_float(&value.re),
            csv_float(&value.im),
            csv_float(residual),
        );
    }
    out
}

/// Running-maximum trace as CSV rows
/// `n,z_re,z_im,p_re,p_im,p_abs,running_max`, one per scanned index. The
/// scan covers every n in [k, n_max] whose polynomial does not vanish at
/// z = -1; the z columns hold the root closest to -1 and the p columns its
/// image under p = 1/(1+z).
pub fn scan_csv(k: u32, n_max: u32, precision_bits: u32) -> Result<String> {
    let records = bkw::unboundedness_scan(k, n_max, precision_bits)?;
    let mut out = String::new();
    for r in &records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n,
            csv_float(&r.nearest_z.re),
            csv_float(&r.nearest_z.im),
            csv_float(&r.mapped_p.re),
            csv_float(&r.mapped_p.im),
            csv_float(&r.p_abs),
            csv_float(&r.running_max),
        );
    }
    Ok(out)
}

/// Agreement table for the largest-root index heuristic: CSV rows
/// `n,j_remark,j_empirical,agree` for n = 2..=max_n.
pub fn remark_audit_csv(max_n: u32, precision_bits: u32) -> String {
    let mut out = String::new();
    for n in 2..=max_n.max(1) {
        let a = closedform2::largest_root_remark(n, precision_bits);
        let _ = writeln!(out, "{},{},{},{}", a.n, a.j_remark, a.j_empirical, a.agree);
    }
    out
}

pub fn render_checks_human(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let tag = if c.passed { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{tag}  {:<44}  {}", c.name, c.detail);
    }
    let npass = checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{} checks, {} passed", checks.len(), npass);
    out
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite: &'a str,
    max_n: u32,
    passed: bool,
    checks: Vec<CheckJson<'a>>,
}

pub fn render_checks_json(suite: &str, max_n: u32, checks: &[Check]) -> String {
    let report = ReportJson {
        suite,
        max_n,
        passed: checks.iter().all(|c| c.passed),
        checks: checks
            .iter()
            .map(|c| CheckJson {
                name: &c.name,
                passed: c.passed,
                detail: &c.detail,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&report).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_json_matches_contract_shape() {
        let spec = SystemSpec::new(3, 2).unwrap();
        let f = build_rel_recurrence(spec);
        assert_eq!(
            poly_json(3, 2, &f),
            "{\"k\":3,\"n\":2,\"var\":\"p\",\"coeffs\":[\"1\"]}\n"
        );
    }

    #[test]
    fn poly_json_round_trips() {
        for (k, n) in [(2u32, 9u32), (3, 14), (5, 4)] {
            let spec = SystemSpec::new(k, n).unwrap();
            let f = build_p_of_z(spec);
            let j = PolyJson::new(k, n, &f);
            let text = serde_json::to_string(&j).unwrap();
            let back: PolyJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back, j);
            assert_eq!(back.to_polynomial().unwrap(), f);
        }
    }

    #[test]
    fn poly_csv_rows_are_dense() {
        let spec = SystemSpec::new(2, 5).unwrap();
        let f = build_p_of_z(spec);
        assert_eq!(poly_csv(&f), "0,1\n1,5\n2,6\n3,1\n");
    }

    #[test]
    fn numeric_z_roots_of_smallest_quadratic_case() {
        let out = roots_csv_numeric(2, 2, Domain::Z, 256).unwrap();
        assert_eq!(out, "2,1,-0.5,0.0,0.0\n");
    }

    #[test]
    fn closed_p_roots_print_golden_pair() {
        let out = roots_csv_closed(3, Domain::P, 256).unwrap();
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].starts_with("3,2,-0.61803398875,"));
        assert!(rows[1].starts_with("3,1,1.61803398875,"));
    }

    #[test]
    fn constant_polynomials_have_no_root_rows() {
        assert_eq!(roots_csv_numeric(4, 3, Domain::P, 256).unwrap(), "");
        assert_eq!(roots_csv_closed(0, Domain::Z, 256).unwrap(), "");
        // n = 1 has a z-root at -1 but no finite p-image.
        assert_eq!(roots_csv_closed(1, Domain::P, 256).unwrap(), "");
        assert_eq!(roots_csv_closed(1, Domain::Z, 256).unwrap(), "1,1,-1.0,0.0,0.0\n");
    }

    #[test]
    fn audit_rows_cover_the_requested_range() {
        let out = remark_audit_csv(6, 192);
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0], "2,1,1,true");
        assert_eq!(rows[3], "5,2,2,true");
    }

    #[test]
    fn check_rendering_reports_failures() {
        let checks = vec![
            Check {
                name: "a/b".into(),
                passed: true,
                detail: "ok".into(),
            },
            Check {
                name: "a/c".into(),
                passed: false,
                detail: "counterexample at n = 7".into(),
            },
        ];
        let human = render_checks_human(&checks);
        assert!(human.contains("FAIL"));
        assert!(human.contains("2 checks, 1 passed"));
        let json = render_checks_json("demo", 12, &checks);
        assert!(json.contains("\"passed\": false"));
        assert!(json.contains("counterexample at n = 7"));
    }
}
