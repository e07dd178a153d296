//! Interactive browser demo: thin wasm-bindgen wrappers over consecrel.
//!
//! Every exported function returns a JSON string (or throws a JS error),
//! keeping the wasm ABI to plain scalars and strings. The underlying
//! `render_*` functions are ordinary Rust and are tested on the host.

use std::cmp::Ordering;
use std::fmt::Write as _;

use wasm_bindgen::prelude::*;

use consecrel::consec::{build_p_of_z, build_rel_recurrence, p_at_minus_one, SystemSpec};
use consecrel::polycore::normalize_precision;
use consecrel::rootfind::{find_z_roots, map_z_roots_to_p, scaled_residual};
use consecrel::{ComplexApprox, Real};

fn err_s(e: consecrel::Error) -> String {
    e.to_string()
}

fn sig12(x: &Real) -> String {
    x.to_decimal_sig(12)
}

fn render_poly(k: u32, n: u32, var: &str) -> Result<String, String> {
    let spec = SystemSpec::new(k, n).map_err(err_s)?;
    let poly = match var {
        "p" => build_rel_recurrence(spec),
        "z" => build_p_of_z(spec),
        other => return Err(format!("unknown variable {other:?} (use \"p\" or \"z\")")),
    };
    Ok(format!(
        "{{\"text\":\"{poly}\",\"degree\":{}}}",
        poly.degree().unwrap_or(0)
    ))
}

fn render_roots(k: u32, n: u32, domain: &str, precision: u32) -> Result<String, String> {
    let spec = SystemSpec::new(k, n).map_err(err_s)?;
    if build_p_of_z(spec).degree().unwrap_or(0) == 0 {
        return Ok("[]".into());
    }
    let zroots = find_z_roots(spec, precision).map_err(err_s)?;
    let pairs: Vec<(ComplexApprox, Real)> = match domain {
        "z" => zroots
            .set
            .roots
            .iter()
            .cloned()
            .zip(zroots.set.residuals.iter().cloned())
            .collect(),
        "p" => {
            let rel = build_rel_recurrence(spec);
            map_z_roots_to_p(&zroots.set)
                .set
                .roots
                .iter()
                .map(|r| (r.clone(), scaled_residual(&rel, r)))
                .collect()
        }
        other => return Err(format!("unknown domain {other:?} (use \"p\" or \"z\")")),
    };
    let mut out = String::from("[");
    for (i, (value, residual)) in pairs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(
            out,
            "{{\"re\":\"{}\",\"im\":\"{}\",\"residual\":\"{}\"}}",
            sig12(&value.re),
            sig12(&value.im),
            sig12(residual),
        );
    }
    out.push(']');
    Ok(out)
}

// Sequential twin of the library's growth scan: the browser build has no
// worker pool, so each n is solved in turn.
fn render_scan(k: u32, n_max: u32, precision: u32) -> Result<String, String> {
    let prec = normalize_precision(precision);
    let minus_one = ComplexApprox::from_f64(-1.0, 0.0, prec);
    let one = ComplexApprox::one(prec);
    let mut out = String::from("[");
    let mut running = Real::zero(prec);
    let mut first = true;
    for n in k..=n_max {
        let spec = SystemSpec::new(k, n).map_err(err_s)?;
        if p_at_minus_one(spec) == 0.into() {
            continue;
        }
        let zroots = find_z_roots(spec, precision).map_err(err_s)?;
        let p_abs = zroots
            .set
            .roots
            .iter()
            .map(|z| (z.dist(&minus_one), one.add(z).recip().abs()))
            .min_by(|a, b| match a.0.cmp(&b.0) {
                Ordering::Equal => b.1.cmp(&a.1),
                other => other,
            })
            .expect("P_n with n >= k has roots")
            .1;
        running = running.max(&p_abs);
        if !first {
            out.push(',');
        }
        first = false;
        let _ = write!(
            out,
            "{{\"n\":{n},\"p_abs\":\"{}\",\"running_max\":\"{}\"}}",
            sig12(&p_abs),
            sig12(&running),
        );
    }
    out.push(']');
    Ok(out)
}

/// Exact polynomial text for Rel(k,n;p) (`var = "p"`) or its z-domain
/// companion (`var = "z"`), as `{"text": ..., "degree": ...}`.
#[wasm_bindgen]
pub fn poly_text(k: u32, n: u32, var: &str) -> Result<String, JsValue> {
    render_poly(k, n, var).map_err(|e| JsValue::from_str(&e))
}

/// Roots in the requested domain as a JSON array of
/// `{"re", "im", "residual"}` records (12-significant-digit strings).
#[wasm_bindgen]
pub fn roots_json(k: u32, n: u32, domain: &str, precision: u32) -> Result<String, JsValue> {
    render_roots(k, n, domain, precision).map_err(|e| JsValue::from_str(&e))
}

/// Growth of the running maximum |p|-root as a JSON array of
/// `{"n", "p_abs", "running_max"}` records.
#[wasm_bindgen]
pub fn scan_json(k: u32, n_max: u32, precision: u32) -> Result<String, JsValue> {
    render_scan(k, n_max, precision).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_payloads_render() {
        assert_eq!(
            render_poly(2, 5, "z").unwrap(),
            "{\"text\":\"1 + 5z + 6z^2 + z^3\",\"degree\":3}"
        );
        assert!(render_poly(2, 5, "q").is_err());
    }

    #[test]
    fn root_payloads_are_valid_json_records() {
        let out = render_roots(2, 2, "z", 128).unwrap();
        assert_eq!(out, "[{\"re\":\"-0.5\",\"im\":\"0.0\",\"residual\":\"0.0\"}]");
        assert_eq!(render_roots(3, 2, "p", 128).unwrap(), "[]");
    }

    #[test]
    fn scan_payload_matches_the_library_scan() {
        let ours = render_scan(2, 12, 192).unwrap();
        let lib = consecrel::bkw::unboundedness_scan(2, 12, 192).unwrap();
        let mut expected = String::from("[");
        for (i, r) in lib.iter().enumerate() {
            if i > 0 {
                expected.push(',');
            }
            expected += &format!(
                "{{\"n\":{},\"p_abs\":\"{}\",\"running_max\":\"{}\"}}",
                r.n,
                r.p_abs.to_decimal_sig(12),
                r.running_max.to_decimal_sig(12),
            );
        }
        expected.push(']');
        assert_eq!(ours, expected);
    }
}
