//! Scatter-figure data and rendering. CSV and SVG are produced from the
//! same computed point list, and the SVG embeds coordinates derived from
//! the already-rounded CSV values, so regenerating either format is
//! byte-stable.

use std::fmt::Write as _;

use consecrel::closedform2;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Which {
    /// All closed-form p-roots for n = 2..=128 (x = root, y = n).
    Fig2,
    /// Per-n largest |p|-root for n = 2..=128 (x = n, y = root).
    Fig3a,
}

/// One plotted point; `value` is the rounded 12-significant-digit string
/// that the CSV prints verbatim.
#[derive(Clone, Debug)]
pub struct FigPoint {
    pub n: u32,
    pub j: u32,
    pub value: String,
}

pub fn points(which: Which, precision_bits: u32) -> Vec<FigPoint> {
    let mut out = Vec::new();
    for n in 2..=128u32 {
        let roots = closedform2::p_roots_closed(n, precision_bits);
        match which {
            Which::Fig2 => {
                for cr in &roots {
                    let p = cr.p_value.as_ref().expect("p-roots carry values");
                    out.push(FigPoint {
                        n,
                        j: cr.j,
                        value: p.re.to_decimal_sig(12),
                    });
                }
            }
            Which::Fig3a => {
                let audit = closedform2::largest_root_remark(n, precision_bits);
                let best = roots
                    .iter()
                    .find(|cr| cr.j == audit.j_empirical)
                    .expect("audited index is a live root");
                let p = best.p_value.as_ref().expect("p-roots carry values");
                out.push(FigPoint {
                    n,
                    j: best.j,
                    value: p.re.to_decimal_sig(12),
                });
            }
        }
    }
    out
}

pub fn csv(which: Which, pts: &[FigPoint]) -> String {
    let mut out = String::new();
    for p in pts {
        match which {
            Which::Fig2 => {
                let _ = writeln!(out, "{},{},{}", p.n, p.j, p.value);
            }
            Which::Fig3a => {
                let _ = writeln!(out, "{},{}", p.n, p.value);
            }
        }
    }
    out
}

const W: f64 = 800.0;
const H: f64 = 600.0;
const ML: f64 = 70.0;
const MR: f64 = 25.0;
const MT: f64 = 40.0;
const MB: f64 = 55.0;

pub fn svg(which: Which, pts: &[FigPoint]) -> String {
    let (title, xlabel, ylabel) = match which {
        Which::Fig2 => ("p-roots of Rel(2,n;p), n = 2..128", "root", "n"),
        Which::Fig3a => ("Largest |p|-root of Rel(2,n;p) by n", "n", "root"),
    };
    let xy: Vec<(f64, f64)> = pts
        .iter()
        .map(|p| {
            let v: f64 = p.value.parse().expect("rounded decimal parses");
            match which {
                Which::Fig2 => (v, f64::from(p.n)),
                Which::Fig3a => (f64::from(p.n), v),
            }
        })
        .collect();
    let (x_lo, x_hi) = padded_range(xy.iter().map(|q| q.0));
    let (y_lo, y_hi) = padded_range(xy.iter().map(|q| q.1));
    let px = |v: f64| ML + (v - x_lo) / (x_hi - x_lo) * (W - ML - MR);
    let py = |v: f64| H - MB - (v - y_lo) / (y_hi - y_lo) * (H - MT - MB);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" width=\"{W}\" height=\"{H}\">"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{:.0}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">{}</text>",
        (ML + W - MR) / 2.0,
        title
    );

    let _ = writeln!(s, "<g stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">");
    let _ = writeln!(
        s,
        "<line x1=\"{ML:.2}\" y1=\"{0:.2}\" x2=\"{1:.2}\" y2=\"{0:.2}\"/>",
        H - MB,
        W - MR
    );
    let _ = writeln!(
        s,
        "<line x1=\"{ML:.2}\" y1=\"{MT:.2}\" x2=\"{ML:.2}\" y2=\"{:.2}\"/>",
        H - MB
    );
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        "<g stroke=\"#333333\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    for t in ticks(x_lo, x_hi, 8) {
        let x = px(t);
        let _ = writeln!(
            s,
            "<line x1=\"{x:.2}\" y1=\"{0:.2}\" x2=\"{x:.2}\" y2=\"{1:.2}\"/>",
            H - MB,
            H - MB + 5.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\" stroke=\"none\">{}</text>",
            H - MB + 19.0,
            tick_label(t)
        );
    }
    for t in ticks(y_lo, y_hi, 8) {
        let y = py(t);
        let _ = writeln!(
            s,
            "<line x1=\"{0:.2}\" y1=\"{y:.2}\" x2=\"{1:.2}\" y2=\"{y:.2}\"/>",
            ML - 5.0,
            ML
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" stroke=\"none\">{}</text>",
            ML - 9.0,
            y + 4.0,
            tick_label(t)
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        "<text x=\"{:.0}\" y=\"{:.0}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">{}</text>",
        (ML + W - MR) / 2.0,
        H - 12.0,
        xlabel
    );
    let _ = writeln!(
        s,
        "<text x=\"18\" y=\"{:.0}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 {:.0})\">{}</text>",
        (MT + H - MB) / 2.0,
        (MT + H - MB) / 2.0,
        ylabel
    );

    let _ = writeln!(s, "<g fill=\"#1f77b4\" fill-opacity=\"0.6\">");
    for (x, y) in &xy {
        let _ = writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\"/>", px(*x), py(*y));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let pad = if hi > lo { 0.04 * (hi - lo) } else { 1.0 };
    (lo - pad, hi + pad)
}

/// Tick positions at a 1/2/5 step covering [lo, hi] with roughly `target`
/// divisions.
fn ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let raw = (hi - lo) / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .expect("ladder ends above raw");
    let first = (lo / step).ceil();
    let mut out = Vec::new();
    let mut i = 0.0;
    loop {
        let v = (first + i) * step;
        if v > hi + step * 1e-9 {
            break;
        }
        out.push(v);
        i += 1.0;
    }
    out
}

/// Formats a tick value, absorbing float step error (e.g. 3 * 0.2).
fn tick_label(v: f64) -> String {
    let r = (v * 1e9).round() / 1e9;
    if r == 0.0 {
        return "0".into();
    }
    format!("{r}")
}
