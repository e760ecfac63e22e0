//! Batch classification over a rectangle of the λ-plane, with CSV export.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify, Classification, JuliaKind, Subcase};
use crate::error::{Error, Result};
use crate::escape::OrbitOutcome;
use crate::map::MapParams;

pub const CSV_HEADER: &str = "re,im,kind,subcase,v0_outcome,v0_steps,v1_outcome,v1_steps,trap_active";

/// Axis-aligned rectangle `[re_min, re_max] × [im_min, im_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub re_min: f64,
    pub im_min: f64,
    pub re_max: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, im_min: f64, re_max: f64, im_max: f64) -> Result<Self> {
        let w = Window {
            re_min,
            im_min,
            re_max,
            im_max,
        };
        let finite = [re_min, im_min, re_max, im_max].iter().all(|v| v.is_finite());
        if !finite || re_max <= re_min || im_max <= im_min {
            return Err(Error::InvalidWindow(format!(
                "{re_min},{im_min},{re_max},{im_max}"
            )));
        }
        Ok(w)
    }

    /// Parses `x0,y0,x1,y1`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidWindow(s.to_string()))?;
        match parts.as_slice() {
            [a, b, c, d] => Window::new(*a, *b, *c, *d),
            _ => Err(Error::InvalidWindow(s.to_string())),
        }
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }

    /// Centre of cell `(col, row)` of a `cols × rows` grid, row 0 at the top.
    pub fn cell_center(&self, cols: usize, rows: usize, col: usize, row: usize) -> Complex64 {
        Complex64::new(
            self.re_min + (col as f64 + 0.5) * self.width() / cols as f64,
            self.im_max - (row as f64 + 0.5) * self.height() / rows as f64,
        )
    }
}

/// One classified cell; `result` is `None` for skipped cells (`λ = 0`).
#[derive(Clone, Debug, PartialEq)]
pub struct GridRow {
    pub lambda: Complex64,
    pub result: Option<Classification>,
}

/// Classifies each λ in order, in parallel.
pub fn classify_points(n: u32, lambdas: &[Complex64], budget: usize) -> Result<Vec<GridRow>> {
    if n < 2 {
        return Err(Error::InvalidDegree(n));
    }
    lambdas
        .par_iter()
        .map(|&lambda| {
            let result = match MapParams::new(n, lambda) {
                Ok(params) => Some(classify(&params, budget)?),
                Err(Error::ZeroLambda) => None,
                Err(e) => return Err(e),
            };
            Ok(GridRow { lambda, result })
        })
        .collect()
}

/// Classifies the cell centres of a `cols × rows` grid over `window`,
/// row-major from the top-left cell.
pub fn classify_grid(
    n: u32,
    window: &Window,
    cols: usize,
    rows: usize,
    budget: usize,
) -> Result<Vec<GridRow>> {
    if cols == 0 || rows == 0 {
        return Err(Error::InvalidWindow(format!("resolution {cols}x{rows}")));
    }
    let lambdas: Vec<Complex64> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| window.cell_center(cols, rows, c, r)))
        .collect();
    classify_points(n, &lambdas, budget)
}

fn outcome_str(o: OrbitOutcome) -> &'static str {
    o.as_str()
}

/// Writes rows as CSV (LF endings, `%.17g` floats). Skipped rows carry
/// `kind = skipped` and empty remaining fields.
pub fn write_csv<W: Write>(rows: &[GridRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        let re = format_g17(row.lambda.re);
        let im = format_g17(row.lambda.im);
        match &row.result {
            None => writeln!(out, "{re},{im},skipped,,,,,,")?,
            Some(c) => writeln!(
                out,
                "{re},{im},{},{},{},{},{},{},{}",
                c.kind.as_str(),
                c.subcase.as_str(),
                outcome_str(c.evidence.v0_result.outcome),
                c.evidence.v0_result.steps,
                outcome_str(c.evidence.v1_result.outcome),
                c.evidence.v1_result.steps,
                c.evidence.trap_active,
            )?,
        }
    }
    out.flush()
}

/// Counts of each verdict, in a fixed order.
pub fn summarize(rows: &[GridRow]) -> Vec<(&'static str, usize)> {
    let mut counts = [0usize; 5];
    for row in rows {
        let idx = match row.result.as_ref().map(|c| (c.kind, c.subcase)) {
            None => 4,
            Some((JuliaKind::CantorSet, _)) => 0,
            Some((JuliaKind::Connected, _)) => 1,
            Some((JuliaKind::CantorBubbles, Subcase::Case3b)) => 2,
            Some(_) => 3,
        };
        counts[idx] += 1;
    }
    ["cantor_set", "connected", "cantor_bubbles", "unresolved", "skipped"]
        .into_iter()
        .zip(counts)
        .collect()
}

/// C's `%.17g`: 17 significant digits, trailing zeros removed, exponent
/// form when the decimal exponent is below −4 or at least 17.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
